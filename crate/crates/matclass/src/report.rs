//! Report rendering: aligned text, CSV and JSON, plus plot-data CSV files
//! (per-class confusion bars, metric comparison, ROC points). Every report
//! opens with a provenance header; nothing in the output depends on the
//! clock or the environment.

use serde::Serialize;

use crate::eval::Evaluation;

/// Provenance block carried by every emitted report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportHeader {
    pub tool_version: String,
    pub invocation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dataset_hash: Option<String>,
}

impl ReportHeader {
    pub fn new(invocation: String, seed: Option<u64>, dataset_hash: Option<String>) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            invocation,
            seed,
            dataset_hash,
        }
    }

    fn text_lines(&self) -> String {
        let mut out = format!(
            "# matclass {}\n# invocation: {}\n",
            self.tool_version, self.invocation
        );
        if let Some(seed) = self.seed {
            out.push_str(&format!("# seed: {seed}\n"));
        }
        if let Some(hash) = &self.dataset_hash {
            out.push_str(&format!("# dataset: {hash}\n"));
        }
        out
    }
}

/// FNV-1a 64-bit hash, used to fingerprint datasets in report headers.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

pub fn dataset_fingerprint(csv: &str) -> String {
    format!("fnv1a:{:016x}", fnv1a64(csv.as_bytes()))
}

/// Round half-up at two decimals (display only; comparisons elsewhere use
/// raw values).
pub fn round2(x: f64) -> f64 {
    (x * 100.0 + 0.5).floor() / 100.0
}

/// Format a fraction as a percentage with two decimals, rounded half-up.
pub fn pct(x: f64) -> String {
    format!("{:.2}", round2(x * 100.0))
}

fn fmt4(x: f64) -> String {
    format!("{x:.4}")
}

/// One classifier's evaluation under a display name.
pub struct NamedEvaluation<'a> {
    pub name: &'a str,
    pub eval: &'a Evaluation,
}

pub fn render_text(header: &ReportHeader, evals: &[NamedEvaluation]) -> String {
    let mut out = header.text_lines();
    for ne in evals {
        out.push('\n');
        out.push_str(&format!("== {} ==\n", ne.name));
        out.push_str(&format!(
            "{:<10} {:>6} {:>6} {:>6} {:>6} {:>8} {:>9} {:>8} {:>8}\n",
            "class", "TP", "TN", "FP", "FN", "ACC(%)", "PREC(%)", "REC(%)", "FM(%)"
        ));
        for class in &ne.eval.per_class {
            let m = &class.metrics;
            out.push_str(&format!(
                "{:<10} {:>6} {:>6} {:>6} {:>6} {:>8} {:>9} {:>8} {:>8}\n",
                class.label,
                class.matrix.tp,
                class.matrix.tn,
                class.matrix.fp,
                class.matrix.fn_,
                pct(m.accuracy),
                pct(m.precision),
                pct(m.recall),
                pct(m.f_measure),
            ));
        }
        let pm = &ne.eval.pooled_matrix;
        let p = &ne.eval.pooled;
        out.push_str(&format!(
            "{:<10} {:>6} {:>6} {:>6} {:>6} {:>8} {:>9} {:>8} {:>8}\n",
            "pooled",
            pm.tp,
            pm.tn,
            pm.fp,
            pm.fn_,
            pct(p.accuracy),
            pct(p.precision),
            pct(p.recall),
            pct(p.f_measure),
        ));
        let ma = &ne.eval.macro_avg;
        out.push_str(&format!(
            "{:<10} {:>6} {:>6} {:>6} {:>6} {:>8} {:>9} {:>8} {:>8}\n",
            "macro",
            "-",
            "-",
            "-",
            "-",
            pct(ma.accuracy),
            pct(ma.precision),
            pct(ma.recall),
            pct(ma.f_measure),
        ));
        let (tpr, fpr) = ne.eval.roc_point();
        out.push_str(&format!("ROC point: TPR {} FPR {}\n", fmt4(tpr), fmt4(fpr)));
    }
    out
}

pub fn render_csv(header: &ReportHeader, evals: &[NamedEvaluation]) -> String {
    let mut out = header.text_lines();
    out.push_str("classifier,class,tp,tn,fp,fn,accuracy,precision,recall,f_measure,tpr,fpr\n");
    for ne in evals {
        for class in &ne.eval.per_class {
            let m = &class.metrics;
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                ne.name,
                class.label,
                class.matrix.tp,
                class.matrix.tn,
                class.matrix.fp,
                class.matrix.fn_,
                pct(m.accuracy),
                pct(m.precision),
                pct(m.recall),
                pct(m.f_measure),
                fmt4(m.tpr),
                fmt4(m.fpr),
            ));
        }
        let pm = &ne.eval.pooled_matrix;
        let p = &ne.eval.pooled;
        out.push_str(&format!(
            "{},pooled,{},{},{},{},{},{},{},{},{},{}\n",
            ne.name,
            pm.tp,
            pm.tn,
            pm.fp,
            pm.fn_,
            pct(p.accuracy),
            pct(p.precision),
            pct(p.recall),
            pct(p.f_measure),
            fmt4(p.tpr),
            fmt4(p.fpr),
        ));
        let ma = &ne.eval.macro_avg;
        out.push_str(&format!(
            "{},macro,,,,,{},{},{},{},{},{}\n",
            ne.name,
            pct(ma.accuracy),
            pct(ma.precision),
            pct(ma.recall),
            pct(ma.f_measure),
            fmt4(ma.tpr),
            fmt4(ma.fpr),
        ));
    }
    out
}

#[derive(Serialize)]
struct JsonReport<'a> {
    header: &'a ReportHeader,
    results: Vec<JsonClassifier<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    winners: Option<&'a Winners>,
}

#[derive(Serialize)]
struct JsonClassifier<'a> {
    classifier: &'a str,
    evaluation: &'a Evaluation,
    roc_point: RocPoint,
}

#[derive(Serialize)]
struct RocPoint {
    tpr: f64,
    fpr: f64,
}

/// Per-metric winner by pooled value.
#[derive(Debug, Clone, Serialize)]
pub struct Winners {
    pub accuracy: String,
    pub precision: String,
    pub recall: String,
    pub f_measure: String,
}

pub fn winners(name_a: &str, a: &Evaluation, name_b: &str, b: &Evaluation) -> Winners {
    let pick = |x: f64, y: f64| {
        if x > y {
            name_a.to_string()
        } else if y > x {
            name_b.to_string()
        } else {
            "tie".to_string()
        }
    };
    Winners {
        accuracy: pick(a.pooled.accuracy, b.pooled.accuracy),
        precision: pick(a.pooled.precision, b.pooled.precision),
        recall: pick(a.pooled.recall, b.pooled.recall),
        f_measure: pick(a.pooled.f_measure, b.pooled.f_measure),
    }
}

pub fn render_json(
    header: &ReportHeader,
    evals: &[NamedEvaluation],
    winners: Option<&Winners>,
) -> String {
    let report = JsonReport {
        header,
        results: evals
            .iter()
            .map(|ne| {
                let (tpr, fpr) = ne.eval.roc_point();
                JsonClassifier {
                    classifier: ne.name,
                    evaluation: ne.eval,
                    roc_point: RocPoint { tpr, fpr },
                }
            })
            .collect(),
        winners,
    };
    let mut out = serde_json::to_string_pretty(&report).expect("report serialization");
    out.push('\n');
    out
}

pub fn render_winners_text(w: &Winners) -> String {
    format!(
        "winners by pooled value: accuracy={} precision={} recall={} f_measure={}\n",
        w.accuracy, w.precision, w.recall, w.f_measure
    )
}

/// Plot data: per-class confusion counts (bar-chart shape).
pub fn confusion_plot_csv(eval: &Evaluation) -> String {
    let mut out = String::from("class,tp,tn,fp,fn\n");
    for class in &eval.per_class {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            class.label, class.matrix.tp, class.matrix.tn, class.matrix.fp, class.matrix.fn_
        ));
    }
    out
}

type MetricGetter = fn(&Evaluation) -> f64;

/// Plot data: pooled metric values per classifier, one metric per row.
pub fn metrics_plot_csv(evals: &[NamedEvaluation]) -> String {
    let mut out = String::from("metric");
    for ne in evals {
        out.push_str(&format!(",{}", ne.name));
    }
    out.push('\n');
    let metric_rows: [(&str, MetricGetter); 4] = [
        ("accuracy", |e| e.pooled.accuracy),
        ("precision", |e| e.pooled.precision),
        ("recall", |e| e.pooled.recall),
        ("f_measure", |e| e.pooled.f_measure),
    ];
    for (name, get) in metric_rows {
        out.push_str(name);
        for ne in evals {
            out.push_str(&format!(",{}", pct(get(ne.eval))));
        }
        out.push('\n');
    }
    out
}

/// Plot data: one ROC operating point per classifier.
pub fn roc_plot_csv(evals: &[NamedEvaluation]) -> String {
    let mut out = String::from("classifier,tpr,fpr\n");
    for ne in evals {
        let (tpr, fpr) = ne.eval.roc_point();
        out.push_str(&format!("{},{},{}\n", ne.name, fmt4(tpr), fmt4(fpr)));
    }
    out
}
