//! Reference results bundled with the toolkit.
//!
//! The reference evaluation of the two classifiers on the 2431-row
//! engineering-materials data is embedded as per-class confusion counts
//! together with the percentages reported alongside them. `verify-tables`
//! recomputes every metric from the counts and compares: per-class cells at
//! ±0.02 percentage points, the pooled summary at ±0.01, ROC coordinates at
//! ±0.0002. Cells known not to derive from the counts are reported as
//! warnings carrying the recomputed value.

use crate::eval::{macro_average, metrics, pool, ConfusionMatrix, MetricsReport};

/// One per-class row: counts plus the reported percentages.
pub struct ReferenceRow {
    pub class: &'static str,
    pub counts: ConfusionMatrix,
    /// Reported accuracy / precision / recall / F-measure, in percent.
    pub reported: [f64; 4],
}

const fn cm(tp: u64, tn: u64, fp: u64, fn_: u64) -> ConfusionMatrix {
    ConfusionMatrix { tp, tn, fp, fn_ }
}

/// Naive Bayes per-class reference rows (Polymer, Ceramic, Metal).
pub const NB_CLASS_ROWS: [ReferenceRow; 3] = [
    ReferenceRow {
        class: "Polymer",
        counts: cm(734, 243, 34, 31),
        reported: [93.76, 95.57, 95.95, 95.76],
    },
    ReferenceRow {
        class: "Ceramic",
        counts: cm(560, 249, 19, 27),
        reported: [94.61, 96.72, 95.40, 96.05],
    },
    ReferenceRow {
        class: "Metal",
        counts: cm(329, 169, 15, 21),
        reported: [93.25, 95.63, 94.00, 94.80],
    },
];

/// C4.5 per-class reference rows (Polymer, Ceramic, Metal).
///
/// The Ceramic accuracy cell (92.04) is inconsistent with its own counts:
/// (553 + 245) / 858 = 93.01. Every other cell in these rows derives from
/// its counts within rounding.
pub const C45_CLASS_ROWS: [ReferenceRow; 3] = [
    ReferenceRow {
        class: "Polymer",
        counts: cm(731, 239, 36, 35),
        reported: [93.17, 95.30, 95.43, 95.36],
    },
    ReferenceRow {
        class: "Ceramic",
        counts: cm(553, 245, 19, 41),
        reported: [92.04, 96.68, 93.10, 94.85],
    },
    ReferenceRow {
        class: "Metal",
        counts: cm(321, 163, 19, 29),
        reported: [90.97, 94.41, 91.71, 93.04],
    },
];

/// Reported whole-dataset summary (accuracy/precision/recall/F, percent).
pub const NB_SUMMARY: [f64; 4] = [93.95, 95.98, 95.36, 95.67];
pub const C45_SUMMARY: [f64; 4] = [91.93, 95.51, 92.96, 94.22];

/// Reported ROC operating points `(tpr, fpr)`.
pub const NB_ROC: (f64, f64) = (0.9535, 0.0932);
pub const C45_ROC: (f64, f64) = (0.9385, 0.0441);

/// Pooling the C4.5 per-class counts gives these values, which do not
/// match the reported summary column or the reported FPR; the reported
/// cells are flagged as warnings and these derived pins are asserted
/// instead.
pub const C45_DERIVED_POOLED_ACCURACY_PCT: f64 = 92.64;
pub const C45_DERIVED_POOLED_FPR: f64 = 0.1026;

pub const CLASS_CELL_TOL_PP: f64 = 0.02;
pub const SUMMARY_TOL_PP: f64 = 0.01;
pub const ROC_TOL: f64 = 0.0002;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Known non-derivable reference cell: reported, never fatal.
    Warn,
}

/// One expected/actual comparison from the verification run.
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub status: CheckStatus,
    pub note: Option<String>,
}

impl Check {
    fn compare(name: String, expected: f64, actual: f64, tolerance: f64) -> Self {
        let status = if (expected - actual).abs() <= tolerance {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            name,
            expected,
            actual,
            tolerance,
            status,
            note: None,
        }
    }

    fn warn(name: String, expected: f64, actual: f64, note: String) -> Self {
        Self {
            name,
            expected,
            actual,
            tolerance: 0.0,
            status: CheckStatus::Warn,
            note: Some(note),
        }
    }
}

fn row_metrics(counts: &ConfusionMatrix) -> [f64; 4] {
    let m = metrics(counts).expect("reference counts are non-empty");
    [
        m.accuracy * 100.0,
        m.precision * 100.0,
        m.recall * 100.0,
        m.f_measure * 100.0,
    ]
}

fn class_row_checks(prefix: &str, rows: &[ReferenceRow], out: &mut Vec<Check>) {
    const METRIC: [&str; 4] = ["accuracy", "precision", "recall", "f_measure"];
    for row in rows {
        let derived = row_metrics(&row.counts);
        for i in 0..4 {
            let mut check = Check::compare(
                format!("{prefix}/{} {}", row.class, METRIC[i]),
                row.reported[i],
                derived[i],
                CLASS_CELL_TOL_PP,
            );
            if check.status == CheckStatus::Fail {
                check.note = Some(format!(
                    "reported cell is inconsistent with its own counts (derived {:.4})",
                    derived[i]
                ));
            }
            out.push(check);
        }
    }
}

fn pooled(rows: &[ReferenceRow]) -> (ConfusionMatrix, MetricsReport) {
    let matrices: Vec<ConfusionMatrix> = rows.iter().map(|r| r.counts).collect();
    let cm = pool(&matrices).expect("non-empty");
    let m = metrics(&cm).expect("non-empty");
    (cm, m)
}

fn macro_of(rows: &[ReferenceRow]) -> MetricsReport {
    let reports: Vec<MetricsReport> = rows
        .iter()
        .map(|r| metrics(&r.counts).expect("non-empty"))
        .collect();
    macro_average(&reports).expect("non-empty")
}

/// Recompute everything and compare against the embedded reference values.
pub fn run_checks() -> Vec<Check> {
    let mut out = Vec::new();

    class_row_checks("nb", &NB_CLASS_ROWS, &mut out);
    class_row_checks("c45", &C45_CLASS_ROWS, &mut out);

    // Pooled NB summary reproduces the reported column.
    let (_, nb_pooled) = pooled(&NB_CLASS_ROWS);
    let nb_values = [
        nb_pooled.accuracy * 100.0,
        nb_pooled.precision * 100.0,
        nb_pooled.recall * 100.0,
        nb_pooled.f_measure * 100.0,
    ];
    for (i, metric) in ["accuracy", "precision", "recall", "f_measure"].iter().enumerate() {
        out.push(Check::compare(
            format!("nb pooled {metric}"),
            NB_SUMMARY[i],
            nb_values[i],
            SUMMARY_TOL_PP,
        ));
    }

    // The macro mean must NOT reproduce the summary column; pooling is the
    // aggregation that does.
    let nb_macro = macro_of(&NB_CLASS_ROWS);
    let macro_acc = nb_macro.accuracy * 100.0;
    let mut macro_check = Check {
        name: "nb macro accuracy differs from pooled summary".into(),
        expected: NB_SUMMARY[0],
        actual: macro_acc,
        tolerance: SUMMARY_TOL_PP,
        status: if (macro_acc - NB_SUMMARY[0]).abs() > SUMMARY_TOL_PP {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        note: None,
    };
    macro_check.note = Some("pass means the macro mean does NOT match".into());
    out.push(macro_check);

    // NB ROC point.
    out.push(Check::compare(
        "nb pooled tpr".into(),
        NB_ROC.0,
        nb_pooled.tpr,
        ROC_TOL,
    ));
    out.push(Check::compare(
        "nb pooled fpr".into(),
        NB_ROC.1,
        nb_pooled.fpr,
        ROC_TOL,
    ));

    // Derived C4.5 pooled values are pinned...
    let (_, c45_pooled) = pooled(&C45_CLASS_ROWS);
    out.push(Check::compare(
        "c45 pooled accuracy (derived)".into(),
        C45_DERIVED_POOLED_ACCURACY_PCT,
        c45_pooled.accuracy * 100.0,
        SUMMARY_TOL_PP,
    ));
    out.push(Check::compare(
        "c45 pooled fpr (derived)".into(),
        C45_DERIVED_POOLED_FPR,
        c45_pooled.fpr,
        ROC_TOL,
    ));
    out.push(Check::compare(
        "c45 pooled tpr".into(),
        C45_ROC.0,
        c45_pooled.tpr,
        ROC_TOL,
    ));

    // ...while the reported summary column and FPR are non-derivable:
    // reported as warnings, not failures.
    let c45_values = [
        c45_pooled.accuracy * 100.0,
        c45_pooled.precision * 100.0,
        c45_pooled.recall * 100.0,
        c45_pooled.f_measure * 100.0,
    ];
    for (i, metric) in ["accuracy", "precision", "recall", "f_measure"].iter().enumerate() {
        out.push(Check::warn(
            format!("c45 reported summary {metric}"),
            C45_SUMMARY[i],
            c45_values[i],
            "reported value is not derivable from the per-class counts by pooling or macro averaging".into(),
        ));
    }
    out.push(Check::warn(
        "c45 reported fpr".into(),
        C45_ROC.1,
        c45_pooled.fpr,
        "reported value is not derivable from the per-class counts".into(),
    ));

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nb_rows_all_reproduce() {
        let mut checks = Vec::new();
        class_row_checks("nb", &NB_CLASS_ROWS, &mut checks);
        assert_eq!(checks.len(), 12);
        assert!(checks.iter().all(|c| c.status == CheckStatus::Pass));
    }

    #[test]
    fn c45_rows_reproduce_except_ceramic_accuracy() {
        let mut checks = Vec::new();
        class_row_checks("c45", &C45_CLASS_ROWS, &mut checks);
        assert_eq!(checks.len(), 12);
        let fails: Vec<&Check> = checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .collect();
        assert_eq!(fails.len(), 1);
        assert_eq!(fails[0].name, "c45/Ceramic accuracy");
        assert!((fails[0].actual - 93.0070).abs() < 0.005);
    }

    #[test]
    fn pooled_nb_summary_and_roc_reproduce() {
        let (cm, m) = pooled(&NB_CLASS_ROWS);
        assert_eq!(cm.total(), 2431);
        assert!((m.accuracy * 100.0 - 93.95).abs() < 0.01);
        assert!((m.precision * 100.0 - 95.98).abs() < 0.01);
        assert!((m.recall * 100.0 - 95.36).abs() < 0.01);
        assert!((m.f_measure * 100.0 - 95.67).abs() < 0.01);
        assert!((m.tpr - 0.9535).abs() < 0.0002);
        assert!((m.fpr - 0.0932).abs() < 0.0002);
    }

    #[test]
    fn macro_nb_accuracy_does_not_match_pooled_summary() {
        let m = macro_of(&NB_CLASS_ROWS);
        assert!((m.accuracy * 100.0 - NB_SUMMARY[0]).abs() > SUMMARY_TOL_PP);
    }

    #[test]
    fn c45_derived_pooled_values() {
        let (cm, m) = pooled(&C45_CLASS_ROWS);
        assert_eq!(cm, ConfusionMatrix::new(1605, 647, 74, 105));
        assert!((m.accuracy * 100.0 - 92.64).abs() < 0.01);
        assert!((m.precision * 100.0 - 95.59).abs() < 0.01);
        assert!((m.recall * 100.0 - 93.86).abs() < 0.01);
        assert!((m.tpr - 0.9386).abs() < 0.0002);
        assert!((m.fpr - 0.1026).abs() < 0.0002);
        // The reported summary stays non-derivable.
        assert!((m.accuracy * 100.0 - C45_SUMMARY[0]).abs() > SUMMARY_TOL_PP);
        assert!((m.fpr - C45_ROC.1).abs() > ROC_TOL);
    }

    #[test]
    fn run_checks_statuses() {
        let checks = run_checks();
        let fails: Vec<&Check> = checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .collect();
        assert_eq!(fails.len(), 1, "only the known inconsistent cell fails");
        assert_eq!(fails[0].name, "c45/Ceramic accuracy");
        let warns = checks
            .iter()
            .filter(|c| c.status == CheckStatus::Warn)
            .count();
        assert_eq!(warns, 5);
    }
}
