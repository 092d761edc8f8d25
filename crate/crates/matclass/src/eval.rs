//! Confusion matrices and the standard metrics derived from them:
//! accuracy, precision, recall, F-measure, and the ROC operating point
//! (TPR, FPR). Multiclass results are aggregated two ways: pooled (summed
//! counts, then metrics) and macro (per-class metrics, then the mean).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::data::{Dataset, Instance, Schema};
use crate::error::{Error, Result};
use crate::par;

/// One-vs-rest confusion counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub tn: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl ConfusionMatrix {
    pub fn new(tp: u64, tn: u64, fp: u64, fn_: u64) -> Self {
        Self { tp, tn, fp, fn_ }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.tn + self.fp + self.fn_
    }
}

/// Metrics whose denominator was zero; the metric itself is reported as 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degenerate {
    PrecisionUndefined,
    RecallUndefined,
    FprUndefined,
}

/// The standard metrics of one confusion matrix, as fractions in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    pub tpr: f64,
    pub fpr: f64,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub degenerate: BTreeSet<Degenerate>,
}

/// Count one-vs-rest outcomes for a positive class over aligned prediction
/// and truth lists.
pub fn one_vs_rest<P: AsRef<str>, A: AsRef<str>>(
    predicted: &[P],
    actual: &[A],
    positive_class: &str,
) -> Result<ConfusionMatrix> {
    if predicted.len() != actual.len() {
        return Err(Error::Eval(format!(
            "predicted and actual lengths differ: {} vs {}",
            predicted.len(),
            actual.len()
        )));
    }
    if predicted.is_empty() {
        return Err(Error::Eval("cannot evaluate empty label lists".into()));
    }
    let mut cm = ConfusionMatrix::new(0, 0, 0, 0);
    for (p, a) in predicted.iter().zip(actual) {
        let p_pos = p.as_ref() == positive_class;
        let a_pos = a.as_ref() == positive_class;
        match (a_pos, p_pos) {
            (true, true) => cm.tp += 1,
            (true, false) => cm.fn_ += 1,
            (false, true) => cm.fp += 1,
            (false, false) => cm.tn += 1,
        }
    }
    Ok(cm)
}

/// Derive the standard metrics. Any zero denominator yields 0 for that
/// metric plus a degenerate flag, so constant predictors stay evaluable.
pub fn metrics(cm: &ConfusionMatrix) -> Result<MetricsReport> {
    if cm.total() == 0 {
        return Err(Error::Eval("confusion matrix has no observations".into()));
    }
    let (tp, tn, fp, fn_) = (cm.tp as f64, cm.tn as f64, cm.fp as f64, cm.fn_ as f64);
    let mut degenerate = BTreeSet::new();

    let accuracy = (tn + tp) / (tn + fn_ + fp + tp);
    let precision = if cm.fp + cm.tp > 0 {
        tp / (fp + tp)
    } else {
        degenerate.insert(Degenerate::PrecisionUndefined);
        0.0
    };
    let recall = if cm.fn_ + cm.tp > 0 {
        tp / (fn_ + tp)
    } else {
        degenerate.insert(Degenerate::RecallUndefined);
        0.0
    };
    let f_measure = if precision + recall > 0.0 {
        2.0 * recall * precision / (recall + precision)
    } else {
        0.0
    };
    let tpr = recall;
    let fpr = if cm.fp + cm.tn > 0 {
        fp / (fp + tn)
    } else {
        degenerate.insert(Degenerate::FprUndefined);
        0.0
    };
    Ok(MetricsReport {
        accuracy,
        precision,
        recall,
        f_measure,
        tpr,
        fpr,
        degenerate,
    })
}

/// Pooled (micro) aggregation: component-wise count sums.
pub fn pool(matrices: &[ConfusionMatrix]) -> Result<ConfusionMatrix> {
    if matrices.is_empty() {
        return Err(Error::Eval("cannot pool an empty matrix list".into()));
    }
    Ok(matrices.iter().fold(ConfusionMatrix::new(0, 0, 0, 0), |acc, m| {
        ConfusionMatrix::new(acc.tp + m.tp, acc.tn + m.tn, acc.fp + m.fp, acc.fn_ + m.fn_)
    }))
}

/// Macro aggregation: the unweighted mean per metric, skipping degenerate
/// entries. A metric degenerate in every report stays degenerate.
pub fn macro_average(reports: &[MetricsReport]) -> Result<MetricsReport> {
    if reports.is_empty() {
        return Err(Error::Eval("cannot average an empty report list".into()));
    }
    let mut degenerate = BTreeSet::new();
    let mean_all = |get: fn(&MetricsReport) -> f64| {
        reports.iter().map(get).sum::<f64>() / reports.len() as f64
    };
    let mut mean_defined = |flag: Degenerate, get: fn(&MetricsReport) -> f64| {
        let defined: Vec<f64> = reports
            .iter()
            .filter(|r| !r.degenerate.contains(&flag))
            .map(get)
            .collect();
        if defined.is_empty() {
            degenerate.insert(flag);
            0.0
        } else {
            defined.iter().sum::<f64>() / defined.len() as f64
        }
    };
    let precision = mean_defined(Degenerate::PrecisionUndefined, |r| r.precision);
    let recall = mean_defined(Degenerate::RecallUndefined, |r| r.recall);
    let tpr = mean_defined(Degenerate::RecallUndefined, |r| r.tpr);
    let fpr = mean_defined(Degenerate::FprUndefined, |r| r.fpr);
    Ok(MetricsReport {
        accuracy: mean_all(|r| r.accuracy),
        precision,
        recall,
        f_measure: mean_all(|r| r.f_measure),
        tpr,
        fpr,
        degenerate,
    })
}

/// Anything that maps schema-conformant instances to a class index.
pub trait Classifier: Sync {
    fn schema(&self) -> &Schema;
    /// Index into `schema().class_labels`.
    fn predict_index(&self, instance: &Instance) -> Result<usize>;
}

impl Classifier for crate::naive_bayes::NaiveBayesModel {
    fn schema(&self) -> &Schema {
        self.schema()
    }

    fn predict_index(&self, instance: &Instance) -> Result<usize> {
        let label = self.predict(instance)?;
        Ok(self.schema().class_index(label).expect("own label"))
    }
}

impl Classifier for crate::c45::DecisionTree {
    fn schema(&self) -> &Schema {
        self.schema()
    }

    fn predict_index(&self, instance: &Instance) -> Result<usize> {
        let label = self.predict(instance)?;
        Ok(self.schema().class_index(label).expect("own label"))
    }
}

/// Per-class matrix and metrics for one positive class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassEval {
    pub label: String,
    pub matrix: ConfusionMatrix,
    pub metrics: MetricsReport,
}

/// Full evaluation of one classifier on one test set: per-class one-vs-rest
/// matrices in schema label order, plus pooled and macro summaries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub per_class: Vec<ClassEval>,
    pub pooled_matrix: ConfusionMatrix,
    pub pooled: MetricsReport,
    pub macro_avg: MetricsReport,
}

impl Evaluation {
    /// Build from per-class matrices (label order preserved).
    pub fn from_matrices(labels: &[String], matrices: &[ConfusionMatrix]) -> Result<Self> {
        if labels.len() != matrices.len() || labels.is_empty() {
            return Err(Error::Eval("need one matrix per class label".into()));
        }
        let per_class: Vec<ClassEval> = labels
            .iter()
            .zip(matrices)
            .map(|(label, m)| {
                Ok(ClassEval {
                    label: label.clone(),
                    matrix: *m,
                    metrics: metrics(m)?,
                })
            })
            .collect::<Result<_>>()?;
        let pooled_matrix = pool(matrices)?;
        let pooled = metrics(&pooled_matrix)?;
        let reports: Vec<MetricsReport> = per_class.iter().map(|c| c.metrics.clone()).collect();
        let macro_avg = macro_average(&reports)?;
        Ok(Self {
            per_class,
            pooled_matrix,
            pooled,
            macro_avg,
        })
    }

    /// The ROC operating point `(tpr, fpr)` of the pooled matrix.
    pub fn roc_point(&self) -> (f64, f64) {
        (self.pooled.tpr, self.pooled.fpr)
    }
}

/// Apply a classifier to every test row once and aggregate one-vs-rest
/// matrices per class label. Prediction may run in parallel; the per-row
/// results are reduced in row order either way.
pub fn evaluate_classifier<C: Classifier + ?Sized>(model: &C, test: &Dataset) -> Result<Evaluation> {
    if test.is_empty() {
        return Err(Error::Eval("test set has no rows".into()));
    }
    test.require_labels()?;
    if model.schema() != test.schema() {
        return Err(Error::SchemaMismatch(
            "model and test set use different schemas".into(),
        ));
    }
    let schema = test.schema();

    let predictions: Vec<usize> = par::map_indexed(test.rows(), |i, row| {
        model
            .predict_index(row)
            .map_err(|e| Error::Eval(format!("prediction failed at row {}: {e}", i + 1)))
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let actual: Vec<usize> = test
        .rows()
        .iter()
        .map(|r| {
            schema
                .class_index(r.label.as_deref().expect("labels checked"))
                .expect("valid label")
        })
        .collect();

    let mut matrices = vec![ConfusionMatrix::new(0, 0, 0, 0); schema.num_classes()];
    for (&p, &a) in predictions.iter().zip(&actual) {
        for (c, cm) in matrices.iter_mut().enumerate() {
            match (a == c, p == c) {
                (true, true) => cm.tp += 1,
                (true, false) => cm.fn_ += 1,
                (false, true) => cm.fp += 1,
                (false, false) => cm.tn += 1,
            }
        }
    }
    Evaluation::from_matrices(&schema.class_labels, &matrices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c45::{build, TreeParams};
    use crate::data::{AttributeSpec, Instance, Value};

    #[test]
    fn perfect_predictions_have_no_errors() {
        let labels = ["P", "C", "M", "P", "C"];
        let cm = one_vs_rest(&labels, &labels, "P").unwrap();
        assert_eq!(cm.fp, 0);
        assert_eq!(cm.fn_, 0);
        assert_eq!(cm.tp, 2);
        assert_eq!(cm.tn, 3);
    }

    #[test]
    fn one_vs_rest_hand_enumerated_case() {
        let predicted = ["P", "C", "M", "P"];
        let actual = ["P", "M", "M", "C"];
        let cm = one_vs_rest(&predicted, &actual, "P").unwrap();
        assert_eq!((cm.tp, cm.fn_, cm.fp, cm.tn), (1, 0, 1, 2));
    }

    #[test]
    fn absent_positive_class_is_all_true_negatives() {
        let predicted = ["C", "M", "C"];
        let actual = ["M", "C", "C"];
        let cm = one_vs_rest(&predicted, &actual, "P").unwrap();
        assert_eq!((cm.tp, cm.fn_, cm.fp, cm.tn), (0, 0, 0, 3));
    }

    #[test]
    fn one_vs_rest_rejects_bad_inputs() {
        assert!(one_vs_rest(&["P"], &["P", "C"], "P").is_err());
        let empty: [&str; 0] = [];
        assert!(one_vs_rest(&empty, &empty, "P").is_err());
    }

    fn pp(x: f64) -> f64 {
        x * 100.0
    }

    #[test]
    fn metrics_reproduce_reference_nb_polymer_row() {
        let cm = ConfusionMatrix::new(734, 243, 34, 31);
        let r = metrics(&cm).unwrap();
        assert!((pp(r.accuracy) - 93.76).abs() < 0.02);
        assert!((pp(r.precision) - 95.57).abs() < 0.02);
        assert!((pp(r.recall) - 95.95).abs() < 0.02);
        assert!((pp(r.f_measure) - 95.76).abs() < 0.02);
    }

    #[test]
    fn metrics_on_second_reference_c45_row() {
        // The published accuracy for this row (92.04) contradicts its own
        // counts: (553 + 245) / 858 = 93.01. Assert the arithmetic truth
        // here; precision/recall/F do derive from the counts.
        let cm = ConfusionMatrix::new(553, 245, 19, 41);
        let r = metrics(&cm).unwrap();
        assert!((pp(r.accuracy) - 93.0070).abs() < 0.005);
        assert!((pp(r.precision) - 96.68).abs() < 0.02);
        assert!((pp(r.recall) - 93.10).abs() < 0.02);
        assert!((pp(r.f_measure) - 94.85).abs() < 0.02);
    }

    #[test]
    fn zero_denominators_flagged_not_fatal() {
        let cm = ConfusionMatrix::new(0, 10, 0, 0);
        let r = metrics(&cm).unwrap();
        assert_eq!(r.accuracy, 1.0);
        assert_eq!(r.precision, 0.0);
        assert_eq!(r.recall, 0.0);
        assert!(r.degenerate.contains(&Degenerate::PrecisionUndefined));
        assert!(r.degenerate.contains(&Degenerate::RecallUndefined));
        assert!(!r.degenerate.contains(&Degenerate::FprUndefined));
    }

    #[test]
    fn metrics_error_on_empty_matrix() {
        assert!(metrics(&ConfusionMatrix::new(0, 0, 0, 0)).is_err());
    }

    #[test]
    fn pooling_reference_counts() {
        let nb = [
            ConfusionMatrix::new(734, 243, 34, 31),
            ConfusionMatrix::new(560, 249, 19, 27),
            ConfusionMatrix::new(329, 169, 15, 21),
        ];
        let pooled = pool(&nb).unwrap();
        assert_eq!(pooled, ConfusionMatrix::new(1623, 661, 68, 79));
        assert_eq!(pooled.total(), 2431);

        let c45 = [
            ConfusionMatrix::new(731, 239, 36, 35),
            ConfusionMatrix::new(553, 245, 19, 41),
            ConfusionMatrix::new(321, 163, 19, 29),
        ];
        let pooled = pool(&c45).unwrap();
        assert_eq!(pooled, ConfusionMatrix::new(1605, 647, 74, 105));
        assert_eq!(pooled.total(), 2431);

        let single = ConfusionMatrix::new(1, 2, 3, 4);
        assert_eq!(pool(&[single]).unwrap(), single);
        assert!(pool(&[]).is_err());
    }

    fn report_with_accuracy(acc_pct: f64) -> MetricsReport {
        MetricsReport {
            accuracy: acc_pct / 100.0,
            precision: 0.5,
            recall: 0.5,
            f_measure: 0.5,
            tpr: 0.5,
            fpr: 0.5,
            degenerate: BTreeSet::new(),
        }
    }

    #[test]
    fn macro_mean_of_published_accuracies() {
        let nb: Vec<MetricsReport> = [93.76, 94.61, 93.25]
            .iter()
            .map(|&a| report_with_accuracy(a))
            .collect();
        let avg = macro_average(&nb).unwrap();
        assert!((pp(avg.accuracy) - 93.87).abs() < 0.01);

        let c45: Vec<MetricsReport> = [93.17, 92.04, 90.97]
            .iter()
            .map(|&a| report_with_accuracy(a))
            .collect();
        let avg = macro_average(&c45).unwrap();
        assert!((pp(avg.accuracy) - 92.06).abs() < 0.01);
    }

    #[test]
    fn macro_of_single_report_is_identity() {
        let r = metrics(&ConfusionMatrix::new(5, 3, 2, 1)).unwrap();
        let avg = macro_average(std::slice::from_ref(&r)).unwrap();
        assert_eq!(avg, r);
    }

    #[test]
    fn macro_skips_degenerate_entries() {
        let degenerate = metrics(&ConfusionMatrix::new(0, 10, 0, 0)).unwrap();
        let normal = metrics(&ConfusionMatrix::new(5, 3, 2, 1)).unwrap();
        let avg = macro_average(&[degenerate, normal.clone()]).unwrap();
        // Precision averages only over the defined report.
        assert_eq!(avg.precision, normal.precision);
        assert!(avg.degenerate.is_empty());
    }

    #[test]
    fn tpr_equals_recall_whenever_defined() {
        for (tp, tn, fp, fn_) in [(5, 3, 2, 1), (0, 4, 3, 2), (7, 0, 0, 0)] {
            let r = metrics(&ConfusionMatrix::new(tp, tn, fp, fn_)).unwrap();
            assert_eq!(r.tpr, r.recall);
        }
    }

    fn tiny_tree_dataset() -> Dataset {
        let schema = Schema::new(
            vec![AttributeSpec::categorical("CS", &["Poor", "Good", "Excellent"])],
            "class",
            vec!["Polymer".into(), "Ceramic".into(), "Metal".into()],
        )
        .unwrap();
        let rows = vec![
            ("Poor", "Polymer"),
            ("Good", "Ceramic"),
            ("Excellent", "Metal"),
            ("Poor", "Polymer"),
            ("Good", "Ceramic"),
            ("Excellent", "Metal"),
        ]
        .into_iter()
        .map(|(v, l)| Instance::new(vec![Value::Categorical(v.into())], Some(l.into())))
        .collect();
        Dataset::new(schema, rows).unwrap()
    }

    #[test]
    fn perfect_classifier_evaluates_perfectly() {
        let ds = tiny_tree_dataset();
        let tree = build(&ds, TreeParams::default()).unwrap();
        let eval = evaluate_classifier(&tree, &ds).unwrap();
        for class in &eval.per_class {
            assert_eq!(class.matrix.fp, 0);
            assert_eq!(class.matrix.fn_, 0);
            assert_eq!(class.matrix.total(), ds.len() as u64);
        }
        assert_eq!(eval.pooled.accuracy, 1.0);
        assert_eq!(
            eval.pooled_matrix.total(),
            (ds.schema().num_classes() * ds.len()) as u64
        );
    }

    struct ConstantClassifier {
        schema: Schema,
        class: usize,
    }

    impl Classifier for ConstantClassifier {
        fn schema(&self) -> &Schema {
            &self.schema
        }

        fn predict_index(&self, _instance: &Instance) -> Result<usize> {
            Ok(self.class)
        }
    }

    #[test]
    fn constant_predictor_on_balanced_three_class_test() {
        // 30 rows, 10 per class, always predict the first class. Hand
        // enumeration: the positive matrix is (tp=10, fn=0, fp=20, tn=0);
        // each other class gives (0, 10, 0, 20). Pooled: tp=10, tn=40,
        // fp=20, fn=20, accuracy 50/90.
        let schema = Schema::new(
            vec![AttributeSpec::categorical("CS", &["Poor"])],
            "class",
            vec!["Polymer".into(), "Ceramic".into(), "Metal".into()],
        )
        .unwrap();
        let mut rows = Vec::new();
        for label in ["Polymer", "Ceramic", "Metal"] {
            for _ in 0..10 {
                rows.push(Instance::new(
                    vec![Value::Categorical("Poor".into())],
                    Some(label.into()),
                ));
            }
        }
        let ds = Dataset::new(schema.clone(), rows).unwrap();
        let constant = ConstantClassifier { schema, class: 0 };
        let eval = evaluate_classifier(&constant, &ds).unwrap();
        assert_eq!(eval.per_class[0].matrix, ConfusionMatrix::new(10, 0, 20, 0));
        assert_eq!(eval.per_class[1].matrix, ConfusionMatrix::new(0, 20, 0, 10));
        assert_eq!(eval.pooled_matrix, ConfusionMatrix::new(10, 40, 20, 20));
        assert!((eval.pooled.accuracy - 50.0 / 90.0).abs() < 1e-12);
    }

    #[test]
    fn schema_mismatch_is_rejected() {
        let ds = tiny_tree_dataset();
        let tree = build(&ds, TreeParams::default()).unwrap();
        let other_schema = Schema::new(
            vec![AttributeSpec::categorical("CS", &["Poor", "Good", "Excellent"])],
            "kind",
            vec!["Polymer".into(), "Ceramic".into(), "Metal".into()],
        )
        .unwrap();
        let rows = vec![Instance::new(
            vec![Value::Categorical("Poor".into())],
            Some("Polymer".into()),
        )];
        let other = Dataset::new(other_schema, rows).unwrap();
        assert!(matches!(
            evaluate_classifier(&tree, &other),
            Err(Error::SchemaMismatch(_))
        ));
    }
}
