//! Naive Bayes over mixed categorical/continuous attributes.
//!
//! Class priors and per-class conditional tables come from add-alpha
//! smoothed frequencies; continuous attributes get per-class normal
//! densities. Scoring runs in the log domain so long factor products
//! cannot underflow, and the argmax is unchanged by the omitted evidence
//! term.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::data::{AttrKind, Dataset, Instance, Schema, Value};
use crate::error::{Error, Result};

const LN_2PI: f64 = 1.8378770664093453;

/// A trained model: priors, smoothed conditional tables for categorical
/// attributes and `(mu, sigma)` pairs for continuous ones, all indexed in
/// schema order.
#[derive(Debug, Clone, PartialEq)]
pub struct NaiveBayesModel {
    schema: Schema,
    alpha: f64,
    sigma_floor: f64,
    priors: Vec<f64>,
    params: Vec<AttrParams>,
}

#[derive(Debug, Clone, PartialEq)]
enum AttrParams {
    /// `[class][value]` conditional probabilities.
    Table(Vec<Vec<f64>>),
    /// `[class]` normal parameters.
    Gaussian(Vec<(f64, f64)>),
}

/// Per-class log scores and normalized posteriors, aligned with
/// `schema.class_labels`.
#[derive(Debug, Clone)]
pub struct ClassScores {
    pub log_scores: Vec<f64>,
    pub posteriors: Vec<f64>,
}

/// Normal density `g(x; mu, sigma)`.
pub fn gaussian_density(x: f64, mu: f64, sigma: f64) -> f64 {
    assert!(sigma > 0.0, "sigma must be positive");
    let z = (x - mu) / sigma;
    (-0.5 * z * z).exp() / (sigma * (2.0 * std::f64::consts::PI).sqrt())
}

fn log_gaussian_density(x: f64, mu: f64, sigma: f64) -> f64 {
    let z = (x - mu) / sigma;
    -0.5 * LN_2PI - sigma.ln() - 0.5 * z * z
}

/// Train a model. `smoothing_alpha = 0` gives the plain empirical
/// estimator (and then every class must occur in the data); positive alpha
/// adds pseudo-counts everywhere. `sigma_floor` bounds every sigma away
/// from zero.
pub fn train(dataset: &Dataset, smoothing_alpha: f64, sigma_floor: f64) -> Result<NaiveBayesModel> {
    if dataset.is_empty() {
        return Err(Error::InvalidDataset("dataset has no rows".into()));
    }
    dataset.require_labels()?;
    if !smoothing_alpha.is_finite() || smoothing_alpha < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "smoothing alpha must be a finite non-negative real, got {smoothing_alpha}"
        )));
    }
    if !sigma_floor.is_finite() || sigma_floor <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "sigma floor must be a finite positive real, got {sigma_floor}"
        )));
    }

    let schema = dataset.schema();
    let m = schema.num_classes();
    let n = dataset.len() as f64;
    let class_counts = dataset.class_counts();
    if smoothing_alpha == 0.0 {
        if let Some(c) = class_counts.iter().position(|&c| c == 0) {
            return Err(Error::Train(format!(
                "class '{}' has no training rows and alpha = 0",
                schema.class_labels[c]
            )));
        }
    }

    let priors: Vec<f64> = class_counts
        .iter()
        .map(|&c| (c as f64 + smoothing_alpha) / (n + smoothing_alpha * m as f64))
        .collect();

    let class_of = |row: &Instance| {
        schema
            .class_index(row.label.as_deref().expect("labeled"))
            .expect("valid label")
    };

    let mut params = Vec::with_capacity(schema.num_attributes());
    for (k, attr) in schema.attributes.iter().enumerate() {
        match &attr.kind {
            AttrKind::Categorical { values } => {
                let v = values.len();
                let mut counts = vec![vec![0u64; v]; m];
                for row in dataset.rows() {
                    let c = class_of(row);
                    let value = row.values[k].as_str().expect("categorical by schema");
                    counts[c][attr.value_index(value).expect("value in schema")] += 1;
                }
                let table: Vec<Vec<f64>> = counts
                    .iter()
                    .zip(&class_counts)
                    .map(|(row_counts, &nc)| {
                        row_counts
                            .iter()
                            .map(|&cnt| {
                                (cnt as f64 + smoothing_alpha)
                                    / (nc as f64 + smoothing_alpha * v as f64)
                            })
                            .collect()
                    })
                    .collect();
                params.push(AttrParams::Table(table));
            }
            AttrKind::Continuous { .. } => {
                // Pooled fallback parameters cover classes with no rows
                // (reachable only with alpha > 0).
                let all: Vec<f64> = dataset
                    .rows()
                    .iter()
                    .map(|r| r.values[k].as_f64().expect("continuous by schema"))
                    .collect();
                let pooled = mean_sigma(&all, sigma_floor);
                let mut per_class = Vec::with_capacity(m);
                for c in 0..m {
                    let values: Vec<f64> = dataset
                        .rows()
                        .iter()
                        .filter(|r| class_of(r) == c)
                        .map(|r| r.values[k].as_f64().expect("continuous by schema"))
                        .collect();
                    if values.is_empty() {
                        per_class.push(pooled);
                    } else {
                        per_class.push(mean_sigma(&values, sigma_floor));
                    }
                }
                params.push(AttrParams::Gaussian(per_class));
            }
        }
    }

    Ok(NaiveBayesModel {
        schema: schema.clone(),
        alpha: smoothing_alpha,
        sigma_floor,
        priors,
        params,
    })
}

/// Sample mean and population standard deviation (denominator `n`),
/// floored.
fn mean_sigma(values: &[f64], sigma_floor: f64) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt().max(sigma_floor))
}

impl NaiveBayesModel {
    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn sigma_floor(&self) -> f64 {
        self.sigma_floor
    }

    /// Prior for a class label.
    pub fn prior(&self, label: &str) -> Option<f64> {
        Some(self.priors[self.schema.class_index(label)?])
    }

    /// Conditional probability of a categorical value given a class.
    pub fn conditional(&self, label: &str, attribute: &str, value: &str) -> Option<f64> {
        let c = self.schema.class_index(label)?;
        let k = self.schema.attr_index(attribute)?;
        match &self.params[k] {
            AttrParams::Table(table) => {
                let v = self.schema.attributes[k].value_index(value)?;
                Some(table[c][v])
            }
            AttrParams::Gaussian(_) => None,
        }
    }

    /// Normal parameters of a continuous attribute given a class.
    pub fn gaussian(&self, label: &str, attribute: &str) -> Option<(f64, f64)> {
        let c = self.schema.class_index(label)?;
        let k = self.schema.attr_index(attribute)?;
        match &self.params[k] {
            AttrParams::Table(_) => None,
            AttrParams::Gaussian(g) => Some(g[c]),
        }
    }

    /// Log-domain class scores and normalized posteriors for an instance.
    /// The label, if present, is ignored.
    ///
    /// Each class's log factors are summed in ascending order, so classes
    /// whose factor multisets are equal get bitwise-equal scores and the
    /// documented tie-break stays meaningful.
    pub fn score(&self, instance: &Instance) -> Result<ClassScores> {
        if instance.values.len() != self.schema.num_attributes() {
            return Err(Error::SchemaMismatch(format!(
                "instance has {} values, schema expects {}",
                instance.values.len(),
                self.schema.num_attributes()
            )));
        }
        let m = self.schema.num_classes();
        let mut factors: Vec<Vec<f64>> = self
            .priors
            .iter()
            .map(|p| {
                let mut f = Vec::with_capacity(self.schema.num_attributes() + 1);
                f.push(p.ln());
                f
            })
            .collect();
        for (k, (attr, value)) in self.schema.attributes.iter().zip(&instance.values).enumerate() {
            match (&self.params[k], value) {
                (AttrParams::Table(table), Value::Categorical(v)) => {
                    let idx = attr.value_index(v).ok_or_else(|| {
                        Error::SchemaMismatch(format!(
                            "unknown value '{}' for attribute '{}'",
                            v, attr.name
                        ))
                    })?;
                    for c in 0..m {
                        factors[c].push(table[c][idx].ln());
                    }
                }
                (AttrParams::Gaussian(gauss), Value::Continuous(x)) => {
                    for c in 0..m {
                        let (mu, sigma) = gauss[c];
                        factors[c].push(log_gaussian_density(*x, mu, sigma));
                    }
                }
                _ => {
                    return Err(Error::SchemaMismatch(format!(
                        "value kind does not match attribute '{}'",
                        attr.name
                    )))
                }
            }
        }
        let log_scores: Vec<f64> = factors
            .into_iter()
            .map(|mut f| {
                f.sort_by(f64::total_cmp);
                f.into_iter().sum()
            })
            .collect();

        let max = log_scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let posteriors = if max.is_finite() {
            let weights: Vec<f64> = log_scores.iter().map(|ls| (ls - max).exp()).collect();
            let sum: f64 = weights.iter().sum();
            weights.iter().map(|w| w / sum).collect()
        } else {
            // Every class scored zero (possible only with alpha = 0):
            // fall back to the priors.
            self.priors.clone()
        };
        Ok(ClassScores {
            log_scores,
            posteriors,
        })
    }

    /// Most probable class: argmax of the log scores, ties resolved to the
    /// earliest label in schema order.
    pub fn predict(&self, instance: &Instance) -> Result<&str> {
        let scores = self.score(instance)?;
        let mut best = 0;
        for (c, &ls) in scores.log_scores.iter().enumerate() {
            if ls > scores.log_scores[best] {
                best = c;
            }
        }
        Ok(&self.schema.class_labels[best])
    }

    pub fn to_json(&self) -> String {
        let labels = &self.schema.class_labels;
        let mut priors = BTreeMap::new();
        for (c, label) in labels.iter().enumerate() {
            priors.insert(label.clone(), self.priors[c]);
        }
        let mut tables: BTreeMap<String, BTreeMap<String, BTreeMap<String, f64>>> = BTreeMap::new();
        let mut gaussians: BTreeMap<String, BTreeMap<String, GaussianDoc>> = BTreeMap::new();
        for (c, label) in labels.iter().enumerate() {
            for (k, attr) in self.schema.attributes.iter().enumerate() {
                match &self.params[k] {
                    AttrParams::Table(table) => {
                        let values = attr.values().expect("categorical");
                        let entry: BTreeMap<String, f64> = values
                            .iter()
                            .cloned()
                            .zip(table[c].iter().copied())
                            .collect();
                        tables
                            .entry(label.clone())
                            .or_default()
                            .insert(attr.name.clone(), entry);
                    }
                    AttrParams::Gaussian(gauss) => {
                        let (mu, sigma) = gauss[c];
                        gaussians
                            .entry(label.clone())
                            .or_default()
                            .insert(attr.name.clone(), GaussianDoc { mu, sigma });
                    }
                }
            }
        }
        let doc = ModelDoc {
            kind: "naive_bayes".into(),
            version: 1,
            alpha: self.alpha,
            sigma_floor: self.sigma_floor,
            priors,
            tables,
            gaussians,
            schema: self.schema.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("model serialization")
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let doc: ModelDoc = serde_json::from_slice(bytes)?;
        if doc.kind != "naive_bayes" {
            return Err(Error::InvalidModel(format!(
                "expected kind 'naive_bayes', found '{}'",
                doc.kind
            )));
        }
        if doc.version != 1 {
            return Err(Error::InvalidModel(format!(
                "unsupported version {}",
                doc.version
            )));
        }
        let schema = doc.schema;
        let m = schema.num_classes();
        let mut priors = Vec::with_capacity(m);
        for label in &schema.class_labels {
            let p = doc
                .priors
                .get(label)
                .ok_or_else(|| Error::InvalidModel(format!("missing prior for class '{label}'")))?;
            priors.push(*p);
        }
        let mut params = Vec::with_capacity(schema.num_attributes());
        for attr in &schema.attributes {
            match &attr.kind {
                AttrKind::Categorical { values } => {
                    let mut table = Vec::with_capacity(m);
                    for label in &schema.class_labels {
                        let entry = doc
                            .tables
                            .get(label)
                            .and_then(|t| t.get(&attr.name))
                            .ok_or_else(|| {
                                Error::InvalidModel(format!(
                                    "missing table for class '{label}', attribute '{}'",
                                    attr.name
                                ))
                            })?;
                        let mut row = Vec::with_capacity(values.len());
                        for value in values {
                            let p = entry.get(value).ok_or_else(|| {
                                Error::InvalidModel(format!(
                                    "missing probability for '{}' = '{value}'",
                                    attr.name
                                ))
                            })?;
                            row.push(*p);
                        }
                        table.push(row);
                    }
                    params.push(AttrParams::Table(table));
                }
                AttrKind::Continuous { .. } => {
                    let mut gauss = Vec::with_capacity(m);
                    for label in &schema.class_labels {
                        let g = doc
                            .gaussians
                            .get(label)
                            .and_then(|t| t.get(&attr.name))
                            .ok_or_else(|| {
                                Error::InvalidModel(format!(
                                    "missing gaussian for class '{label}', attribute '{}'",
                                    attr.name
                                ))
                            })?;
                        if g.sigma.is_nan() || g.sigma <= 0.0 {
                            return Err(Error::InvalidModel(format!(
                                "non-positive sigma for class '{label}', attribute '{}'",
                                attr.name
                            )));
                        }
                        gauss.push((g.mu, g.sigma));
                    }
                    params.push(AttrParams::Gaussian(gauss));
                }
            }
        }
        Ok(Self {
            schema,
            alpha: doc.alpha,
            sigma_floor: doc.sigma_floor,
            priors,
            params,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ModelDoc {
    kind: String,
    version: u32,
    alpha: f64,
    sigma_floor: f64,
    priors: BTreeMap<String, f64>,
    tables: BTreeMap<String, BTreeMap<String, BTreeMap<String, f64>>>,
    gaussians: BTreeMap<String, BTreeMap<String, GaussianDoc>>,
    schema: Schema,
}

#[derive(Serialize, Deserialize)]
struct GaussianDoc {
    mu: f64,
    sigma: f64,
}
