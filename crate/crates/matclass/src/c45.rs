//! C4.5 decision-tree induction.
//!
//! Split quality is scored in bits: `entropy` of the class distribution,
//! expected post-split information, their difference (the gain), and the
//! gain normalized by the split's own entropy (the gain ratio). Candidate
//! selection keeps only candidates whose gain reaches the node's mean gain,
//! then takes the best gain ratio among them. Categorical attributes split
//! multiway (one branch per schema value); continuous attributes split
//! binary on observed-value thresholds.

use serde::{Deserialize, Serialize};

use crate::data::{AttrKind, Dataset, Instance, Schema, Value};
use crate::error::{Error, Result};
use crate::par;

/// Induction guards. The defaults grow the tree to purity.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeParams {
    /// Stop and emit a leaf when a partition has fewer rows than this.
    pub min_leaf_size: usize,
    /// Maximum node depth (root = 0), or `None` for unlimited.
    pub max_depth: Option<usize>,
    /// Candidates with split info below this are unusable.
    pub split_info_epsilon: f64,
}

impl Default for TreeParams {
    fn default() -> Self {
        Self {
            min_leaf_size: 1,
            max_depth: None,
            split_info_epsilon: 1e-12,
        }
    }
}

/// How a node partitions its rows.
#[derive(Debug, Clone, PartialEq)]
pub enum SplitForm {
    /// One branch per value in the attribute's schema list.
    Multiway,
    /// Two branches: `value <= t` and `value > t`.
    Threshold(f64),
}

/// A concrete split: attribute plus form.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitCriterion {
    pub attribute: String,
    pub form: SplitForm,
}

/// Tree node. Internal nodes carry the majority class of their training
/// partition; empty categorical branches become zero-count leaves labeled
/// with that majority. Class and attribute references are indices into the
/// owning tree's schema.
#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode {
    Leaf {
        class: usize,
        counts: Vec<u64>,
    },
    Internal {
        attr: usize,
        form: SplitForm,
        majority: usize,
        children: Vec<TreeNode>,
    },
}

/// A trained C4.5 tree bound to its schema.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    schema: Schema,
    params: TreeParams,
    root: TreeNode,
}

// ---------------------------------------------------------------------------
// Split-quality measures
// ---------------------------------------------------------------------------

/// Shannon entropy in bits of a class-count vector. `0 log 0` counts as 0.
///
/// Panics if every count is zero.
pub fn entropy(class_counts: &[u64]) -> f64 {
    let total: u64 = class_counts.iter().sum();
    assert!(total > 0, "entropy of an empty partition");
    let total = total as f64;
    class_counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum()
}

/// Expected information after partitioning: the size-weighted mean entropy
/// of the subsets. Empty subsets contribute nothing.
///
/// Panics if every subset is empty.
pub fn expected_info(partition_class_counts: &[Vec<u64>]) -> f64 {
    let total: u64 = partition_class_counts
        .iter()
        .map(|p| p.iter().sum::<u64>())
        .sum();
    assert!(total > 0, "expected_info of an all-empty partition");
    let total = total as f64;
    partition_class_counts
        .iter()
        .filter(|p| p.iter().sum::<u64>() > 0)
        .map(|p| {
            let weight = p.iter().sum::<u64>() as f64 / total;
            weight * entropy(p)
        })
        .sum()
}

/// Entropy of the branch sizes themselves, in bits.
fn sizes_split_info(sizes: &[u64]) -> f64 {
    entropy(sizes)
}

/// Information gain of a criterion over a labeled dataset.
pub fn info_gain(dataset: &Dataset, criterion: &SplitCriterion) -> Result<f64> {
    let (parent, branches) = criterion_counts(dataset, criterion)?;
    Ok(entropy(&parent) - expected_info(&branches))
}

/// Split info of a criterion: entropy of the branch-size distribution.
pub fn split_info(dataset: &Dataset, criterion: &SplitCriterion) -> Result<f64> {
    let (_, branches) = criterion_counts(dataset, criterion)?;
    let sizes: Vec<u64> = branches
        .iter()
        .map(|b| b.iter().sum::<u64>())
        .filter(|&s| s > 0)
        .collect();
    Ok(sizes_split_info(&sizes))
}

/// Gain ratio, or `None` when the split info falls below `epsilon` and the
/// criterion is unusable.
pub fn gain_ratio(dataset: &Dataset, criterion: &SplitCriterion, epsilon: f64) -> Result<Option<f64>> {
    let gain = info_gain(dataset, criterion)?;
    let si = split_info(dataset, criterion)?;
    Ok((si >= epsilon).then(|| gain / si))
}

/// Candidate thresholds for a continuous attribute: the sorted unique
/// observed values minus the maximum (a threshold at the maximum would
/// leave the `>` branch empty). The branch test is `value <= t`.
pub fn candidate_thresholds(dataset: &Dataset, attribute: &str) -> Result<Vec<f64>> {
    let attr = dataset
        .schema()
        .attr_index(attribute)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown attribute '{attribute}'")))?;
    if dataset.schema().attributes[attr].is_categorical() {
        return Err(Error::InvalidArgument(format!(
            "attribute '{attribute}' is categorical"
        )));
    }
    let mut values: Vec<f64> = dataset
        .rows()
        .iter()
        .map(|r| r.values[attr].as_f64().expect("continuous by schema"))
        .collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    values.pop();
    Ok(values)
}

fn criterion_counts(dataset: &Dataset, criterion: &SplitCriterion) -> Result<(Vec<u64>, Vec<Vec<u64>>)> {
    check_trainable(dataset)?;
    let schema = dataset.schema();
    let attr = schema
        .attr_index(&criterion.attribute)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown attribute '{}'", criterion.attribute)))?;
    let spec = &schema.attributes[attr];
    match (&criterion.form, &spec.kind) {
        (SplitForm::Multiway, AttrKind::Categorical { .. }) => {}
        (SplitForm::Threshold(_), AttrKind::Continuous { .. }) => {}
        _ => {
            return Err(Error::InvalidArgument(format!(
                "split form does not match the kind of attribute '{}'",
                criterion.attribute
            )))
        }
    }
    let rows: Vec<u32> = (0..dataset.len() as u32).collect();
    let parent = subset_class_counts(dataset, &rows);
    let branches = branch_class_counts(dataset, &rows, attr, &criterion.form);
    Ok((parent, branches))
}

fn check_trainable(dataset: &Dataset) -> Result<()> {
    if dataset.is_empty() {
        return Err(Error::InvalidDataset("dataset has no rows".into()));
    }
    dataset.require_labels()
}

fn subset_class_counts(ds: &Dataset, rows: &[u32]) -> Vec<u64> {
    let mut counts = vec![0u64; ds.schema().num_classes()];
    for &i in rows {
        let label = ds.rows()[i as usize].label.as_deref().expect("labeled");
        counts[ds.schema().class_index(label).expect("valid label")] += 1;
    }
    counts
}

fn class_of(ds: &Dataset, row: u32) -> usize {
    let label = ds.rows()[row as usize].label.as_deref().expect("labeled");
    ds.schema().class_index(label).expect("valid label")
}

fn branch_of(ds: &Dataset, row: u32, attr: usize, form: &SplitForm) -> usize {
    match (form, &ds.rows()[row as usize].values[attr]) {
        (SplitForm::Multiway, Value::Categorical(v)) => ds.schema().attributes[attr]
            .value_index(v)
            .expect("value in schema"),
        (SplitForm::Threshold(t), Value::Continuous(x)) => usize::from(*x > *t),
        _ => unreachable!("criterion validated against schema"),
    }
}

fn branch_count(ds: &Dataset, attr: usize, form: &SplitForm) -> usize {
    match form {
        SplitForm::Multiway => ds.schema().attributes[attr]
            .values()
            .expect("categorical")
            .len(),
        SplitForm::Threshold(_) => 2,
    }
}

fn branch_class_counts(ds: &Dataset, rows: &[u32], attr: usize, form: &SplitForm) -> Vec<Vec<u64>> {
    let m = ds.schema().num_classes();
    let mut branches = vec![vec![0u64; m]; branch_count(ds, attr, form)];
    for &i in rows {
        branches[branch_of(ds, i, attr, form)][class_of(ds, i)] += 1;
    }
    branches
}

// ---------------------------------------------------------------------------
// Candidate enumeration and selection
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct Candidate {
    attr: usize,
    form: SplitForm,
    gain: f64,
    ratio: Option<f64>,
}

fn score_counts(parent_entropy: f64, branches: &[Vec<u64>], epsilon: f64) -> (f64, Option<f64>) {
    let gain = parent_entropy - expected_info(branches);
    let sizes: Vec<u64> = branches
        .iter()
        .map(|b| b.iter().sum::<u64>())
        .filter(|&s| s > 0)
        .collect();
    if sizes.len() < 2 {
        // Everything lands in one branch: no usable split.
        return (gain, None);
    }
    let si = sizes_split_info(&sizes);
    (gain, (si >= epsilon).then(|| gain / si))
}

/// All candidates at a node, in canonical order: schema attribute order,
/// thresholds ascending within an attribute. Attribute evaluation may run
/// in parallel; the collected order is the same either way.
fn node_candidates(ds: &Dataset, rows: &[u32], available: &[bool], epsilon: f64) -> Vec<Candidate> {
    let parent = subset_class_counts(ds, rows);
    let parent_entropy = entropy(&parent);
    let m = ds.schema().num_classes();
    let attrs: Vec<usize> = (0..ds.schema().num_attributes())
        .filter(|&a| available[a])
        .collect();

    let per_attr: Vec<Vec<Candidate>> = par::map(&attrs, |&attr| {
        match &ds.schema().attributes[attr].kind {
            AttrKind::Categorical { .. } => {
                let branches = branch_class_counts(ds, rows, attr, &SplitForm::Multiway);
                let (gain, ratio) = score_counts(parent_entropy, &branches, epsilon);
                vec![Candidate {
                    attr,
                    form: SplitForm::Multiway,
                    gain,
                    ratio,
                }]
            }
            AttrKind::Continuous { .. } => {
                // One sorted sweep yields every threshold's branch counts.
                let mut pairs: Vec<(f64, usize)> = rows
                    .iter()
                    .map(|&i| {
                        let x = ds.rows()[i as usize].values[attr]
                            .as_f64()
                            .expect("continuous by schema");
                        (x, class_of(ds, i))
                    })
                    .collect();
                pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
                let mut total = vec![0u64; m];
                for &(_, c) in &pairs {
                    total[c] += 1;
                }
                let mut left = vec![0u64; m];
                let mut out = Vec::new();
                let n = pairs.len();
                let mut i = 0;
                while i < n {
                    let v = pairs[i].0;
                    while i < n && pairs[i].0 == v {
                        left[pairs[i].1] += 1;
                        i += 1;
                    }
                    if i == n {
                        break; // the maximum is not a threshold
                    }
                    let right: Vec<u64> = total.iter().zip(&left).map(|(t, l)| t - l).collect();
                    let branches = vec![left.clone(), right];
                    let (gain, ratio) = score_counts(parent_entropy, &branches, epsilon);
                    out.push(Candidate {
                        attr,
                        form: SplitForm::Threshold(v),
                        gain,
                        ratio,
                    });
                }
                out
            }
        }
    });
    per_attr.into_iter().flatten().collect()
}

/// Pick the winning candidate: among usable candidates whose gain reaches
/// the mean gain, take the highest gain ratio. Ties resolve to the earliest
/// candidate in canonical order. Returns `None` when nothing is usable or
/// the winner's gain is not positive.
fn select_candidate(candidates: &[Candidate]) -> Option<&Candidate> {
    let usable: Vec<&Candidate> = candidates.iter().filter(|c| c.ratio.is_some()).collect();
    if usable.is_empty() {
        return None;
    }
    let mean = usable.iter().map(|c| c.gain).sum::<f64>() / usable.len() as f64;
    let mut kept: Vec<&Candidate> = usable.iter().copied().filter(|c| c.gain >= mean).collect();
    if kept.is_empty() {
        // Rounding can push the mean above every gain when all gains are
        // equal; fall back to the maximal-gain candidates.
        let max_gain = usable.iter().map(|c| c.gain).fold(f64::NEG_INFINITY, f64::max);
        kept = usable.iter().copied().filter(|c| c.gain == max_gain).collect();
    }
    let mut best = kept[0];
    for c in &kept[1..] {
        if c.ratio.unwrap() > best.ratio.unwrap() {
            best = c;
        }
    }
    (best.gain > 0.0).then_some(best)
}

/// Best split over the named available attributes, or `None`.
pub fn best_split(
    dataset: &Dataset,
    available_attributes: &[String],
    params: &TreeParams,
) -> Result<Option<SplitCriterion>> {
    check_trainable(dataset)?;
    let schema = dataset.schema();
    let mut available = vec![false; schema.num_attributes()];
    for name in available_attributes {
        let idx = schema
            .attr_index(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown attribute '{name}'")))?;
        available[idx] = true;
    }
    let rows: Vec<u32> = (0..dataset.len() as u32).collect();
    let candidates = node_candidates(dataset, &rows, &available, params.split_info_epsilon);
    Ok(select_candidate(&candidates).map(|c| SplitCriterion {
        attribute: schema.attributes[c.attr].name.clone(),
        form: c.form.clone(),
    }))
}

// ---------------------------------------------------------------------------
// Induction
// ---------------------------------------------------------------------------

/// Grow a tree on a labeled dataset. Stops at purity, at exhausted or
/// unusable attributes, at `min_leaf_size`, or at `max_depth`. Categorical
/// splitting attributes leave the available set in their subtrees;
/// continuous attributes stay available with fresh thresholds.
pub fn build(dataset: &Dataset, params: TreeParams) -> Result<DecisionTree> {
    check_trainable(dataset)?;
    let rows: Vec<u32> = (0..dataset.len() as u32).collect();
    let available = vec![true; dataset.schema().num_attributes()];
    let root = grow(dataset, &rows, &available, 0, &params);
    Ok(DecisionTree {
        schema: dataset.schema().clone(),
        params,
        root,
    })
}

fn argmax_first(counts: &[u64]) -> usize {
    let mut best = 0;
    for (i, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = i;
        }
    }
    best
}

fn grow(ds: &Dataset, rows: &[u32], available: &[bool], depth: usize, params: &TreeParams) -> TreeNode {
    let counts = subset_class_counts(ds, rows);
    let majority = argmax_first(&counts);
    let nonzero = counts.iter().filter(|&&c| c > 0).count();
    if nonzero <= 1
        || rows.len() < params.min_leaf_size
        || params.max_depth.is_some_and(|d| depth >= d)
    {
        return TreeNode::Leaf {
            class: majority,
            counts,
        };
    }
    let candidates = node_candidates(ds, rows, available, params.split_info_epsilon);
    let Some(best) = select_candidate(&candidates) else {
        return TreeNode::Leaf {
            class: majority,
            counts,
        };
    };
    let attr = best.attr;
    let form = best.form.clone();

    let mut partitions: Vec<Vec<u32>> = vec![Vec::new(); branch_count(ds, attr, &form)];
    for &i in rows {
        partitions[branch_of(ds, i, attr, &form)].push(i);
    }
    let child_available: Vec<bool> = if matches!(form, SplitForm::Multiway) {
        let mut a = available.to_vec();
        a[attr] = false;
        a
    } else {
        available.to_vec()
    };

    let m = ds.schema().num_classes();
    let children = par::map(&partitions, |part| {
        if part.is_empty() {
            TreeNode::Leaf {
                class: majority,
                counts: vec![0; m],
            }
        } else {
            grow(ds, part, &child_available, depth + 1, params)
        }
    });

    TreeNode::Internal {
        attr,
        form,
        majority,
        children,
    }
}

// ---------------------------------------------------------------------------
// Prediction and inspection
// ---------------------------------------------------------------------------

impl DecisionTree {
    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn params(&self) -> &TreeParams {
        &self.params
    }

    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    /// Descend to a leaf and return its label.
    pub fn predict(&self, instance: &Instance) -> Result<&str> {
        if instance.values.len() != self.schema.num_attributes() {
            return Err(Error::SchemaMismatch(format!(
                "instance has {} values, schema expects {}",
                instance.values.len(),
                self.schema.num_attributes()
            )));
        }
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf { class, .. } => return Ok(&self.schema.class_labels[*class]),
                TreeNode::Internal {
                    attr,
                    form,
                    children,
                    ..
                } => {
                    let spec = &self.schema.attributes[*attr];
                    let branch = match (form, &instance.values[*attr]) {
                        (SplitForm::Multiway, Value::Categorical(v)) => {
                            spec.value_index(v).ok_or_else(|| {
                                Error::SchemaMismatch(format!(
                                    "unknown value '{}' for attribute '{}'",
                                    v, spec.name
                                ))
                            })?
                        }
                        (SplitForm::Threshold(t), Value::Continuous(x)) => usize::from(*x > *t),
                        _ => {
                            return Err(Error::SchemaMismatch(format!(
                                "value kind does not match attribute '{}'",
                                spec.name
                            )))
                        }
                    };
                    node = &children[branch];
                }
            }
        }
    }

    /// Maximum node depth; a single leaf has depth 0.
    pub fn depth(&self) -> usize {
        fn rec(node: &TreeNode) -> usize {
            match node {
                TreeNode::Leaf { .. } => 0,
                TreeNode::Internal { children, .. } => {
                    1 + children.iter().map(rec).max().unwrap_or(0)
                }
            }
        }
        rec(&self.root)
    }

    pub fn leaf_count(&self) -> usize {
        fn rec(node: &TreeNode) -> usize {
            match node {
                TreeNode::Leaf { .. } => 1,
                TreeNode::Internal { children, .. } => children.iter().map(rec).sum(),
            }
        }
        rec(&self.root)
    }

    /// Indented rendering, one node per line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_node(&self.root, 0, None, &mut out);
        out
    }

    fn render_node(&self, node: &TreeNode, indent: usize, branch: Option<String>, out: &mut String) {
        let pad = "  ".repeat(indent);
        let prefix = match branch {
            Some(b) => format!("{pad}{b}: "),
            None => pad,
        };
        match node {
            TreeNode::Leaf { class, counts } => {
                let counts_str: Vec<String> = self
                    .schema
                    .class_labels
                    .iter()
                    .zip(counts)
                    .map(|(l, c)| format!("{l}={c}"))
                    .collect();
                out.push_str(&format!(
                    "{prefix}-> {} [{}]\n",
                    self.schema.class_labels[*class],
                    counts_str.join(", ")
                ));
            }
            TreeNode::Internal {
                attr,
                form,
                children,
                ..
            } => {
                let spec = &self.schema.attributes[*attr];
                out.push_str(&format!("{prefix}{}?\n", spec.name));
                match form {
                    SplitForm::Multiway => {
                        for (value, child) in spec.values().expect("categorical").iter().zip(children) {
                            self.render_node(child, indent + 1, Some(format!("= {value}")), out);
                        }
                    }
                    SplitForm::Threshold(t) => {
                        self.render_node(&children[0], indent + 1, Some(format!("<= {t}")), out);
                        self.render_node(&children[1], indent + 1, Some(format!("> {t}")), out);
                    }
                }
            }
        }
    }

    pub fn to_json(&self) -> String {
        let doc = TreeDoc {
            kind: "c45".into(),
            version: 1,
            params: ParamsDoc {
                min_leaf_size: self.params.min_leaf_size,
                max_depth: self.params.max_depth,
                split_info_epsilon: self.params.split_info_epsilon,
            },
            root: self.node_to_doc(&self.root),
        };
        serde_json::to_string_pretty(&doc).expect("tree serialization")
    }

    fn node_to_doc(&self, node: &TreeNode) -> NodeDoc {
        match node {
            TreeNode::Leaf { class, counts } => NodeDoc {
                leaf_label: Some(self.schema.class_labels[*class].clone()),
                counts: Some(counts.clone()),
                attribute: None,
                threshold: None,
                majority_label: None,
                children: None,
            },
            TreeNode::Internal {
                attr,
                form,
                majority,
                children,
            } => {
                let spec = &self.schema.attributes[*attr];
                let branch_names: Vec<String> = match form {
                    SplitForm::Multiway => spec.values().expect("categorical").to_vec(),
                    SplitForm::Threshold(_) => vec!["le".into(), "gt".into()],
                };
                NodeDoc {
                    leaf_label: None,
                    counts: None,
                    attribute: Some(spec.name.clone()),
                    threshold: match form {
                        SplitForm::Threshold(t) => Some(*t),
                        SplitForm::Multiway => None,
                    },
                    majority_label: Some(self.schema.class_labels[*majority].clone()),
                    children: Some(
                        branch_names
                            .into_iter()
                            .zip(children)
                            .map(|(branch, child)| BranchDoc {
                                branch,
                                node: self.node_to_doc(child),
                            })
                            .collect(),
                    ),
                }
            }
        }
    }

    /// Load a tree document and bind it to `schema`, validating that every
    /// referenced attribute, branch and label exists there.
    pub fn from_json(bytes: &[u8], schema: &Schema) -> Result<Self> {
        let doc: TreeDoc = serde_json::from_slice(bytes)?;
        if doc.kind != "c45" {
            return Err(Error::InvalidModel(format!(
                "expected kind 'c45', found '{}'",
                doc.kind
            )));
        }
        if doc.version != 1 {
            return Err(Error::InvalidModel(format!(
                "unsupported version {}",
                doc.version
            )));
        }
        let params = TreeParams {
            min_leaf_size: doc.params.min_leaf_size,
            max_depth: doc.params.max_depth,
            split_info_epsilon: doc.params.split_info_epsilon,
        };
        let root = node_from_doc(&doc.root, schema)?;
        Ok(Self {
            schema: schema.clone(),
            params,
            root,
        })
    }
}

fn node_from_doc(doc: &NodeDoc, schema: &Schema) -> Result<TreeNode> {
    match (&doc.leaf_label, &doc.attribute) {
        (Some(label), None) => {
            let class = schema
                .class_index(label)
                .ok_or_else(|| Error::InvalidModel(format!("unknown leaf label '{label}'")))?;
            let counts = doc.counts.clone().unwrap_or_default();
            if !counts.is_empty() && counts.len() != schema.num_classes() {
                return Err(Error::InvalidModel(format!(
                    "leaf counts have length {}, expected {}",
                    counts.len(),
                    schema.num_classes()
                )));
            }
            let counts = if counts.is_empty() {
                vec![0; schema.num_classes()]
            } else {
                counts
            };
            Ok(TreeNode::Leaf { class, counts })
        }
        (None, Some(attribute)) => {
            let attr = schema
                .attr_index(attribute)
                .ok_or_else(|| Error::InvalidModel(format!("unknown attribute '{attribute}'")))?;
            let spec = &schema.attributes[attr];
            let children_doc = doc
                .children
                .as_ref()
                .ok_or_else(|| Error::InvalidModel("internal node without children".into()))?;
            let majority_label = doc
                .majority_label
                .as_ref()
                .ok_or_else(|| Error::InvalidModel("internal node without majority_label".into()))?;
            let majority = schema
                .class_index(majority_label)
                .ok_or_else(|| Error::InvalidModel(format!("unknown majority label '{majority_label}'")))?;
            let (form, expected_branches): (SplitForm, Vec<String>) = match (doc.threshold, &spec.kind) {
                (Some(t), AttrKind::Continuous { .. }) => {
                    (SplitForm::Threshold(t), vec!["le".into(), "gt".into()])
                }
                (None, AttrKind::Categorical { .. }) => (
                    SplitForm::Multiway,
                    spec.values().expect("categorical").to_vec(),
                ),
                _ => {
                    return Err(Error::InvalidModel(format!(
                        "split form does not match the kind of attribute '{attribute}'"
                    )))
                }
            };
            if children_doc.len() != expected_branches.len() {
                return Err(Error::InvalidModel(format!(
                    "attribute '{attribute}' expects {} branches, found {}",
                    expected_branches.len(),
                    children_doc.len()
                )));
            }
            let mut children = Vec::with_capacity(children_doc.len());
            for (expected, branch) in expected_branches.iter().zip(children_doc) {
                if &branch.branch != expected {
                    return Err(Error::InvalidModel(format!(
                        "attribute '{attribute}': expected branch '{expected}', found '{}'",
                        branch.branch
                    )));
                }
                children.push(node_from_doc(&branch.node, schema)?);
            }
            Ok(TreeNode::Internal {
                attr,
                form,
                majority,
                children,
            })
        }
        _ => Err(Error::InvalidModel(
            "node must be either a leaf (leaf_label) or internal (attribute)".into(),
        )),
    }
}

#[derive(Serialize, Deserialize)]
struct TreeDoc {
    kind: String,
    version: u32,
    params: ParamsDoc,
    root: NodeDoc,
}

#[derive(Serialize, Deserialize)]
struct ParamsDoc {
    min_leaf_size: usize,
    #[serde(default)]
    max_depth: Option<usize>,
    split_info_epsilon: f64,
}

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    leaf_label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    counts: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    attribute: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    majority_label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    children: Option<Vec<BranchDoc>>,
}

#[derive(Serialize, Deserialize)]
struct BranchDoc {
    branch: String,
    node: NodeDoc,
}
