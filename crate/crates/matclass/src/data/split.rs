//! Seeded, class-stratified train/test splitting.

use crate::error::{Error, Result};
use crate::rng::SeededRng;

use super::dataset::Dataset;

/// Split a labeled dataset into train and test partitions, stratified by
/// class: each class contributes `floor(train_fraction * class_count)` rows
/// to train (at least one when the class has two or more rows) and the rest
/// to test. The partition depends only on `(dataset, train_fraction, seed)`;
/// rows keep their original order within each partition.
pub fn stratified_split(
    dataset: &Dataset,
    train_fraction: f64,
    seed: u64,
) -> Result<(Dataset, Dataset)> {
    if dataset.is_empty() {
        return Err(Error::InvalidDataset("cannot split an empty dataset".into()));
    }
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "train fraction must lie in (0, 1), got {train_fraction}"
        )));
    }
    dataset.require_labels()?;

    let schema = dataset.schema();
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); schema.num_classes()];
    for (i, row) in dataset.rows().iter().enumerate() {
        let label = row.label.as_deref().expect("labels checked above");
        let c = schema
            .class_index(label)
            .expect("dataset rows conform to schema");
        by_class[c].push(i);
    }

    let mut rng = SeededRng::new(seed);
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    for indices in &mut by_class {
        let n = indices.len();
        if n == 0 {
            continue;
        }
        let mut take = (train_fraction * n as f64).floor() as usize;
        if n >= 2 {
            take = take.clamp(1, n - 1);
        }
        rng.shuffle(indices);
        train_idx.extend_from_slice(&indices[..take]);
        test_idx.extend_from_slice(&indices[take..]);
    }
    train_idx.sort_unstable();
    test_idx.sort_unstable();

    let pick = |idx: &[usize]| {
        let rows = idx.iter().map(|&i| dataset.rows()[i].clone()).collect();
        Dataset::new(schema.clone(), rows)
    };
    Ok((pick(&train_idx)?, pick(&test_idx)?))
}
