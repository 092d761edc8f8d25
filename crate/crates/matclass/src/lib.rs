//! Tabular classification toolkit for engineering-materials data.
//!
//! Two classifiers over mixed categorical/continuous attributes — naive
//! Bayes with add-alpha smoothing and a C4.5 decision tree with gain-ratio
//! selection — plus one-vs-rest confusion-matrix evaluation, a seeded
//! synthetic dataset generator, and a CLI that ties them into reproducible
//! runs. Reference evaluation results ship embedded; `verify-tables`
//! recomputes them from their confusion counts.

pub mod c45;
pub mod cli;
pub mod data;
pub mod error;
pub mod eval;
pub mod naive_bayes;
pub mod reference;
pub mod report;
pub mod rng;
pub mod synthgen;

mod par;

pub use data::{AttrKind, AttributeSpec, Dataset, Instance, Schema, Value};
pub use error::{Error, Result};
