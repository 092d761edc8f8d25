//! Schemas, datasets, CSV ingestion and seeded splitting.

pub mod dataset;
pub mod schema;
pub mod split;

pub use dataset::{Dataset, Instance, Value};
pub use schema::{AttrKind, AttributeSpec, Schema};
pub use split::stratified_split;
