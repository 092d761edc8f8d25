use thiserror::Error;

/// Errors surfaced by ingestion, training, evaluation and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    /// Schema document failed validation; the message names the offender.
    #[error("invalid schema: {0}")]
    InvalidSchema(String),

    /// A data row violates the schema. `row` is the physical line number of
    /// the source file (the header is line 1) or the 1-based row position
    /// when there is no file context.
    #[error("row {row}, {column}: {message}")]
    InvalidRow {
        row: usize,
        column: String,
        message: String,
    },

    /// Structural problem with a dataset as a whole (missing columns,
    /// empty input, unlabeled rows where labels are required).
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Model and dataset (or instance) do not share a schema.
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error("training failed: {0}")]
    Train(String),

    #[error("evaluation failed: {0}")]
    Eval(String),

    /// A persisted model document is malformed or inconsistent.
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
