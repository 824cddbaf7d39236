//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty sequence")]
    EmptySequence,

    #[error("weights must be positive (weight[{index}] = {value})")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("penalty must be non-negative (got {0})")]
    NegativePenalty(f64),

    #[error("relaxation parameter theta must be non-negative (got {0})")]
    NegativeTheta(f64),

    #[error("dimension mismatch: {context} (expected {expected}, got {got})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("data must be centered before fitting (max |column mean| = {0:e})")]
    NotCentered(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("series shorter than maximum lag (length {length}, max lag {max_lag})")]
    SeriesTooShort { length: usize, max_lag: usize },

    #[error("response must be binary 0/1 (row {row} has {value})")]
    NonBinaryResponse { row: usize, value: f64 },

    #[error("fold too small: every fold needs at least 2 rows (fold {fold} has {rows})")]
    FoldTooSmall { fold: usize, rows: usize },

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot parse {path} row {row}, column '{column}': '{value}' is not numeric")]
    ParseCell {
        path: String,
        row: usize,
        column: String,
        value: String,
    },

    #[error("response column '{0}' not found in header {1:?}")]
    ResponseColumnNotFound(String, Vec<String>),

    #[error("{path}: {message}")]
    BadInputFile { path: String, message: String },

    #[error("csv error in {path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
}
