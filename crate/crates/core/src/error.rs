use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("singular linear system (degenerate point combination)")]
    SingularSystem,

    #[error("bad label alphabet: {0}")]
    BadLabelAlphabet(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("non-finite coordinate at row {row}, column {column}")]
    NonFinite { row: usize, column: usize },

    #[error("dimension {d} exceeds item count {n}")]
    DimensionExceedsCount { d: usize, n: usize },

    #[error("no viable model: upper bound {ub} is below the optimum or every combination is singular")]
    NoViableModel { ub: usize },

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("instance too large for exhaustive enumeration: {0}")]
    TooLarge(String),

    #[error("parse error at row {row}, column {column}: {message}")]
    ParseError {
        row: usize,
        column: usize,
        message: String,
    },

    #[error("ragged rows: row {row} has {found} fields, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("bad fold count {k} for {n} items")]
    BadFoldCount { k: usize, n: usize },

    #[error("assignment is not linearly separable")]
    NotSeparable,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
