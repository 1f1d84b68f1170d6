use thiserror::Error;

/// Failures surfaced by the command line, grouped by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Data(#[from] exact01_core::Error),
    #[error("{0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("model file: {0}")]
    BadModel(String),
    #[error("model file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("need at least {needed} records with distinct sizes, got {found}")]
    InsufficientPoints { needed: usize, found: usize },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(exact01_core::Error::InvalidParameter(_)) => 1,
            CliError::Data(_) | CliError::Io(_) | CliError::Json(_) | CliError::BadModel(_) => 2,
            CliError::InsufficientPoints { .. } => 2,
            CliError::Verification(_) => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
