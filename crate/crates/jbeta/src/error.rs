use thiserror::Error;

/// Everything that ends a run with exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] jbeta_core::Error),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
