use thiserror::Error;

/// Errors produced by mechanisms and the harness.
///
/// The CLI maps these onto exit codes: validation errors exit with 2,
/// mechanism errors with 3 and I/O errors with 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("mechanism error: {0}")]
    Mechanism(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn mechanism(msg: impl Into<String>) -> Self {
        Error::Mechanism(msg.into())
    }

    /// Exit code for the CLI, per the documented contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) => 2,
            Error::Mechanism(_) => 3,
            Error::Io(_) | Error::Json(_) | Error::Csv(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
