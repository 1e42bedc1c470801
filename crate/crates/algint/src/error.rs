use thiserror::Error;

/// Errors raised by the library.
///
/// The variants are grouped the way a caller usually wants to react: bad
/// input, a numerical procedure that did not converge, or a consistency check
/// that failed.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("curve is reducible or not squarefree in y: {0}")]
    Reducible(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("path passes too close to a singular point: {0}")]
    PathTooClose(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("consistency check failed: {0}")]
    Check(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub fn check(msg: impl Into<String>) -> Self {
        Error::Check(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
