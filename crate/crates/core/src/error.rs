use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument is outside the supported domain.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// An operation was invoked on a value that violates its preconditions.
    #[error("usage error: {0}")]
    Usage(String),
    /// An internal consistency check failed; carries enough context to debug.
    #[error("diagnostic: {0}")]
    Diagnostic(String),
    /// Input file could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
    pub fn diagnostic(msg: impl Into<String>) -> Self {
        Error::Diagnostic(msg.into())
    }
}
