use thiserror::Error;

/// Errors raised by the verification library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    /// An operation was called outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    /// The requested size exceeds what the operation supports.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A checked invariant or identity did not hold.
    #[error("verification failed [{invariant}]: {detail}")]
    Verification { invariant: String, detail: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn verification(invariant: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Verification {
            invariant: invariant.into(),
            detail: detail.into(),
        }
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
