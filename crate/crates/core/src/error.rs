use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the domain of the operation (e.g. `t <= 0`).
    #[error("domain error: {0}")]
    Domain(String),

    /// A descriptor or profile that violates its invariants.
    #[error("invalid descriptor: field `{field}`: {reason}")]
    Descriptor { field: String, reason: String },

    #[error("dimension n = {n} not supported: {reason}")]
    Dimension { n: usize, reason: String },

    #[error("not integrable: {0}")]
    NotIntegrable(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Two routes that must agree disagreed.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn descriptor(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Descriptor {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn dimension(n: usize, reason: impl Into<String>) -> Self {
        Error::Dimension {
            n,
            reason: reason.into(),
        }
    }
}
