use thiserror::Error;

/// Errors produced by the algebra, enumeration and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed polynomial or spec text. `pos` is a byte offset into the input.
    #[error("syntax error at position {pos}: {message}")]
    Parse { pos: usize, message: String },

    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A runtime self-check failed. Never caused by valid input.
    #[error("internal error: {0}")]
    Internal(String),

    /// An exhaustive audit found a counterexample.
    #[error("audit failure: {0}")]
    Audit(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
