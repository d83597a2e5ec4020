use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed text input; `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{what}: size {actual} exceeds limit {limit}")]
    CapExceeded { what: &'static str, limit: usize, actual: usize },

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn decomposition(msg: impl Into<String>) -> Self {
        Error::InvalidDecomposition(msg.into())
    }
}
