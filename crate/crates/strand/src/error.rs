use thiserror::Error;

/// Errors surfaced by the solvers and their supporting structures.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated an operation's contract (bad bounds, empty input,
    /// mismatched hash contexts, and so on).
    #[error("usage: {0}")]
    Usage(String),

    /// An index fell outside the structure it addresses.
    #[error("index out of range: {0}")]
    Index(String),

    /// An exact oracle refused an input that exceeds its enumeration budget.
    #[error("oracle budget exceeded: {0}")]
    Budget(String),

    /// The dictionary cannot assemble the requested text.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// Instance parsing failed.
    #[error("parse: {0}")]
    Parse(String),

    /// Underlying I/O failure while reading or writing instance files.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn index(msg: impl Into<String>) -> Self {
        Error::Index(msg.into())
    }

    pub(crate) fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }

    pub(crate) fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
