use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// A mathematical precondition of an operation does not hold.
    #[error("{0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A single ambient space would exceed the configured dimension budget.
    #[error("space of dimension {dim} exceeds the size limit {limit}")]
    SizeLimit { dim: u64, limit: u64 },

    /// An internal consistency check failed. This always indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
