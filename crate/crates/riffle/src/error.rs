//! Error type shared by every module of the crate.

/// Errors produced by constructors and computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A computation exceeded its built-in size or iteration guard.
    #[error("iteration guard tripped: {0}")]
    IterationGuard(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn guard(msg: impl Into<String>) -> Self {
        Error::IterationGuard(msg.into())
    }
}
