use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value too large for the requested evaluation path.
    #[error("range error: {0}")]
    Range(String),

    /// Factors and non-factors could not be told apart within the term cap.
    #[error("not separated: trial {trial} stays at or above the threshold up to {cap} terms")]
    NotSeparated { trial: u64, cap: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidConfig(msg.into())
}
