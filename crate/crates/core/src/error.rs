use thiserror::Error;

/// Failure modes shared by every layer of the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured size cap (permutation count, degree, prefix length) was exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    /// An identity that must hold by construction did not; indicates a bug.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn resource<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Resource(msg.into()))
}
