use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input lies outside the operation's domain (wrong prime, non-unit, bad branch...).
    #[error("domain error: {0}")]
    Domain(String),
    /// The inputs are not known to enough digits to determine the answer.
    #[error("precision error: {0}")]
    Precision(String),
    /// A configured cap (precision or scan budget) would be exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
    /// A uniqueness or existence guarantee failed; indicates a bug upstream.
    #[error("invariant violated: {0}")]
    Invariant(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
