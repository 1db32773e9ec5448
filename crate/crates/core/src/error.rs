use thiserror::Error;

/// Errors raised by the number-theoretic operations.
///
/// `Usage` covers malformed arguments (a zero modulus, a non-prime where a
/// prime is required). `Domain` covers arguments that are well formed but
/// outside the hypotheses of the identity being evaluated. `Mismatch` is
/// only produced when two independent computations of the same quantity
/// disagree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cross-check failed: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
