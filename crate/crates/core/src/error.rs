use thiserror::Error;

/// Errors raised by the library.
///
/// `InternalInconsistency` is reserved for failed exactness assertions and
/// oracle disagreements: every such condition is a theorem, so hitting it
/// means a bug rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InternalInconsistency(msg.into())
}
