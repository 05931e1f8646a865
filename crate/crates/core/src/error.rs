use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one failure class
/// of the public operations; the CLI turns `Usage` into exit code 2 and
/// `Verification` into exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("out of domain: {0}")]
    OutOfDomain(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}

pub(crate) fn unsupported<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Unsupported(msg.into()))
}
