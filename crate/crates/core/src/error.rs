use thiserror::Error;

/// Failure modes shared by every module.
///
/// The CLI maps `Usage` and `Parse` to exit code 2 and `Degenerate` to 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn degenerate(msg: impl Into<String>) -> Error {
    Error::Degenerate(msg.into())
}
