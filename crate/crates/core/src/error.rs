use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller supplied arguments outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation would exceed a configured resource budget.
    #[error("resource error: {what} needs {needed} bytes, budget is {budget} bytes")]
    Resource {
        what: String,
        needed: u128,
        budget: u128,
    },

    /// An internal identity failed. Always an implementation bug.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("unknown name: {0}")]
    Lookup(String),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
