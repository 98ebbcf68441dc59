use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input or arguments outside an operation's preconditions.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Well-formed input on which the operation is mathematically undefined.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured size bound would be exceeded.
    #[error("resource bound exceeded: {what} is {got}, limit {limit}")]
    Resource {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub fn check_bound(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        Err(Error::Resource { what, got, limit })
    } else {
        Ok(())
    }
}
