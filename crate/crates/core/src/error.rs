use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller supplied a value outside an operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A graph type cannot be realized with the requested vertex count or
    /// lattice point.
    #[error("unrealizable type: {0}")]
    Unrealizable(String),
    /// A search or enumeration would exceed its configured bound.
    #[error("infeasible request: {0}")]
    Feasibility(String),
    /// A file or literal could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
