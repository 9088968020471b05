use thiserror::Error;

/// Failure modes shared by every module.
///
/// The variants map onto the CLI exit codes: `Input` and `Capability` are
/// caller problems, `Bound` means a search ran out of room before it could
/// decide, and `Invariant` means two independent computations disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("capability exceeded: {0}")]
    Capability(String),
    #[error("inconclusive within bounds: {0}")]
    Bound(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}
