use thiserror::Error;

/// Failure classes surfaced by every fallible operation in the crate.
///
/// The CLI maps these onto exit codes, so the split matters: `Input` is
/// the caller's fault, `Resource` is a configured guard, and
/// `Structural`/`Consistency` indicate a bug in this library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
