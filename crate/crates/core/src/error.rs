use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: u{0} vs u{1}")]
    RankMismatch(usize, usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{0} of the zero element is undefined")]
    ZeroElement(&'static str),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    /// An iteration guard tripped where the theory guarantees termination.
    #[error("theory-violation guard: {what} exceeded the cap of {cap} iterations")]
    TheoryViolation { what: &'static str, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
