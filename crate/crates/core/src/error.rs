use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A caller broke a documented precondition (e.g. asked for a gap ideal
    /// of an entry that is not reducible, or evaluated a node missing from a
    /// scheme).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
