use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("classification error: {0}")]
    Classification(String),

    #[error("pattern syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
