use thiserror::Error;

use crate::matching::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    InvalidSymbol(String),

    #[error("strings are over different alphabets")]
    AlphabetMismatch,

    #[error("invalid matching: {0}")]
    InvalidMatching(Violation),

    #[error("illegal step at input position {position}: {reason}")]
    IllegalStep { position: usize, reason: String },

    #[error("no input left to consume")]
    NoInput,

    #[error("invalid trace: {0}")]
    InvalidTrace(String),

    #[error("k-way shuffle supports 1..={max} strings, got {k}")]
    UnsupportedArity { k: usize, max: usize },

    #[error("input of size {size} exceeds the cap of {cap}")]
    TooLarge { size: usize, cap: usize },

    #[error("method not applicable: {0}")]
    NotApplicable(String),

    #[error("malformed instance: {0}")]
    MalformedInstance(String),

    #[error("invalid solution: {0}")]
    InvalidSolution(String),

    #[error("gadget index {k} outside 1..={max}")]
    GadgetIndex { k: usize, max: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::InvalidMatching(v)
    }
}
