use thiserror::Error;

/// Errors raised by table construction, measures and constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} bits, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("{what}: arity {arity} is above the cap of {cap}")]
    AboveCap {
        what: &'static str,
        arity: usize,
        cap: usize,
    },

    #[error("variable index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("variable index {0} appears more than once")]
    DuplicateIndex(usize),

    #[error("malformed truth table text: {0}")]
    Malformed(String),

    #[error("wrong hex digit count: expected {expected}, got {got}")]
    WrongDigitCount { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("arity overflow composing {outer} with {inner} variables")]
    ArityOverflow { outer: usize, inner: usize },

    #[error("malformed decision tree: {0}")]
    MalformedTree(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown check: {0}")]
    UnknownCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
