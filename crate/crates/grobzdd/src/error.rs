use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable order violated: node on x{var} has a child with top variable x{child}")]
    VariableOrder { var: u32, child: u32 },
    #[error("operands belong to different managers")]
    ManagerMismatch,
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("operation needs a decision node, got a terminal")]
    Terminal,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("variable index {0} out of range")]
    VariableOutOfRange(u32),
    #[error("ordering is not symmetric on the variables of the polynomial")]
    NonSymmetricOrdering,
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("zero set and one set of a partial function overlap")]
    OverlappingPartialFn,
    #[error("standard monomial search exceeded {iterations} rounds (seed {seed})")]
    IterationCap { iterations: u32, seed: u64 },
    #[error("invalid modulus {0}")]
    InvalidModulus(u64),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("circuit error: {0}")]
    Circuit(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::Parse { line, column, message: message.into() }
    }
}
