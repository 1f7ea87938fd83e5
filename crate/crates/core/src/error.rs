use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("length mismatch: expected {expected} variables, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("exponent overflow")]
    Overflow,

    #[error("variable index {index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("the zero module has undefined (Stanley) depth")]
    ZeroModule,

    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    /// A search failed at a target that a proven bound guarantees. This is a
    /// contradiction, not an operational failure.
    #[error("no interval partition at guaranteed target {target}: {context}")]
    Contradiction { target: usize, context: String },

    #[error("certificate rejected: {0}")]
    InvalidCertificate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
