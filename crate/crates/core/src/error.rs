//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HvError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes at the given assignment")]
    SpecializationPole,

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("central generator {key} is not active in this context")]
    InactiveCentralKey { key: String },

    #[error("operation requires the {expected} variant, context is {got}")]
    VariantMismatch { expected: &'static str, got: String },

    #[error("gate violation: {0}")]
    GateViolation(String),

    #[error("tabulated cocycle evaluated outside its window")]
    OutOfWindow,

    #[error("lambda = -1 is outside the domain of this operation")]
    LambdaMinusOne,

    #[error("extension to the central cover requires l2 = 0")]
    NonzeroL2,

    #[error("truncated dimension is unstable: {0}")]
    UnstableTruncation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, HvError>;
