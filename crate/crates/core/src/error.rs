//! Error type shared by every module of the engine.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid number literal `{0}`")]
    InvalidNumber(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("coefficient {requested} requested beyond truncation order {order}")]
    BeyondTruncation { requested: i64, order: i64 },

    #[error("operator is not of Fuchs type: {0}")]
    NotFuchsType(String),

    #[error("symbol is singular (determinant vanishes identically)")]
    SingularSymbol,

    #[error("exponents outside Q(i): {0}")]
    UnsupportedExponentField(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("degenerate basis: {0}")]
    DegenerateBasis(String),

    #[error("parse error at {line}:{column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unbound parameter `{name}` at {line}:{column}")]
    UnboundParameter {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("verification failed: {0}")]
    VerificationFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
