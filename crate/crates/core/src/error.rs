use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("invalid rational {0:?}: expected \"n\" or \"n/d\" with integer n, d")]
    ParseRational(String),

    #[error("binomial coefficient undefined for negative upper index {0}")]
    NegativeBinomial(i64),

    #[error("matrix is singular; negative powers are undefined")]
    SingularMatrix,

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid recurrence parameters: {0}")]
    InvalidParams(String),

    #[error("empty range: lo = {lo} > hi = {hi}")]
    EmptyRange { lo: i64, hi: i64 },

    #[error("degenerate system: {0}")]
    Degenerate(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("malformed grid: {0}")]
    Grid(String),

    #[error("unknown identity {id:?}{}", suggestion.as_ref().map(|s| format!(" (did you mean {s:?}?)")).unwrap_or_default())]
    UnknownIdentity { id: String, suggestion: Option<String> },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown sequence {0:?}")]
    UnknownSequence(String),

    #[error("index expression is not an integer: {0}")]
    NonIntegerIndex(String),

    #[error("unbound variable {0:?}")]
    UnboundVariable(String),

    #[error("integer out of range: {0}")]
    Overflow(String),
}
