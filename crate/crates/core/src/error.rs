use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("evaluation of a Laurent polynomial with negative powers at t = 0")]
    EvalAtZero,
    #[error("invalid evaluation points: {0}")]
    InvalidPoints(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("unsupported basis: {0}")]
    UnsupportedBasis(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("operand of mixed parity: {0}")]
    MixedParity(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("evaluation error: {0}")]
    Eval(String),
}

pub type Result<T> = std::result::Result<T, Error>;
