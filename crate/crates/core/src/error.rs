use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },

    #[error("dyad ({u}, {v}) is not valid on {n} vertices")]
    InvalidDyad { u: usize, v: usize, n: usize },

    #[error("dyad ({u}, {v}) listed more than once")]
    DuplicateDyad { u: usize, v: usize },

    #[error("size mismatch: expected {expected} vertices, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("shell distribution {counts:?} is not realizable: {reason}")]
    Unrealizable { counts: Vec<usize>, reason: String },

    #[error("estimator failure: {0}")]
    Estimator(String),

    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
