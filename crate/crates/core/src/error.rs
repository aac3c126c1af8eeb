use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("Gram matrix is not even (odd diagonal entry at {0})")]
    NotEven(usize),
    #[error("lattice is not positive definite")]
    NotPositiveDefinite,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("{0} is handled by the lattice tables, not by the Wall algorithm")]
    Routed(String),
    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded { what: &'static str, needed: u64, budget: u64 },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("sublattice is not contained in the ambient lattice")]
    NotContained,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("internal verification failed: {0}")]
    Verification(String),
}
