use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("region is empty")]
    Empty,
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown gate {0:?}")]
    UnknownGate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("coverage incomplete: reached volume {achieved} of 1 by depth {depth}")]
    IncompleteCoverage { achieved: String, depth: usize },
    #[error("point {point} not covered up to depth {depth}")]
    Uncovered { point: String, depth: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
