use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("cell ({row},{col}) is outside the diagram of {shape}")]
    OutOfDiagram { row: usize, col: usize, shape: String },
    #[error("{inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },
    #[error("vanishing denominator in b-ratio at cell ({row},{col})")]
    DenominatorZero { row: usize, col: usize },
    #[error("partition too large for expansion: |lambda| = {weight} exceeds {limit}")]
    SizeGuard { weight: usize, limit: usize },
    #[error("singular Vandermonde: two squared coordinates coincide")]
    SingularVandermonde,
    #[error("singular interpolation system: {0}")]
    SingularSystem(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("divergent series: {0}")]
    Divergent(String),
    #[error("infinite series cannot be summed exactly; give a truncation")]
    InexactInfiniteSum,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
