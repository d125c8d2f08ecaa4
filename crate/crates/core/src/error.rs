use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown catalog algebra `{0}`")]
    UnknownCatalog(String),
    #[error("algebra has not been validated (Jacobi identity unchecked)")]
    Unvalidated,
    #[error("Jacobi identity fails at basis triple ({0}, {1}, {2})")]
    JacobiFails(usize, usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operator order must be positive")]
    ZeroOrder,
    #[error("exponential of an operator with an order-0 term does not terminate")]
    NonNilpotentExponent,
    #[error("truncation order {order} is too small for a polynomial of degree {degree}")]
    TruncationTooSmall { order: usize, degree: usize },
    #[error("divergence of a degree-0 polyvector is undefined")]
    DegreeZeroPolyvector,
    #[error("points must be distinct and lie in the open upper half-plane")]
    BadConfiguration,
    #[error("invalid sampler parameters: {0}")]
    InvalidSampler(String),
}

pub type Result<T> = std::result::Result<T, Error>;
