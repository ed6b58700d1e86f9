use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {}x{}, got {}x{}", expected.0, expected.1, actual.0, actual.1)]
    DimensionMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular (pivot {pivot} below threshold)")]
    SingularMatrix { pivot: usize },
    #[error("numerical failure: {0}")]
    NumericalFailure(&'static str),
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("polynomial is a nonzero constant and has no roots")]
    DegreeZero,
    #[error("eigenvalues are not distinct (min gap {min_gap:e}, threshold {threshold:e})")]
    NotDistinctEigenvalues { min_gap: f64, threshold: f64 },
    #[error("matrix does not commute with Q (relative commutator {commutator:e})")]
    NotMember { commutator: f64 },
    #[error("weight k_{index} is zero")]
    ZeroWeight { index: usize },
    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
    #[error("solution count {total} exceeds enumeration cap {cap}")]
    EnumerationCapExceeded { total: u128, cap: usize },
}

impl Error {
    /// True for errors caused by the numerics rather than by the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NumericalFailure(_) | Error::SingularMatrix { .. })
    }
}
