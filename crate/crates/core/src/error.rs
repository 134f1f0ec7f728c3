use thiserror::Error;

/// Errors raised by the exact, combinatorial, Lie and numeric layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is too small (need N >= 3)")]
    ModulusTooSmall(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("matrix is not invertible mod {0} (det = {1})")]
    NotInvertible(u32, i64),
    #[error("the origin (0,0) cannot carry a divisor coefficient")]
    OriginInSupport,
    #[error("residue {0} must be nonzero mod {1}")]
    ZeroResidue(i64, u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("truncation degree {have} too small, need at least {need}")]
    TruncationTooSmall { have: usize, need: usize },
    #[error("truncation degree mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("series order {have} too small, need at least {need}")]
    SeriesOrderTooSmall { have: usize, need: usize },
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("numeric evaluation did not reach {0} bits within the iteration cap")]
    PrecisionUnattainable(u32),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
