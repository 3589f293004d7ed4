use thiserror::Error;

/// Errors raised when constructing domain values or evaluating outside a
/// function's domain.
///
/// Numeric payloads are stored as `f64` whatever scalar type produced them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector has norm {norm}, expected 1 within {tolerance}")]
    NotUnit { norm: f64, tolerance: f64 },

    #[error("zero or non-finite vector cannot be normalized")]
    DegenerateVector,

    #[error("theta = {0} outside [0, pi]")]
    ThetaOutOfRange(f64),

    #[error("observable scale must be nonzero (scale 0 is a multiple of the identity)")]
    ZeroScale,

    #[error("commuting observables: gamma = {gamma} must lie strictly inside (0, pi)")]
    CommutingObservables { gamma: f64 },

    #[error("invalid two-outcome distribution ({p1}, {p2})")]
    InvalidDistribution { p1: f64, p2: f64 },

    #[error("entropic index q = {0} must be positive")]
    InvalidIndex(f64),

    #[error("overlap c = {0} outside [1/sqrt(2), 1)")]
    OverlapOutOfRange(f64),

    #[error("maximum probability {0} outside [1/2, 1]")]
    MaxProbabilityOutOfRange(f64),

    #[error("entropic index q = {0} outside the region 0 < q <= 2")]
    IndexOutOfRegion(f64),

    #[error("dimension N = {0} unsupported, only N = 2 is implemented")]
    UnsupportedDimension(u32),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
