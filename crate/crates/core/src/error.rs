use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symmetric: entry ({row}, {col}) differs from its transpose by {gap:e}")]
    NotSymmetric { row: usize, col: usize, gap: f64 },

    #[error("matrix is not positive definite: pivot {pivot:e} at step {step} is below threshold {threshold:e}")]
    NotPositiveDefinite {
        step: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} outside supported range {min}..={max}")]
    DimensionOutOfRange { dim: usize, min: usize, max: usize },

    #[error("shape matrix is singular")]
    SingularShape,

    #[error("matrix is not a rotation (orthogonal with determinant +1)")]
    NotARotation,

    #[error("radius {index} is not strictly positive ({value})")]
    NonpositiveRadius { index: usize, value: f64 },

    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },

    #[error("insufficient samples: expected count per bin is {expected_per_bin:.3}, need at least {minimum}")]
    InsufficientSamples { expected_per_bin: f64, minimum: f64 },

    #[error("point {index} pulls back to radius {radius} outside the unit ball")]
    PointOutsideEllipsoid { index: usize, radius: f64 },

    #[error("unsupported significance level {0} (expected 0.01 or 0.001)")]
    UnsupportedAlpha(f64),

    #[error("point is not in the closed unit ball (norm {0})")]
    NotInUnitBall(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid ellipsoid spec: {0}")]
    InvalidSpec(String),
}
