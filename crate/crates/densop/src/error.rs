//! Error type shared by all engine modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("trace must be 1 (got {trace})")]
    InvalidTrace { trace: f64 },

    #[error("operator is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("operator is not a projector (idempotency deviation {deviation:.3e})")]
    NotProjector { deviation: f64 },

    #[error("direction must be a unit vector (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("cannot condition on a branch of probability {probability:.3e}")]
    ZeroProbabilityBranch { probability: f64 },

    #[error("function of observable undefined at eigenvalue {eigenvalue}")]
    UndefinedFunctionValue { eigenvalue: f64 },

    #[error("layout ({dim_a}, {dim_b}) does not match total dimension {total}")]
    LayoutMismatch {
        dim_a: usize,
        dim_b: usize,
        total: usize,
    },

    #[error("correlation {value} is outside [-1, 1]")]
    CorrelationOutOfRange { value: f64 },

    #[error("invalid evolution parameters: {0}")]
    InvalidEvolution(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
