use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: ‖A − A*‖_F = {residual:.3e}")]
    NotHermitian { residual: f64 },

    #[error("matrix is not normal: ‖TT* − T*T‖ = {residual:.3e}")]
    NotNormal { residual: f64 },

    #[error("operator is not positive semidefinite: smallest eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("iteration did not converge after {iterations} steps")]
    NoConvergence { iterations: usize },

    #[error("invalid Schatten exponent p = {0} (need p ≥ 1)")]
    InvalidP(f64),

    #[error("invalid epsilon {value}: must lie in ({lower}, {upper})")]
    InvalidEpsilon { value: f64, lower: f64, upper: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector is not a unit vector: ‖x‖ = {norm}")]
    NotUnit { norm: f64 },

    #[error("non-finite entry in input")]
    NonFinite,

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("almost-attainment precondition violated: measured {measured:.12}, threshold {threshold:.12}")]
    AlmostAttainmentViolated { measured: f64, threshold: f64 },

    #[error("{quantity} must be 1 within {tolerance:.1e}, measured {measured:.12}")]
    NotNormalized {
        quantity: &'static str,
        measured: f64,
        tolerance: f64,
    },

    #[error("precondition violated: {what} (residual {residual:.3e})")]
    PreconditionViolated { what: String, residual: f64 },

    #[error("spectral projection annihilates the starting point")]
    EmptyProjection,

    #[error("operator does not belong to class {class}")]
    ClassMismatch { class: String },

    #[error("numerical-radius iteration stalled after {steps} steps: {reason}")]
    IterationStalled { steps: usize, reason: String },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("malformed JSON: {0}")]
    Json(String),
}

impl Error {
    /// Stable machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "not-hermitian",
            Error::NotNormal { .. } => "not-normal",
            Error::NotPositive { .. } => "not-positive",
            Error::NoConvergence { .. } => "no-convergence",
            Error::InvalidP(_) => "invalid-p",
            Error::InvalidEpsilon { .. } => "invalid-epsilon",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NotUnit { .. } => "not-unit",
            Error::NonFinite => "non-finite",
            Error::InvalidShape(_) => "invalid-shape",
            Error::AlmostAttainmentViolated { .. } => "almost-attainment-violated",
            Error::NotNormalized { .. } => "not-normalized",
            Error::PreconditionViolated { .. } => "precondition-violated",
            Error::EmptyProjection => "empty-projection",
            Error::ClassMismatch { .. } => "class-mismatch",
            Error::IterationStalled { .. } => "iteration-stalled",
            Error::Internal(_) => "internal",
            Error::Json(_) => "json",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
