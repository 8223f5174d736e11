use thiserror::Error;

/// Errors surfaced by the matrix kernel and the inequality checks.
#[derive(Debug, Clone, Error)]
pub enum OpIneqError {
    #[error("input matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { asymmetry: f64, tolerance: f64 },

    #[error("matrix is not positive definite: smallest eigenvalue {min_eigenvalue:.6e}")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("scalar function undefined at {value:.6e} (required domain: {domain})")]
    DomainViolation { value: f64, domain: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("eigenvalue iteration failed to converge for a {dim}x{dim} matrix")]
    ConvergenceFailure { dim: usize },

    #[error("Ky Fan index k={k} exceeds dimension {dim}")]
    KExceedsDim { k: usize, dim: usize },

    #[error("columns do not form an isometry: deviation {deviation:.3e}")]
    NotIsometry { deviation: f64 },

    #[error("overflow guard tripped: {what} = {value:.3e} exceeds {limit:.3e}")]
    Overflow { what: String, value: f64, limit: f64 },

    #[error("unknown check id `{0}`")]
    UnknownCheckId(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("i/o failure: {0}")]
    IoFailure(String),
}

pub type Result<T> = std::result::Result<T, OpIneqError>;
