use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("subspace is the zero subspace; the restricted problem is vacuous")]
    VacuousSubspace,

    #[error("quadratic form is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("operator is not monotone: graph pairing has eigenvalue {min_eigenvalue:e}")]
    NotMonotone { min_eigenvalue: f64 },

    #[error("operator is not nonexpansive: spectral norm {norm} exceeds 1")]
    NotNonexpansive { norm: f64 },

    #[error("matrix is not skew-symmetric (max |A + A^T| = {defect:e})")]
    NotSkew { defect: f64 },

    #[error("relation is not single-valued with full domain")]
    NotAMatrix,

    #[error(
        "methods disagree on {property}: {detail}; rerun with an adjusted tolerance"
    )]
    MethodDisagreement {
        property: &'static str,
        detail: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
