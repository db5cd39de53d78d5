use core::fmt;

use crate::cone::ConeViolation;

/// Errors shared by the pointwise operations.
#[derive(Debug, Clone, PartialEq)]
pub enum CoreError {
    /// The reference metric is not positive definite (or too close to
    /// degenerate for the derivative formulas).
    NonPositiveMetric { min_eigenvalue: f64 },
    /// Eigenvalues are outside (or too close to the boundary of) the
    /// operator's admissibility cone.
    NotAdmissible {
        margin: f64,
        violation: Option<ConeViolation>,
    },
    /// Symmetric-function index out of `0..=n`.
    IndexOutOfRange { k: usize, n: usize },
    /// Operation needs dimension >= 2.
    DimensionTooSmall { dim: usize },
    /// Argument outside the operator's value range `f(Gamma)`.
    OutOfRange { value: f64 },
    /// Matrix/vector dimensions disagree.
    DimensionMismatch { expected: usize, got: usize },
    /// Input matrix is not Hermitian within tolerance.
    NotHermitian { deviation: f64 },
    /// Invalid operator parameters (k, l out of the allowed ranges).
    InvalidSpec,
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::NonPositiveMetric { min_eigenvalue } => {
                write!(f, "metric is not positive definite (min eigenvalue {min_eigenvalue:e})")
            }
            CoreError::NotAdmissible { margin, violation } => {
                write!(f, "eigenvalues not admissible (cone margin {margin:e}")?;
                if let Some(v) = violation {
                    write!(f, ", {v}")?;
                }
                write!(f, ")")
            }
            CoreError::IndexOutOfRange { k, n } => {
                write!(f, "symmetric function index {k} out of range for dimension {n}")
            }
            CoreError::DimensionTooSmall { dim } => {
                write!(f, "dimension {dim} too small (need n >= 2)")
            }
            CoreError::OutOfRange { value } => {
                write!(f, "value {value:e} outside the operator range")
            }
            CoreError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            CoreError::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (max deviation {deviation:e})")
            }
            CoreError::InvalidSpec => write!(f, "invalid operator parameters"),
        }
    }
}
