use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which property of a density matrix failed validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityViolation {
    NonFinite,
    NotHermitian { deviation: f64 },
    Trace { trace: f64 },
    NegativeEigenvalue { eigenvalue: f64 },
}

impl fmt::Display for DensityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityViolation::NonFinite => write!(f, "non-finite entry"),
            DensityViolation::NotHermitian { deviation } => {
                write!(f, "not Hermitian (deviation {deviation:e})")
            }
            DensityViolation::Trace { trace } => write!(f, "trace {trace} differs from 1"),
            DensityViolation::NegativeEigenvalue { eigenvalue } => {
                write!(f, "negative eigenvalue {eigenvalue:e}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(DensityViolation),

    #[error("invalid model parameter `{name}`: {reason}")]
    InvalidParams { name: &'static str, reason: String },

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("numerical defect: {0}")]
    NumericalDefect(String),
}
