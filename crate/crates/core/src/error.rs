use thiserror::Error;

use crate::scalar::Mode;
use crate::semismall::Violation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arithmetic mode mismatch: expected {expected}, found {found}")]
    ModeMismatch { expected: Mode, found: Mode },

    #[error("bidegree ({p},{q}) is out of range for dimension {n}")]
    Bidegree { n: usize, p: usize, q: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian at entry ({row},{col})")]
    NotHermitian { row: usize, col: usize },

    #[error("matrix is not positive semidefinite (nef hypothesis violated)")]
    NotPositiveSemidefinite,

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("bidegree ({p},{q}) in dimension {n} needs {expected} factors, got {found}")]
    FactorCount {
        n: usize,
        p: usize,
        q: usize,
        expected: usize,
        found: usize,
    },

    #[error("integration needs bidegree ({n},{n}), got ({p},{q})")]
    NotTopDegree { n: usize, p: usize, q: usize },

    #[error("invalid stratification: {}", render_violations(.0))]
    InvalidStratification(Vec<Violation>),

    #[error("float verdict is indeterminate: {0}")]
    Indeterminate(String),

    #[error("{0}")]
    InvalidArgument(String),
}

fn render_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
