use bodies::BodyError;
use setcore::SetError;
use thiserror::Error;

/// Errors raised by the symmetrization operators and their checks.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymmError {
    #[error("the ambient map must be surjective")]
    NotSurjective,

    #[error("({0}) is not super-surjective")]
    NotSupersurjective(String),

    #[error("not a one-step tower: {0}")]
    NotOneStep(String),

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("the operator produced an invalid ladder: {0}")]
    InvalidLadder(String),

    #[error("size {size} exceeds the enumeration bound {bound}")]
    BoundExceeded { size: usize, bound: usize },

    #[error(transparent)]
    Body(#[from] BodyError),

    #[error(transparent)]
    Set(#[from] SetError),
}
