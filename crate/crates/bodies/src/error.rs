use setcore::SetError;
use thiserror::Error;

/// Errors raised by the bodies engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum BodyError {
    /// The two towers live over different ambient maps.
    #[error("towers live over different ambient maps")]
    AmbientMismatch,
    /// The tower data violates an invariant.
    #[error("malformed tower: {0}")]
    InvalidTower(String),
    /// The square data violates an invariant.
    #[error("malformed square: {0}")]
    InvalidSquare(String),
    /// The morphisms cannot be composed.
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    /// A composite failed to reduce to a basis ladder.
    #[error("composition produced an invalid ladder: {0}")]
    AnomalousComposition(String),
    /// The morphism element is not homogeneous.
    #[error("morphism element mixes degrees {0} and {1}")]
    Inhomogeneous(usize, usize),
    /// A size bound was exceeded.
    #[error("size {size} exceeds the bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    /// Error from the set layer.
    #[error(transparent)]
    Set(#[from] SetError),
}
