use thiserror::Error;

/// Errors raised by finite-set constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error("set size {size} exceeds the configured bound {bound}")]
    SizeLimit { size: usize, bound: usize },

    #[error("carrier mismatch: sizes {left} and {right}")]
    CarrierMismatch { left: usize, right: usize },

    #[error("image {image} of element {element} is out of range for a target of size {target}")]
    ImageOutOfRange {
        element: usize,
        image: usize,
        target: usize,
    },

    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("maps are not composable: inner target has size {inner_target}, outer source has size {outer_source}")]
    NotComposable {
        inner_target: usize,
        outer_source: usize,
    },

    #[error("malformed tower: {0}")]
    MalformedTower(String),

    #[error("parse error: {0}")]
    Parse(String),
}
