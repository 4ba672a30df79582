//! Formal chain complexes over the exact rationals.
//!
//! A [`FormalComplex`] is a graded free module with a canonical basis of
//! [`BasisKey`]s in each degree and sparse differential matrices. The crate
//! checks `d² = 0` with a witness, computes homology ranks exactly by
//! fraction-free elimination, and forms tensor products with the Koszul sign
//! rule: moving an operator of degree `k` past an element of degree `m`
//! costs `(−1)^{km}`.

mod complex;
mod matrix;

pub use complex::{
    kunneth_prediction, tensor_complex, BasisKey, BettiTable, ChainMap, ChainMapReport,
    ChainMapWitness, ComplexBuilder, DSquaredReport, DSquaredWitness, FormalComplex, Orientation,
};
pub use matrix::{q, q_to_string, SparseMatrix, Q};

use thiserror::Error;

/// Errors raised while assembling or analysing complexes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("differential at degree {degree} has shape {found:?}, expected {expected:?}")]
    Shape {
        degree: i64,
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("basis key {key:?} is not a generator in degree {degree}")]
    UnknownKey { degree: i64, key: String },

    #[error("d² ≠ 0: d²({}) has coefficient {} on {}", .0.source, .0.coefficient, .0.target)]
    NotAComplex(Box<DSquaredWitness>),

    #[error("the selected span is not closed under d: {from} ↦ {to}")]
    NotClosed { from: String, to: String },

    #[error("complexes of different orientation cannot be combined")]
    OrientationMismatch,
}
