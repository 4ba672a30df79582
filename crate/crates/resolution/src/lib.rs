//! The vector-space resolution complex on an interval `f ≥ e` of equivalence relations.
//!
//! Its basis consists of words `H = (f = e_1 u_12 e_2 … e_N = e)` on strict
//! flags, with each `u ∈ {p, δ}`; the degree is the number of `δ`s. The
//! differential is `d = Σ_k (−1)^{d_k} (A_k + B_k + C_k)`, where `d_k` counts
//! the `δ`s before position `k`, and
//!
//! * `A_k` turns `u_k = δ` into `p`;
//! * `B_k` merges `δ e_{k+1} δ` into `δ`, deleting `e_{k+1}`;
//! * `C_k` merges `δ e_{k+1} p` into `p`, deleting `e_{k+1}`.
//!
//! The crate also provides the word-length filtration, the associated graded
//! pieces compared with tensor powers of `V = (δ ↦ p)`, and the layers of the
//! filtration indexed by strictly separated flags of segments.

mod complex;
mod filtration;

pub use complex::{build_r_complex, PDWord, RComplex, Symbol};
pub use filtration::{
    enumerate_segments_zero, graded_piece_vs_tv, segments_filtration_r, segments_layers,
    v_complex, GradedPieceReport, SegmentsLayer, SegmentsZero,
};

use chainlab::ChainError;
use setcore::SetError;
use thiserror::Error;

/// Errors raised by resolution constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("{top} is not finer than {bottom}")]
    NotOrdered { top: String, bottom: String },

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error(transparent)]
    Set(#[from] SetError),

    #[error(transparent)]
    Chain(#[from] ChainError),
}
