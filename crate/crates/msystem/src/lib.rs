//! The flag complex `m_p` of a surjection `p : S → T`.
//!
//! The degree `−n` part is spanned by strict flags
//! `ω > e_1 > … > e_{n−1} > e(p)` of equivalence relations on `S`, where
//! `e(p)` is the kernel of `p`. The differential raises degree by one and is
//! `d = Σ_{i=1}^{n−1} (−1)^{i+1} D_i`, where `D_i` deletes `e_i`. A bijection
//! contributes the single term `p` in degree `−1`.
//!
//! Disjoint unions are handled by [`shuffle_factorization`], a degree-zero
//! chain map from the tensor product of the factors' complexes into the
//! complex of the union, given by signed interleavings of flags.

mod complex;
mod shuffle;

pub use complex::{
    build_m_complex, flag_key, l_projection, lowest_cohomology_rank, lowest_degree, FlagTerm,
    LProjection, MComplex,
};
pub use shuffle::{enumerate_shuffles, shuffle_factorization, Shuffle, ShuffleFactorization};

use chainlab::ChainError;
use setcore::SetError;
use thiserror::Error;

/// Errors raised by m-complex constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MsysError {
    #[error("the map is not surjective")]
    NotSurjective,

    #[error("homology is not concentrated in degree {expected}: {found:?}")]
    NotConcentrated {
        expected: i64,
        found: std::collections::BTreeMap<i64, usize>,
    },

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error(transparent)]
    Set(#[from] SetError),

    #[error(transparent)]
    Chain(#[from] ChainError),
}
