//! Finite sets, set maps, equivalence relations and canonical iso-class keys.
//!
//! Equivalence relations are ordered by refinement with the finer relation
//! counted as the greater one: the discrete relation ω is the top element and
//! the indiscrete relation α the bottom. Every enumeration in this crate is
//! returned in a deterministic order so that downstream bases and matrices
//! are reproducible.

mod error;
mod finset;
mod iso;
mod map;
mod partition;
pub mod text;

pub use error::SetError;
pub use finset::FinSet;
pub use iso::{
    all_maps, all_permutations, canonical_key, injections, surjections, Diagram, IsoClassKey,
    MAX_INTERIOR,
};
pub use map::{MapKind, SetMap};
pub use partition::{enumerate_partitions, interval, quotient_map, strict_chains, Partition};

/// Default bound on the size of sets handed to exhaustive enumerations.
pub const DEFAULT_MAX_SET_SIZE: usize = 8;

/// Name of the environment variable overriding [`DEFAULT_MAX_SET_SIZE`].
pub const MAX_SET_SIZE_ENV: &str = "OPECALC_MAX_SET_SIZE";

/// The active bound on enumerated set sizes.
pub fn max_set_size() -> usize {
    std::env::var(MAX_SET_SIZE_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.min(u8::MAX as usize))
        .unwrap_or(DEFAULT_MAX_SET_SIZE)
}
