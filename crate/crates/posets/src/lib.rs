//! Zebra posets and flags of segments.
//!
//! A zebra element on an interval `f ≥ e` of equivalence relations is a
//! strict flag `f = e_1 > … > e_n = e` whose steps are colored `i` or `I`.
//! A segments element is a flag of strict segments `[a_1,b_1], [a_2,b_2], …`
//! with `b_k ≥ a_{k+1}`. The map [`nu`] keeps the `I`-colored steps, and the
//! fibers of `nu` carry the least elements [`least_above`] and the initial
//! objects [`initial_object`].

mod index;
mod segments;
mod zebra;

pub use index::{IntervalIndex, PosetReport};
pub use segments::{enumerate_segments, segments_leq, SegmentsElement};
pub use zebra::{enumerate_zebra, initial_object, least_above, nu, zebra_leq, Color, ZebraElement};

use setcore::SetError;
use thiserror::Error;

/// Errors raised by poset constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("elements live on different intervals")]
    IntervalMismatch,

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("the fiber of {0} is empty")]
    EmptyFiber(String),

    #[error("construction and brute force disagree: {0}")]
    Discrepancy(String),

    #[error(transparent)]
    Set(#[from] SetError),
}
