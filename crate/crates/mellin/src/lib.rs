//! Numerical regularization of `1/q^M` on the two-point configuration.
//!
//! A radial profile `h(r)` enters through the Mellin-type integral
//! `Z(s) = ∫₀^∞ r^{2s+N−1} h(r) dr`. For `Re(2s+N−1) < 0` the integral is
//! continued by repeated integration by parts, which leaves simple poles at
//! `s = −(N+k)/2`. The finite part `U_M` is the constant Laurent coefficient of
//! `Z` at `s = −M`, extracted from samples on a small circle.
//!
//! All computations take place in the radial coordinate `z = y₁ − y₂`, so
//! invariance under simultaneous translation of both points holds identically.

mod error;
mod jet;
mod profile;
mod quadrature;
mod transform;

pub use error::MellinError;
pub use jet::Jet;
pub use profile::{ProfileFamily, RadialProfile, Support};
pub use quadrature::{tanh_sinh, QuadratureResult, DEFAULT_TOLERANCE};
pub use transform::{
    finite_part, laurent_coefficients, mellin_z, mellin_z_with_depth, minimal_depth, pole_scan,
    verify_qm_identity, FinitePart, LaurentData, MellinValue, Method, Pole, QmReport,
    CIRCLE_POINTS, CIRCLE_RADIUS,
};
