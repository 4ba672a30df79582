use thiserror::Error;

/// Errors raised by the Mellin module.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MellinError {
    /// The ambient dimension must be an even integer at least 2.
    #[error("dimension N = {0} must be even and at least 2")]
    InvalidDimension(u32),
    /// The requested point hits a zero of the integration-by-parts denominator.
    #[error("s = {re}{im:+}i is within {distance:e} of the excluded point s' = {excluded}")]
    PoleProximity {
        re: f64,
        im: f64,
        excluded: i64,
        distance: f64,
    },
    /// The requested integration-by-parts depth does not make the integral converge.
    #[error("depth {depth} is too small for Re s' = {re_exponent}")]
    DepthTooSmall { depth: usize, re_exponent: f64 },
    /// Unknown profile family name.
    #[error("unknown profile family `{0}` (expected bump, exponential or poly-bump)")]
    UnknownProfile(String),
    /// The scan window is empty or not ordered.
    #[error("scan window ({lo}, {hi}) is empty")]
    EmptyWindow { lo: f64, hi: f64 },
}
