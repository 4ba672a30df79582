//! The transform `Z(s)`, its continuation, finite parts and pole scans.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::MellinError;
use crate::profile::{RadialProfile, Support};
use crate::quadrature::{tanh_sinh, DEFAULT_TOLERANCE};

/// Radius of the sampling circle used for Laurent extraction.
pub const CIRCLE_RADIUS: f64 = 1e-2;

/// Number of equally spaced samples on the circle.
pub const CIRCLE_POINTS: usize = 16;

/// Highest nonnegative Laurent degree kept when measuring the fit residual.
const FIT_DEGREE: i32 = 6;

/// Relative threshold above which a Laurent coefficient counts as nonzero.
const DETECTION_THRESHOLD: f64 = 1e-7;

/// Relative threshold for the fit residual and the order-two coefficient.
const FIT_TOLERANCE: f64 = 1e-6;

/// Distance below which `s'` is treated as sitting on an excluded integer.
const EXCLUSION_RADIUS: f64 = 1e-12;

/// Target for the neglected tail of a decaying profile.
const TAIL_TARGET: f64 = 1e-16;

/// How a value of `Z` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "method")]
pub enum Method {
    /// Quadrature of the defining integral.
    Direct,
    /// Quadrature after `depth` integrations by parts.
    Ibp { depth: usize },
}

/// A value of `Z(s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MellinValue {
    /// `Z(s)`.
    pub value: Complex64,
    /// Bound on the quadrature error and the truncated tail, scaled by the
    /// integration-by-parts prefactor.
    pub error_estimate: f64,
    /// Evaluation method.
    #[serde(flatten)]
    pub method: Method,
    /// Whether the quadrature met its tolerance.
    pub converged: bool,
}

/// Laurent data of `Z` around a point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaurentData {
    /// Expansion point.
    pub center: f64,
    /// Sampling radius.
    pub radius: f64,
    /// Coefficients `c_k` for `k = −2..=FIT_DEGREE`, indexed from `−2`.
    pub coefficients: Vec<Complex64>,
    /// Largest deviation between the samples and the truncated Laurent
    /// polynomial with degrees `−1..=FIT_DEGREE`.
    pub fit_residual: f64,
    /// Largest quadrature error estimate among the samples.
    pub error_estimate: f64,
}

impl LaurentData {
    /// The coefficient `c_k` for `−2 ≤ k ≤ FIT_DEGREE`.
    pub fn coefficient(&self, k: i32) -> Complex64 {
        self.coefficients[(k + 2) as usize]
    }

    /// Size against which coefficient thresholds are measured.
    pub fn scale(&self) -> f64 {
        1f64.max(self.coefficient(0).norm())
            .max(self.coefficient(-1).norm())
    }
}

/// The finite part `U_M` together with the pole coefficient at `s = −M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinitePart {
    /// The order `M`.
    pub m: u32,
    /// Ambient dimension.
    pub n: u32,
    /// `U_M`, the constant Laurent coefficient.
    pub value: f64,
    /// Coefficient of `1/(s+M)`; zero when `−M` is a regular point.
    pub pole_coefficient: f64,
    /// Magnitude of the coefficient of `1/(s+M)²`.
    pub order_two_coefficient: f64,
    /// Deviation of the samples from the fitted Laurent polynomial.
    pub fit_residual: f64,
    /// Set when the fit residual or the order-two coefficient exceeds tolerance.
    pub flagged: bool,
}

/// Residual of the identity `U_M(q^M h) = Z(h, 0)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QmReport {
    /// The order `M`.
    pub m: u32,
    /// Ambient dimension.
    pub n: u32,
    /// Finite part of `r^{2M}·h` at `s = −M`.
    pub finite_part: FinitePart,
    /// `Z(h, 0)`.
    pub reference: f64,
    /// Absolute difference of the two sides.
    pub residual: f64,
}

/// A singular point found by [`pole_scan`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pole {
    /// Location on the real axis.
    pub location: f64,
    /// Fitted order (1 or 2).
    pub order: u32,
    /// The coefficient of `1/(s − location)`.
    pub coefficient: f64,
    /// Whether the location has the form `−(N+k)/2` with `k ≥ 0`.
    pub admissible: bool,
}

fn check_dimension(n: u32) -> Result<(), MellinError> {
    if n < 2 || !n.is_multiple_of(2) {
        Err(MellinError::InvalidDimension(n))
    } else {
        Ok(())
    }
}

fn shifted_exponent(s: Complex64, n: u32) -> Complex64 {
    s * 2.0 + (n as f64 - 1.0)
}

/// Smallest depth for which `Re s' + depth ≥ 0`.
pub fn minimal_depth(s: Complex64, n: u32) -> usize {
    let re = shifted_exponent(s, n).re;
    if re >= 0.0 {
        0
    } else {
        (-re).ceil() as usize
    }
}

/// `Z(h, s)` with the depth chosen by [`minimal_depth`].
pub fn mellin_z(h: &RadialProfile, s: Complex64, n: u32) -> Result<MellinValue, MellinError> {
    mellin_z_with_depth(h, s, n, minimal_depth(s, n))
}

/// `Z(h, s)` after exactly `depth` integrations by parts:
/// `Z = (−1)^P / ((s'+1)⋯(s'+P)) · ∫₀^∞ r^{s'+P} h^{(P)}(r) dr` with
/// `s' = 2s + N − 1`. Requires `Re s' + P > −1`.
pub fn mellin_z_with_depth(
    h: &RadialProfile,
    s: Complex64,
    n: u32,
    depth: usize,
) -> Result<MellinValue, MellinError> {
    check_dimension(n)?;
    let sp = shifted_exponent(s, n);
    if sp.re + depth as f64 <= -1.0 {
        return Err(MellinError::DepthTooSmall { depth, re_exponent: sp.re });
    }
    let mut denominator = Complex64::new(1.0, 0.0);
    for j in 1..=depth {
        let factor = sp + j as f64;
        if factor.norm() < EXCLUSION_RADIUS {
            return Err(MellinError::PoleProximity {
                re: s.re,
                im: s.im,
                excluded: -(j as i64),
                distance: factor.norm(),
            });
        }
        denominator *= factor;
    }
    let sign = if depth.is_multiple_of(2) { 1.0 } else { -1.0 };
    let prefactor = Complex64::new(sign, 0.0) / denominator;
    let exponent = sp + depth as f64;

    let (upper, tail) = match h.support() {
        Support::Compact { radius } => (radius, 0.0),
        Support::Decaying { rate } => truncation(h, exponent.re, depth, rate),
    };
    let integrand = |r: f64| -> Complex64 {
        let d = h.derivative(depth, r);
        if d == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        (exponent * r.ln()).exp() * d
    };
    let quad = tanh_sinh(integrand, upper, DEFAULT_TOLERANCE);
    let method = if depth == 0 { Method::Direct } else { Method::Ibp { depth } };
    Ok(MellinValue {
        value: prefactor * quad.value,
        error_estimate: prefactor.norm() * (quad.error_estimate + tail),
        method,
        converged: quad.converged,
    })
}

/// Truncation point `L` and the bound `2^{P+1}·|scale|·L^a·e^{−rate·L}` on the
/// neglected tail, where `a` adds the polynomial degree of the profile to the
/// real part of the exponent.
fn truncation(h: &RadialProfile, re_exponent: f64, depth: usize, rate: f64) -> (f64, f64) {
    let a = (re_exponent + h.polynomial_degree() as f64).max(0.0);
    let factor = 2f64.powi(depth as i32 + 1) * h.scale().abs();
    let mut l = 30.0f64.max(2.0 * a / rate);
    loop {
        let bound = factor * l.powf(a) * (-rate * l).exp();
        if bound < TAIL_TARGET || l > 1e4 {
            return (l, bound);
        }
        l += 5.0;
    }
}

/// Laurent coefficients of `Z(h, ·)` around the real point `center`, from
/// [`CIRCLE_POINTS`] samples on the circle of radius `radius`.
pub fn laurent_coefficients(
    h: &RadialProfile,
    n: u32,
    center: f64,
    radius: f64,
) -> Result<LaurentData, MellinError> {
    check_dimension(n)?;
    let angles: Vec<f64> = (0..CIRCLE_POINTS)
        .map(|j| 2.0 * PI * j as f64 / CIRCLE_POINTS as f64)
        .collect();
    let samples: Vec<MellinValue> = angles
        .par_iter()
        .map(|&theta| mellin_z(h, Complex64::new(center, 0.0) + Complex64::from_polar(radius, theta), n))
        .collect::<Result<_, _>>()?;
    let count = CIRCLE_POINTS as f64;
    let coefficients: Vec<Complex64> = (-2..=FIT_DEGREE)
        .map(|k| {
            let sum: Complex64 = samples
                .iter()
                .zip(&angles)
                .map(|(z, &theta)| z.value * Complex64::from_polar(radius.powi(-k), -(k as f64) * theta))
                .sum();
            sum / count
        })
        .collect();
    let fit_residual = samples
        .iter()
        .zip(&angles)
        .map(|(z, &theta)| {
            let model: Complex64 = (-1..=FIT_DEGREE)
                .map(|k| {
                    coefficients[(k + 2) as usize]
                        * Complex64::from_polar(radius.powi(k), k as f64 * theta)
                })
                .sum();
            (z.value - model).norm()
        })
        .fold(0.0, f64::max);
    let error_estimate = samples.iter().map(|z| z.error_estimate).fold(0.0, f64::max);
    Ok(LaurentData { center, radius, coefficients, fit_residual, error_estimate })
}

/// The finite part `U_M = res_{s=−M} Z(s)/(s+M)` and the pole coefficient at
/// `s = −M`.
pub fn finite_part(h: &RadialProfile, m: u32, n: u32) -> Result<FinitePart, MellinError> {
    let data = laurent_coefficients(h, n, -(m as f64), CIRCLE_RADIUS)?;
    let scale = data.scale();
    let order_two = data.coefficient(-2).norm();
    Ok(FinitePart {
        m,
        n,
        value: data.coefficient(0).re,
        pole_coefficient: data.coefficient(-1).re,
        order_two_coefficient: order_two,
        fit_residual: data.fit_residual,
        flagged: data.fit_residual > FIT_TOLERANCE * scale || order_two > FIT_TOLERANCE * scale,
    })
}

/// Compares the finite part of `q^M·h` at `s = −M` with `Z(h, 0)`.
pub fn verify_qm_identity(h: &RadialProfile, m: u32, n: u32) -> Result<QmReport, MellinError> {
    let fp = finite_part(&h.times_q_power(m), m, n)?;
    let reference = mellin_z(h, Complex64::new(0.0, 0.0), n)?.value.re;
    let residual = (fp.value - reference).abs();
    Ok(QmReport { m, n, finite_part: fp, reference, residual })
}

/// Scans the open window `(lo, hi)` for poles of `Z(h, ·)`.
///
/// Every admissible point `−(N+k)/2` in the window is tested, together with
/// the quarter-integer probes `(2j+1)/4` between them; an infinite upper end
/// is probed up to two units above `max(lo, −N/2)`. A point is reported when
/// its order-two or order-one Laurent coefficient exceeds the detection
/// threshold relative to the local scale.
pub fn pole_scan(h: &RadialProfile, n: u32, lo: f64, hi: f64) -> Result<Vec<Pole>, MellinError> {
    check_dimension(n)?;
    if !lo.is_finite() || lo.is_nan() || hi.is_nan() || hi <= lo {
        return Err(MellinError::EmptyWindow { lo, hi });
    }
    let threshold_n = -(n as f64) / 2.0;
    let probe_top = if hi.is_finite() { hi } else { lo.max(threshold_n) + 2.0 };
    let mut points = Vec::new();
    let mut k = 0u32;
    loop {
        let x = -((n + k) as f64) / 2.0;
        if x <= lo {
            break;
        }
        if x < hi {
            points.push(x);
        }
        k += 1;
    }
    let mut j = (4.0 * lo).floor() as i64;
    while (j as f64) / 4.0 < probe_top {
        if j % 2 != 0 {
            let x = j as f64 / 4.0;
            if x > lo && x < hi {
                points.push(x);
            }
        }
        j += 1;
    }
    points.sort_by(|a, b| b.partial_cmp(a).expect("finite scan points"));
    let mut poles = Vec::new();
    for x in points {
        let data = laurent_coefficients(h, n, x, CIRCLE_RADIUS)?;
        let threshold = DETECTION_THRESHOLD * 1f64.max(data.coefficient(0).norm());
        let order = if data.coefficient(-2).norm() > threshold {
            2
        } else if data.coefficient(-1).norm() > threshold {
            1
        } else {
            continue;
        };
        let doubled = -2.0 * x - n as f64;
        let admissible = doubled >= -1e-9 && (doubled - doubled.round()).abs() < 1e-9;
        poles.push(Pole {
            location: x,
            order,
            coefficient: data.coefficient(-1).re,
            admissible,
        });
    }
    Ok(poles)
}
