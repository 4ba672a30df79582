//! Smooth radial test profiles with analytic derivatives.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::MellinError;
use crate::jet::Jet;
use crate::quadrature::{tanh_sinh, DEFAULT_TOLERANCE};

/// Below this exponent the bump factor `exp(−1/(1−r²))` underflows to zero.
const UNDERFLOW_EXPONENT: f64 = -700.0;

/// Shape of the unweighted profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileFamily {
    /// `exp(−1/(1−r²))` on `[0, 1)`, zero beyond.
    Bump,
    /// `e^{−r}` on `[0, ∞)`.
    Exponential,
    /// `(1 + r)·exp(−1/(1−r²))`, a polynomial multiple of the bump.
    PolyBump,
}

impl fmt::Display for ProfileFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProfileFamily::Bump => "bump",
            ProfileFamily::Exponential => "exponential",
            ProfileFamily::PolyBump => "poly-bump",
        })
    }
}

impl FromStr for ProfileFamily {
    type Err = MellinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bump" => Ok(ProfileFamily::Bump),
            "exponential" | "exp" => Ok(ProfileFamily::Exponential),
            "poly-bump" | "polynomial-bump" => Ok(ProfileFamily::PolyBump),
            other => Err(MellinError::UnknownProfile(other.to_string())),
        }
    }
}

/// Where the profile lives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Support {
    /// Supported in `[0, radius]`.
    Compact { radius: f64 },
    /// Bounded by `C·r^k·e^{−rate·r}` for large `r`.
    Decaying { rate: f64 },
}

/// The profile `scale · r^{2·weight} · base(r)` for a base family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    family: ProfileFamily,
    scale: f64,
    weight: u32,
}

impl RadialProfile {
    /// The unweighted, unscaled member of `family`.
    pub fn new(family: ProfileFamily) -> Self {
        Self { family, scale: 1.0, weight: 0 }
    }

    /// `exp(−1/(1−r²))`.
    pub fn bump() -> Self {
        Self::new(ProfileFamily::Bump)
    }

    /// `e^{−r}`.
    pub fn exponential() -> Self {
        Self::new(ProfileFamily::Exponential)
    }

    /// `(1 + r)·exp(−1/(1−r²))`.
    pub fn poly_bump() -> Self {
        Self::new(ProfileFamily::PolyBump)
    }

    /// The bump rescaled so that `∫₀^∞ r³ h(r) dr = 1`.
    pub fn normalized_bump() -> Self {
        let bump = Self::bump();
        let moment = tanh_sinh(|r| (r.powi(3) * bump.value(r)).into(), 1.0, DEFAULT_TOLERANCE)
            .value
            .re;
        bump.scaled(1.0 / moment)
    }

    /// Multiplies the profile by a constant.
    pub fn scaled(self, c: f64) -> Self {
        Self { scale: self.scale * c, ..self }
    }

    /// Multiplies the profile by `r^{2m}`, the radial form of `q^m`.
    pub fn times_q_power(self, m: u32) -> Self {
        Self { weight: self.weight + m, ..self }
    }

    /// Base family.
    pub fn family(&self) -> ProfileFamily {
        self.family
    }

    /// Constant factor.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Power `m` of the factor `r^{2m}`.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Support descriptor.
    pub fn support(&self) -> Support {
        match self.family {
            ProfileFamily::Bump | ProfileFamily::PolyBump => Support::Compact { radius: 1.0 },
            ProfileFamily::Exponential => Support::Decaying { rate: 1.0 },
        }
    }

    /// Degree of the polynomial prefactor, used in tail bounds.
    pub fn polynomial_degree(&self) -> u32 {
        let base = match self.family {
            ProfileFamily::PolyBump => 1,
            _ => 0,
        };
        base + 2 * self.weight
    }

    /// Value `h(r)`.
    pub fn value(&self, r: f64) -> f64 {
        self.jet(r, 0).coeffs()[0]
    }

    /// The derivative `h^{(k)}(r)`.
    pub fn derivative(&self, k: usize, r: f64) -> f64 {
        self.jet(r, k).derivative(k)
    }

    /// Taylor expansion of `h` at `r` to the given order.
    pub fn jet(&self, r: f64, order: usize) -> Jet {
        let x = Jet::variable(r, order);
        let base = match self.family {
            ProfileFamily::Exponential => x.scale(-1.0).exp(),
            ProfileFamily::Bump => bump_jet(r, order),
            ProfileFamily::PolyBump => {
                let one_plus = &Jet::constant(1.0, order) + &x;
                &one_plus * &bump_jet(r, order)
            }
        };
        let weighted = if self.weight == 0 {
            base
        } else {
            &x.powi(2 * self.weight) * &base
        };
        weighted.scale(self.scale)
    }
}

impl fmt::Display for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if self.weight > 0 {
            write!(f, "·r^{}", 2 * self.weight)?;
        }
        if self.scale != 1.0 {
            write!(f, "·{}", self.scale)?;
        }
        Ok(())
    }
}

fn bump_jet(r: f64, order: usize) -> Jet {
    if r.abs() >= 1.0 {
        return Jet::constant(0.0, order);
    }
    let x = Jet::variable(r, order);
    let one_minus_sq = &Jet::constant(1.0, order) + &(&x * &x).scale(-1.0);
    let exponent = one_minus_sq.recip().scale(-1.0);
    if exponent.coeffs()[0] < UNDERFLOW_EXPONENT {
        return Jet::constant(0.0, order);
    }
    exponent.exp()
}
