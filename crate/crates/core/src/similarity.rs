//! Similarity variable, the shape function φ and the compact coordinate.
//!
//! The similarity variable is ξ = z/r. Every closed-form profile in the crate
//! is built from the shape function φ(ξ) = ξ√(1+ξ²) − ξ², which vanishes at
//! the plane, increases monotonically and tends to 1/2 along the vortex line.
//! The compact coordinate x = ξ/√(1+ξ²) maps the half line onto [0, 1).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// φ(ξ) = ξ√(1+ξ²) − ξ².
///
/// For ξ ≥ 0 the two terms nearly cancel once ξ is large, so the value is
/// computed as ξ/(√(1+ξ²) + ξ). For ξ < 0 both terms have the same sign and
/// the direct product ξ(√(1+ξ²) − ξ) is exact to rounding.
pub fn phi(xi: f64) -> f64 {
    let s = xi.hypot(1.0);
    if xi >= 0.0 {
        xi / (s + xi)
    } else {
        xi * (s - xi)
    }
}

/// φ′(ξ) = (1 + 2ξ²)/√(1+ξ²) − 2ξ = (√(1+ξ²) − ξ)²/√(1+ξ²).
///
/// Strictly positive for every finite ξ.
pub fn phi_prime(xi: f64) -> f64 {
    let s = xi.hypot(1.0);
    if xi >= 0.0 {
        let d = s + xi;
        1.0 / (s * d * d)
    } else {
        let d = s - xi;
        d * d / s
    }
}

/// φ″(ξ) = −(√(1+ξ²) − ξ)² (2√(1+ξ²) + ξ) / (1+ξ²)^{3/2}.
pub fn phi_second(xi: f64) -> f64 {
    let s = xi.hypot(1.0);
    let d = if xi >= 0.0 { 1.0 / (s + xi) } else { s - xi };
    -d * d * (2.0 * s + xi) / (s * s * s)
}

/// Similarity velocities from the stream-function variable:
/// U = −θ′ (radial), W = θ − ξθ′ (axial).
pub fn velocities_from_theta(theta: f64, theta_prime: f64, xi: f64) -> (f64, f64) {
    (-theta_prime, theta - xi * theta_prime)
}

/// The compactified coordinate x = ξ/√(1+ξ²) ∈ (−1, 1).
///
/// The distance to the nearest endpoint, 1 − |x|, is carried alongside x so
/// the inverse map keeps full relative precision when |x| is within a few
/// ulps of 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompactCoordinate {
    x: f64,
    complement: f64,
}

impl CompactCoordinate {
    pub fn from_xi(xi: f64) -> Self {
        let s = xi.hypot(1.0);
        let a = xi.abs();
        Self {
            x: xi / s,
            complement: 1.0 / (s * (s + a)),
        }
    }

    /// Wraps a raw compact value. Fails unless |x| < 1.
    pub fn new(x: f64) -> Result<Self> {
        if !x.is_finite() || x.abs() >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "compact coordinate must satisfy |x| < 1, got {x}"
            )));
        }
        Ok(Self {
            x,
            complement: 1.0 - x.abs(),
        })
    }

    pub fn value(&self) -> f64 {
        self.x
    }

    /// 1 − |x|.
    pub fn complement(&self) -> f64 {
        self.complement
    }

    /// √(1 − x²) = 1/√(1+ξ²).
    pub fn cosine(&self) -> f64 {
        let c = self.complement;
        (c * (2.0 - c)).sqrt()
    }

    pub fn to_xi(&self) -> f64 {
        self.x / self.cosine()
    }

    /// Polar angle u = atan ξ, so that x = sin u.
    pub fn angle(&self) -> f64 {
        self.x.atan2(self.cosine())
    }
}

pub fn xi_to_x(xi: f64) -> CompactCoordinate {
    CompactCoordinate::from_xi(xi)
}

pub fn x_to_xi(x: CompactCoordinate) -> f64 {
    x.to_xi()
}

/// Shape function in the compact coordinate: φ(ξ(x)) = x/(1+x).
pub fn phi_compact(x: f64) -> f64 {
    x / (1.0 + x)
}

/// Sign selector for θ when it is recovered from θ².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Branch {
    Positive,
    Negative,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Positive => 1.0,
            Branch::Negative => -1.0,
        }
    }
}

impl From<Branch> for i8 {
    fn from(b: Branch) -> i8 {
        match b {
            Branch::Positive => 1,
            Branch::Negative => -1,
        }
    }
}

impl TryFrom<i8> for Branch {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Branch::Positive),
            -1 => Ok(Branch::Negative),
            other => Err(format!("branch must be +1 or -1, got {other}")),
        }
    }
}

/// Physical parameters of a similarity problem.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowParameters {
    /// Kinematic viscosity in similarity units.
    pub nu: f64,
    /// V∞ for viscous problems, V₀ for inviscid ones.
    pub v_swirl: f64,
    /// Pressure parameter E₀.
    pub e0: f64,
    /// Lower end of the ξ-domain; 0 for the half-space.
    pub xi0: f64,
    pub branch: Branch,
}

impl FlowParameters {
    pub fn viscous(nu: f64, v_inf: f64, e0: f64) -> Self {
        Self {
            nu,
            v_swirl: v_inf,
            e0,
            xi0: 0.0,
            branch: Branch::Positive,
        }
    }

    pub fn inviscid(v0: f64, e0: f64, branch: Branch) -> Self {
        Self {
            nu: 0.0,
            v_swirl: v0,
            e0,
            xi0: 0.0,
            branch,
        }
    }

    pub fn with_xi0(mut self, xi0: f64) -> Self {
        self.xi0 = xi0;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("nu", self.nu),
            ("v_swirl", self.v_swirl),
            ("e0", self.e0),
            ("xi0", self.xi0),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
            }
        }
        if self.nu < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "nu must be non-negative, got {}",
                self.nu
            )));
        }
        Ok(())
    }

    /// Half-space amplitude k₀ = E₀ + V₀²/2.
    pub fn half_space_amplitude(&self) -> f64 {
        self.e0 + 0.5 * self.v_swirl * self.v_swirl
    }
}
