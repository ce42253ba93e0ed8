//! Closed-form inviscid families on the half-space and on conical domains.
//!
//! With ν = 0 the swirl is constant wherever θ ≠ 0 and θ²/2 is k₀ times a
//! shift of φ. The pressure follows from integrating
//! [θ²/2 + (1+ξ²)P]′ = −ξV² outward from the inflow boundary.

use crate::error::{Error, Result};
use crate::numerics::adaptive_simpson;
use crate::profile::SimilarityProfile;
use crate::similarity::{phi, phi_prime, phi_second, Branch, FlowParameters};

const PRESSURE_QUAD_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerFamily {
    HalfSpace,
    Conical,
}

/// Pointwise evaluator for one member of the inviscid family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerClosedForm {
    pub k0: f64,
    pub v0: f64,
    pub e0: f64,
    pub xi0: f64,
    pub branch: Branch,
    /// P(ξ₀⁺).
    pub p0: f64,
    phi0: f64,
}

/// k₀ = E₀ + V₀²/2 for the half-space.
pub fn half_space_k0(v0: f64, e0: f64) -> Result<f64> {
    let k0 = e0 + 0.5 * v0 * v0;
    if !(k0 > 0.0) {
        return Err(Error::NonPositiveAmplitude { k0 });
    }
    Ok(k0)
}

/// k₀ = (V₀²/2 + E₀)/(1 − 2φ(ξ₀)) for the cone ξ ≥ ξ₀.
pub fn conical_k0(v0: f64, e0: f64, xi0: f64) -> Result<f64> {
    let denom = 1.0 - 2.0 * phi(xi0);
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::Singular(format!("1 - 2 phi(xi0) vanishes at xi0 = {xi0}")));
    }
    let k0 = (0.5 * v0 * v0 + e0) / denom;
    if !(k0 > 0.0) {
        return Err(Error::NonPositiveAmplitude { k0 });
    }
    Ok(k0)
}

impl EulerClosedForm {
    pub fn new(params: &FlowParameters, family: EulerFamily) -> Result<Self> {
        params.validate()?;
        let (v0, e0, xi0) = (params.v_swirl, params.e0, params.xi0);
        let (k0, p0) = match family {
            EulerFamily::HalfSpace => {
                if xi0 != 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "half-space family needs xi0 = 0, got {xi0}"
                    )));
                }
                (half_space_k0(v0, e0)?, e0)
            }
            EulerFamily::Conical => {
                let k0 = conical_k0(v0, e0, xi0)?;
                let p0 = e0 + (0.5 * v0 * v0 + e0) * xi0 / xi0.hypot(1.0);
                (k0, p0)
            }
        };
        Ok(Self {
            k0,
            v0,
            e0,
            xi0,
            branch: params.branch,
            p0,
            phi0: phi(xi0),
        })
    }

    /// θ²/2 = k₀(φ(ξ) − φ(ξ₀)).
    pub fn half_theta_sq(&self, xi: f64) -> f64 {
        self.k0 * (phi(xi) - self.phi0)
    }

    pub fn theta(&self, xi: f64) -> f64 {
        self.branch.sign() * (2.0 * self.half_theta_sq(xi)).max(0.0).sqrt()
    }

    /// (θ²/2)′ = θθ′ = k₀φ′(ξ); finite at ξ₀.
    pub fn theta_theta_prime(&self, xi: f64) -> f64 {
        self.k0 * phi_prime(xi)
    }

    /// θ′; infinite at ξ₀.
    pub fn theta_prime(&self, xi: f64) -> f64 {
        self.theta_theta_prime(xi) / self.theta(xi)
    }

    /// Pressure from the closed-form antiderivative of ξV₀².
    pub fn pressure(&self, xi: f64) -> f64 {
        let s0 = 1.0 + self.xi0 * self.xi0;
        let swirl = 0.5 * self.v0 * self.v0 * (xi - self.xi0) * (xi + self.xi0);
        (s0 * self.p0 - self.half_theta_sq(xi) - swirl) / (1.0 + xi * xi)
    }

    pub fn pressure_prime(&self, xi: f64) -> f64 {
        let dn = -self.theta_theta_prime(xi) - xi * self.v0 * self.v0;
        (dn - 2.0 * xi * self.pressure(xi)) / (1.0 + xi * xi)
    }

    /// Samples the family on `grid`, recovering P by adaptive quadrature.
    pub fn sample(&self, grid: &[f64]) -> Result<SimilarityProfile> {
        if grid.is_empty() || !(grid[0] > self.xi0) {
            return Err(Error::Singular(format!(
                "theta' diverges at xi0 = {}; the grid must start at xi_min > xi0 (got {:?})",
                self.xi0,
                grid.first()
            )));
        }
        let s0 = 1.0 + self.xi0 * self.xi0;
        let v0 = self.v0;
        let swirl_flux = |t: f64| t * v0 * v0;
        let mut theta = Vec::with_capacity(grid.len());
        let mut theta_prime = Vec::with_capacity(grid.len());
        let mut p = Vec::with_capacity(grid.len());
        let mut acc = 0.0;
        let mut prev = self.xi0;
        for &xi in grid {
            acc += adaptive_simpson(swirl_flux, prev, xi, PRESSURE_QUAD_TOL);
            prev = xi;
            theta.push(self.theta(xi));
            theta_prime.push(self.theta_prime(xi));
            p.push((s0 * self.p0 - self.half_theta_sq(xi) - acc) / (1.0 + xi * xi));
        }
        let params = FlowParameters {
            nu: 0.0,
            v_swirl: self.v0,
            e0: self.e0,
            xi0: self.xi0,
            branch: self.branch,
        };
        SimilarityProfile::new(params, grid.to_vec(), theta, theta_prime, vec![v0; grid.len()], p)
    }
}

/// θ = ±√(2k₀φ), V ≡ V₀ on the half-space ξ ≥ 0.
pub fn euler_continuous(params: &FlowParameters, grid: &[f64]) -> Result<SimilarityProfile> {
    EulerClosedForm::new(params, EulerFamily::HalfSpace)?.sample(grid)
}

/// θ²/2 = k₀(φ(ξ) − φ(ξ₀)), V ≡ V₀ on the cone ξ ≥ ξ₀.
pub fn euler_conical(params: &FlowParameters, grid: &[f64]) -> Result<SimilarityProfile> {
    EulerClosedForm::new(params, EulerFamily::Conical)?.sample(grid)
}

/// Pointwise residuals of the three inviscid equations.
#[derive(Clone, Debug)]
pub struct InviscidResiduals {
    pub xi: Vec<f64>,
    /// [θ²/2 + (1+ξ²)P]′ + ξV²
    pub momentum: Vec<f64>,
    /// V′θ
    pub swirl: Vec<f64>,
    /// [θ² − ξ(θ²/2)′ + P]′
    pub bernoulli: Vec<f64>,
}

impl InviscidResiduals {
    pub fn max_abs(&self) -> f64 {
        self.momentum
            .iter()
            .chain(&self.swirl)
            .chain(&self.bernoulli)
            .fold(0.0, |m, r| m.max(r.abs()))
    }
}

/// Residuals of `profile` on the nodes inside `[lo, hi]`.
///
/// Derivatives of θ² and P come from the closed form of the family; P itself
/// is taken from the profile, so the momentum residual measures the
/// quadrature-recovered pressure against the exact derivative.
pub fn inviscid_residuals(
    profile: &SimilarityProfile,
    closed: &EulerClosedForm,
    lo: f64,
    hi: f64,
) -> InviscidResiduals {
    let mut out = InviscidResiduals {
        xi: Vec::new(),
        momentum: Vec::new(),
        swirl: Vec::new(),
        bernoulli: Vec::new(),
    };
    let n = profile.len();
    for i in 0..n {
        let xi = profile.grid()[i];
        if xi < lo || xi > hi {
            continue;
        }
        let th = profile.theta()[i];
        let v = profile.v()[i];
        let p = profile.p()[i];
        let tt = th * profile.theta_prime()[i];
        let dp = closed.pressure_prime(xi);
        let v_prime = if i + 1 < n {
            (profile.v()[i + 1] - v) / (profile.grid()[i + 1] - xi)
        } else {
            (v - profile.v()[i - 1]) / (xi - profile.grid()[i - 1])
        };
        out.xi.push(xi);
        out.momentum
            .push(tt + 2.0 * xi * p + (1.0 + xi * xi) * dp + xi * v * v);
        out.swirl.push(v_prime * th);
        out.bernoulli
            .push(tt - xi * closed.k0 * phi_second(xi) + dp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::angular_grid;

    fn params(v0: f64, e0: f64, b: Branch) -> FlowParameters {
        FlowParameters::inviscid(v0, e0, b)
    }

    #[test]
    fn half_space_examples() {
        let f = EulerClosedForm::new(&params(1.0, 1.0, Branch::Positive), EulerFamily::HalfSpace).unwrap();
        assert!((2.0 * f.half_theta_sq(1.0) - 1.24264069).abs() < 5e-9);
        assert_eq!(f.theta(0.0), 0.0);
        assert_eq!(f.pressure(0.0), 1.0);
        assert!((f.pressure(1e4) + 0.5).abs() < 1e-4);
        assert!((f.pressure(1e8) + 0.5).abs() < 1e-12);
    }

    #[test]
    fn non_positive_k0_is_rejected() {
        let err = euler_continuous(&params(0.0, 0.0, Branch::Positive), &[0.1, 1.0]).unwrap_err();
        assert!(err.to_string().contains("k0 must be positive"));
        assert!(euler_continuous(&params(1.0, -0.6, Branch::Positive), &[0.1, 1.0]).is_err());
    }

    #[test]
    fn grid_must_avoid_the_singular_endpoint() {
        let p = params(1.0, 1.0, Branch::Positive);
        assert!(euler_continuous(&p, &[0.0, 1.0]).is_err());
        assert!(euler_continuous(&p, &[1e-4, 1.0]).is_ok());
    }

    #[test]
    fn conical_constant_and_endpoint() {
        let p = params(1.0, 1.0, Branch::Positive).with_xi0(-1.0);
        let f = EulerClosedForm::new(&p, EulerFamily::Conical).unwrap();
        assert!((f.k0 - 0.25735931).abs() < 5e-9);
        assert_eq!(f.theta(-1.0), 0.0);
        // Bernoulli invariant θ² − ξθθ′ + P equals its inflow value everywhere
        let b = |xi: f64| 2.0 * f.half_theta_sq(xi) - xi * f.theta_theta_prime(xi) + f.pressure(xi);
        for &xi in &[-0.5, 0.0, 2.0, 50.0] {
            assert!((b(xi) - b(-1.0)).abs() < 1e-12 * (1.0 + xi * xi));
        }
    }

    #[test]
    fn conical_rejects_degenerate_cone() {
        // 1 - 2 phi(xi0) > 0 for every finite xi0, but k0 can still be non-positive
        let p = params(0.0, -1.0, Branch::Positive).with_xi0(0.5);
        assert!(matches!(
            EulerClosedForm::new(&p, EulerFamily::Conical),
            Err(Error::NonPositiveAmplitude { .. })
        ));
    }

    #[test]
    fn conical_reduces_to_half_space() {
        let g = angular_grid(1e-4, 1e3, 301).unwrap();
        for b in [Branch::Positive, Branch::Negative] {
            let a = euler_continuous(&params(2.0, -0.1, b), &g).unwrap();
            let c = euler_conical(&params(2.0, -0.1, b), &g).unwrap();
            assert_eq!(a.theta(), c.theta());
            assert_eq!(a.p(), c.p());
        }
    }

    #[test]
    fn quadrature_pressure_matches_closed_form() {
        let p = params(2.0, 1.0, Branch::Negative).with_xi0(-0.7);
        let f = EulerClosedForm::new(&p, EulerFamily::Conical).unwrap();
        let g = angular_grid(-0.69, 200.0, 400).unwrap();
        let prof = f.sample(&g).unwrap();
        for (i, &xi) in g.iter().enumerate() {
            assert!((prof.p()[i] - f.pressure(xi)).abs() < 1e-12 * (1.0 + f.pressure(xi).abs()));
        }
    }

    #[test]
    fn residuals_small_for_both_branches() {
        let g = angular_grid(1e-4, 1e3, 2001).unwrap();
        for b in [Branch::Positive, Branch::Negative] {
            let p = params(1.0, 1.0, b);
            let f = EulerClosedForm::new(&p, EulerFamily::HalfSpace).unwrap();
            let prof = f.sample(&g).unwrap();
            let r = inviscid_residuals(&prof, &f, 0.01, 100.0);
            assert!(r.max_abs() < 1e-9, "{}", r.max_abs());
            assert!(!r.xi.is_empty());
        }
    }
}
