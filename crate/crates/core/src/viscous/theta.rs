//! θ for a given swirl forcing:
//! θ²/2 − ν[(1+ξ²)θ′ + ξθ] = G(ξ) + E₀φ(ξ), θ(0) = 0.
//!
//! With Θ̄ = −√(1+ξ²)θ and x = sin u this is the Riccati equation
//! ν dΘ̄/du = (G + E₀φ)/cos u − cos u·Θ̄²/2, integrated from u = 0 to the last
//! node. A direct integration in ξ is kept as a cross-check.

use crate::error::{Error, Result};
use crate::numerics::{dopri5, OdeFailure, OdeOptions};
use crate::similarity::{phi, phi_compact};

use super::{SolverConfig, SolverGrid, SwirlForcing};

#[derive(Clone, Debug)]
pub struct ThetaSolution {
    pub theta: Vec<f64>,
    pub theta_prime: Vec<f64>,
    /// Θ̄ on the nodes.
    pub theta_bar: Vec<f64>,
    pub ode_steps: usize,
}

impl ThetaSolution {
    /// θ′ at ξ = 0, forced to vanish by the equation.
    pub fn theta_prime_at_origin(&self) -> f64 {
        self.theta_prime[0]
    }
}

fn ode_options(config: &SolverConfig) -> OdeOptions {
    OdeOptions {
        rtol: config.ode_tol,
        atol: config.ode_tol,
        bound: config.blowup_bound,
        max_steps: config.ode_max_steps,
    }
}

fn map_failure(f: OdeFailure, bound: f64, to_x: impl Fn(f64) -> f64) -> Error {
    match f {
        OdeFailure::Escaped { t } => {
            let x = to_x(t);
            Error::BlowUp {
                x_escape: x,
                xi_escape: x / (1.0 - x * x).sqrt(),
                bound,
            }
        }
        OdeFailure::Stalled { t, reason } => Error::IntegratorStalled { x: to_x(t), reason },
    }
}

/// Integrates the compact Riccati equation on `grid`.
pub fn solve_theta_given_v(
    grid: &SolverGrid,
    forcing: &SwirlForcing,
    nu: f64,
    e0: f64,
    config: &SolverConfig,
) -> Result<ThetaSolution> {
    if !(nu > 0.0) {
        return Err(Error::InvalidParameter(format!("nu must be positive, got {nu}")));
    }
    let rhs = |u: f64, y: f64| {
        let (s, c) = u.sin_cos();
        let f = forcing.eval_angle(u) + e0 * phi_compact(s);
        (f / c - 0.5 * c * y * y) / nu
    };
    let sol = dopri5(rhs, 0.0, 0.0, &grid.u, &ode_options(config))
        .map_err(|f| map_failure(f, config.blowup_bound, f64::sin))?;
    let n = grid.len();
    let mut theta = Vec::with_capacity(n);
    let mut theta_prime = Vec::with_capacity(n);
    for i in 0..n {
        let c = grid.cos[i];
        let s = grid.x[i];
        let tb = sol.y[i];
        theta.push(-tb * c);
        theta_prime.push(c * c * (tb * s - sol.dy[i] * c));
    }
    Ok(ThetaSolution {
        theta,
        theta_prime,
        theta_bar: sol.y,
        ode_steps: sol.steps,
    })
}

/// Integrates θ′ = [θ²/2 − νξθ − G − E₀φ]/(ν(1+ξ²)) directly in ξ and
/// samples θ at `xi_out` (non-decreasing, starting at or after 0).
pub fn solve_theta_direct(
    forcing: &SwirlForcing,
    nu: f64,
    e0: f64,
    xi_out: &[f64],
    config: &SolverConfig,
) -> Result<Vec<f64>> {
    if !(nu > 0.0) {
        return Err(Error::InvalidParameter(format!("nu must be positive, got {nu}")));
    }
    let rhs = |xi: f64, th: f64| {
        let f = forcing.eval_angle(xi.atan()) + e0 * phi(xi);
        (0.5 * th * th - nu * xi * th - f) / (nu * (1.0 + xi * xi))
    };
    let sol = dopri5(rhs, 0.0, 0.0, xi_out, &ode_options(config))
        .map_err(|f| map_failure(f, config.blowup_bound, |xi| xi / xi.hypot(1.0)))?;
    Ok(sol.y)
}
