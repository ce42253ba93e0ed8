//! The viscous similarity problem.
//!
//! The swirl equation is solved by quadrature for a given θ, and θ by a
//! Riccati integration for a given swirl forcing G. The two are coupled by a
//! damped fixed-point iteration. All work happens on a grid uniform in the
//! angle u = atan ξ, so x = sin u is the compact coordinate and the far field
//! x → 1 sits at a finite endpoint.

mod forcing;
mod picard;
mod regime;
mod swirl;
mod theta;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use forcing::{compute_g, SwirlForcing};
pub use picard::{picard_solve, residual_2_5a, residual_2_5b, Convergence, ViscousSolution};
pub use regime::{
    classify_regime, parameter_sweep, sweep_csv, sweep_points, RegimeLabel, SweepRecord,
    SWEEP_CSV_HEADER,
};
pub use swirl::solve_v_given_theta;
pub use theta::{solve_theta_direct, solve_theta_given_v, ThetaSolution};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Truncation point in the compact coordinate, in (0, 1).
    pub x_max: f64,
    pub n_grid: usize,
    /// Sup-norm change in θ between sweeps that counts as converged.
    pub picard_tol: f64,
    pub max_iters: usize,
    /// Initial under-relaxation factor on V.
    pub damping: f64,
    pub ode_tol: f64,
    /// |Θ̄| above this is reported as blow-up.
    pub blowup_bound: f64,
    pub ode_max_steps: usize,
    /// Swirl imposed on the plane ξ = 0; 0 is no-slip.
    pub swirl_at_axis_plane: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            x_max: 1.0 - 1e-8,
            n_grid: 2048,
            picard_tol: 1e-10,
            max_iters: 200,
            damping: 0.5,
            ode_tol: 1e-10,
            blowup_bound: 1e8,
            ode_max_steps: 200_000,
            swirl_at_axis_plane: 0.0,
        }
    }
}

/// Smallest damping reached by repeated halving.
pub const MIN_DAMPING: f64 = 1.0 / 16.0;

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.x_max > 0.0 && self.x_max < 1.0) {
            return bad(format!("x_max must lie in (0, 1), got {}", self.x_max));
        }
        if self.n_grid < 8 {
            return bad(format!("n_grid must be at least 8, got {}", self.n_grid));
        }
        for (name, v) in [
            ("picard_tol", self.picard_tol),
            ("ode_tol", self.ode_tol),
            ("blowup_bound", self.blowup_bound),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return bad(format!("damping must lie in (0, 1], got {}", self.damping));
        }
        if self.max_iters == 0 || self.ode_max_steps == 0 {
            return bad("max_iters and ode_max_steps must be positive".into());
        }
        if !self.swirl_at_axis_plane.is_finite() {
            return bad("swirl_at_axis_plane must be finite".into());
        }
        Ok(())
    }
}

/// Nodes uniform in u on [0, asin(x_max)], with ξ = tan u and x = sin u.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverGrid {
    pub u: Vec<f64>,
    pub xi: Vec<f64>,
    pub x: Vec<f64>,
    pub cos: Vec<f64>,
}

impl SolverGrid {
    pub fn new(x_max: f64, n: usize) -> Result<Self> {
        if !(x_max > 0.0 && x_max < 1.0) || n < 2 {
            return Err(Error::InvalidParameter(format!(
                "solver grid needs 0 < x_max < 1 and n >= 2, got x_max = {x_max}, n = {n}"
            )));
        }
        let um = x_max.asin();
        let u: Vec<f64> = (0..n).map(|i| um * i as f64 / (n - 1) as f64).collect();
        Ok(Self::from_angles(u))
    }

    pub fn from_xi(xi: &[f64]) -> Self {
        Self::from_angles(xi.iter().map(|x| x.atan()).collect())
    }

    fn from_angles(u: Vec<f64>) -> Self {
        Self {
            xi: u.iter().map(|a| a.tan()).collect(),
            x: u.iter().map(|a| a.sin()).collect(),
            cos: u.iter().map(|a| a.cos()).collect(),
            u,
        }
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }
}

pub(crate) fn check_xi_grid(xi: &[f64]) -> Result<()> {
    if xi.len() < 5 {
        return Err(Error::InvalidParameter(format!(
            "viscous grids need at least 5 points, got {}",
            xi.len()
        )));
    }
    if xi[0] != 0.0 {
        return Err(Error::InvalidParameter(format!(
            "viscous grids start at xi = 0, got {}",
            xi[0]
        )));
    }
    if xi.iter().any(|v| !v.is_finite()) || xi.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "viscous grid must be finite and strictly increasing".into(),
        ));
    }
    Ok(())
}
