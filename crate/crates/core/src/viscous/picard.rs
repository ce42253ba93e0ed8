//! Damped fixed-point iteration between the swirl and θ solves.

use log::{debug, info};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::derivatives_5pt;
use crate::profile::SimilarityProfile;
use crate::similarity::{phi_compact, FlowParameters};

use super::{
    solve_theta_given_v, solve_v_given_theta, SolverConfig, SolverGrid, SwirlForcing, MIN_DAMPING,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlowupInfo {
    pub x_escape: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Convergence {
    pub iterations: usize,
    pub residual_2_5a: f64,
    pub residual_2_5b: f64,
    pub blowup: Option<BlowupInfo>,
    pub final_change: f64,
    pub final_damping: f64,
    pub theta_prime_at_origin: f64,
    pub history: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ViscousSolution {
    #[serde(flatten)]
    pub profile: SimilarityProfile,
    pub convergence: Convergence,
}

impl ViscousSolution {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Sup-norm of θ²/2 − ν[(1+ξ²)θ′ + ξθ] − G − E₀φ over the profile nodes,
/// with G recomputed from the profile's own swirl.
pub fn residual_2_5a(profile: &SimilarityProfile, forcing: &SwirlForcing) -> f64 {
    let prm = profile.params();
    let (nu, e0) = (prm.nu, prm.e0);
    let g = forcing.nodes();
    let mut worst = 0.0f64;
    for i in 0..profile.len() {
        let xi = profile.grid()[i];
        let th = profile.theta()[i];
        let dth = profile.theta_prime()[i];
        let x = xi / xi.hypot(1.0);
        let r = 0.5 * th * th - nu * ((1.0 + xi * xi) * dth + xi * th) - g[i] - e0 * phi_compact(x);
        worst = worst.max(r.abs());
    }
    worst
}

/// Sup-norm of νV″ + (3νξ − θ)V′/(1+ξ²) over the profile nodes, with V′ and
/// V″ from fourth-order differences of V in u = atan ξ.
pub fn residual_2_5b(profile: &SimilarityProfile) -> f64 {
    let nu = profile.params().nu;
    let u: Vec<f64> = profile.grid().iter().map(|x| x.atan()).collect();
    let (vu, vuu) = derivatives_5pt(&u, profile.v());
    let mut worst = 0.0f64;
    for i in 0..profile.len() {
        let xi = profile.grid()[i];
        let (s, c) = u[i].sin_cos();
        let c2 = c * c;
        let v1 = c2 * vu[i];
        let v2 = c2 * (c2 * vuu[i] - 2.0 * s * c * vu[i]);
        let r = nu * v2 + (3.0 * nu * xi - profile.theta()[i]) * v1 * c2;
        worst = worst.max(r.abs());
    }
    worst
}

// P from [θ²/2 + (1+ξ²)P]′ = ν[ξθ − (1+ξ²)θ′]′ − ξV², P(0) = E₀
fn recover_pressure(
    grid: &SolverGrid,
    theta: &[f64],
    theta_prime: &[f64],
    flux: &[f64],
    nu: f64,
    e0: f64,
) -> Vec<f64> {
    let base = e0 + nu * theta_prime[0];
    (0..grid.len())
        .map(|i| {
            let xi = grid.xi[i];
            let q = 1.0 + xi * xi;
            let visc = nu * (xi * theta[i] - q * theta_prime[i]);
            (base + visc - 0.5 * theta[i] * theta[i] - flux[i]) / q
        })
        .collect()
}

/// Solves the viscous problem for (ν, V∞, E₀) = (params.nu, params.v_swirl,
/// params.e0).
///
/// Starts from V = V∞·x, solves for θ, then for the swirl that θ implies, and
/// relaxes V towards it. Stops when θ changes by less than `picard_tol`. The
/// damping is halved (down to 1/16) whenever the change grows.
pub fn picard_solve(params: &FlowParameters, config: &SolverConfig) -> Result<ViscousSolution> {
    params.validate()?;
    config.validate()?;
    let (nu, v_inf, e0) = (params.nu, params.v_swirl, params.e0);
    if !(nu > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "the viscous solver needs nu > 0, got {nu}"
        )));
    }
    let grid = SolverGrid::new(config.x_max, config.n_grid)?;
    let n = grid.len();
    let v_axis = config.swirl_at_axis_plane;

    let mut v: Vec<f64> = grid.x.iter().map(|&x| v_axis + (v_inf - v_axis) * x).collect();
    let mut theta_old = vec![0.0; n];
    let mut damping = config.damping;
    let mut history = Vec::new();

    for it in 1..=config.max_iters {
        let forcing = SwirlForcing::new(&grid.xi, &v, v_inf)?;
        let sol = solve_theta_given_v(&grid, &forcing, nu, e0, config)?;
        let change = sol
            .theta
            .iter()
            .zip(&theta_old)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        if let Some(&prev) = history.last() {
            if change > prev && damping > MIN_DAMPING {
                damping = (0.5 * damping).max(MIN_DAMPING);
                debug!("change grew ({prev:.3e} -> {change:.3e}); damping now {damping}");
            }
        }
        history.push(change);
        debug!("sweep {it}: change {change:.3e}, {} ode steps", sol.ode_steps);
        let v_new = solve_v_given_theta(&grid.xi, &sol.theta, nu, v_inf, v_axis)?;

        if change < config.picard_tol {
            let final_forcing = SwirlForcing::new(&grid.xi, &v_new, v_inf)?;
            let p = recover_pressure(
                &grid,
                &sol.theta,
                &sol.theta_prime,
                final_forcing.swirl_flux(),
                nu,
                e0,
            );
            let theta_prime_at_origin = sol.theta_prime_at_origin();
            let profile = SimilarityProfile::new(
                FlowParameters::viscous(nu, v_inf, e0),
                grid.xi.clone(),
                sol.theta,
                sol.theta_prime,
                v_new,
                p,
            )?;
            let convergence = Convergence {
                iterations: it,
                residual_2_5a: residual_2_5a(&profile, &final_forcing),
                residual_2_5b: residual_2_5b(&profile),
                blowup: None,
                final_change: change,
                final_damping: damping,
                theta_prime_at_origin,
                history,
            };
            info!(
                "converged in {it} sweeps: res_a {:.3e}, res_b {:.3e}",
                convergence.residual_2_5a, convergence.residual_2_5b
            );
            return Ok(ViscousSolution {
                profile,
                convergence,
            });
        }
        for (vi, vn) in v.iter_mut().zip(&v_new) {
            *vi += damping * (vn - *vi);
        }
        theta_old = sol.theta;
    }
    Err(Error::MaxItersExceeded {
        iterations: config.max_iters,
        last_change: *history.last().unwrap_or(&f64::NAN),
        history,
    })
}
