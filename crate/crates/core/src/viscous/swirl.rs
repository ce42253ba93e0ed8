//! Swirl for a given θ: νV″ + (3νξ − θ)V′/(1+ξ²) = 0.
//!
//! In u = atan ξ the equation integrates once to dV/du = C·e^{E(u)}·cos u with
//! E(u) = (1/ν)∫₀^u θ dw. C is fixed by V → V∞ at the vortex line x = 1; the
//! piece between the last node and u = π/2 is integrated with θ frozen at its
//! last value.

use crate::error::{Error, Result};
use crate::numerics::PiecewiseCubic;

use super::check_xi_grid;

// e^{aδ} − a sin δ − cos δ, without cancellation for small aδ and δ
fn tail_numerator(a: f64, delta: f64) -> f64 {
    let z = a * delta;
    let exp_part = if z.abs() < 1e-3 {
        z * z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)))
    } else {
        z.exp_m1() - z
    };
    let sin_part = if delta < 1e-3 {
        let d2 = delta * delta;
        delta * d2 * (1.0 / 6.0 - d2 / 120.0)
    } else {
        delta - delta.sin()
    };
    let half = (0.5 * delta).sin();
    exp_part + a * sin_part + 2.0 * half * half
}

/// V on `grid` (starting at ξ = 0) with V(0) = `v_axis` and V → `v_inf`.
pub fn solve_v_given_theta(
    grid: &[f64],
    theta: &[f64],
    nu: f64,
    v_inf: f64,
    v_axis: f64,
) -> Result<Vec<f64>> {
    check_xi_grid(grid)?;
    if theta.len() != grid.len() {
        return Err(Error::InvalidParameter(format!(
            "theta has {} samples, grid has {}",
            theta.len(),
            grid.len()
        )));
    }
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(Error::InvalidParameter(format!("nu must be positive, got {nu}")));
    }
    if theta.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidParameter("theta contains non-finite samples".into()));
    }
    let n = grid.len();
    let jump = v_inf - v_axis;
    if jump == 0.0 {
        return Ok(vec![v_axis; n]);
    }
    let u: Vec<f64> = grid.iter().map(|x| x.atan()).collect();
    let th_nu: Vec<f64> = theta.iter().map(|t| t / nu).collect();
    let exponent = PiecewiseCubic::new(&u, &th_nu);
    let e_max = exponent
        .cumulative()
        .iter()
        .fold(f64::NEG_INFINITY, |m, &v| m.max(v));
    let slope: Vec<f64> = (0..n)
        .map(|i| (exponent.cumulative()[i] - e_max).exp() * u[i].cos())
        .collect();
    let swirl = PiecewiseCubic::new(&u, &slope);
    let a = th_nu[n - 1];
    let delta = (1.0 / grid[n - 1]).atan();
    let e_last = exponent.cumulative()[n - 1] - e_max;
    let tail = e_last.exp() * tail_numerator(a, delta) / (1.0 + a * a);
    let total = swirl.total() + tail;
    if !total.is_finite() || total <= 0.0 || !tail.is_finite() {
        return Err(Error::SwirlNormalization(format!(
            "normalising integral is {total:e} (tail {tail:e}); theta/nu = {a:.3e} at the last node is too large"
        )));
    }
    Ok(swirl
        .cumulative()
        .iter()
        .map(|&c| v_axis + jump * (c / total))
        .collect())
}
