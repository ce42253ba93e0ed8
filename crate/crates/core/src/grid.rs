//! ξ-grids.

use crate::error::{Error, Result};

fn check(lo: f64, hi: f64, n: usize) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidParameter(format!(
            "grid bounds must be finite with lo < hi, got [{lo}, {hi}]"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("grid needs n >= 2, got {n}")));
    }
    Ok(())
}

pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    check(lo, hi, n)?;
    let h = (hi - lo) / (n - 1) as f64;
    let mut g: Vec<f64> = (0..n).map(|i| lo + h * i as f64).collect();
    g[n - 1] = hi;
    Ok(g)
}

/// Points uniform in the angle u = atan ξ, endpoints exact.
///
/// Dense near the plane and sparse towards the vortex line, which suits
/// profiles that vary on the scale ξ near 0 and on the scale 1/ξ far out.
pub fn angular_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    check(lo, hi, n)?;
    let (a, b) = (lo.atan(), hi.atan());
    let h = (b - a) / (n - 1) as f64;
    let mut g: Vec<f64> = (0..n).map(|i| (a + h * i as f64).tan()).collect();
    g[0] = lo;
    g[n - 1] = hi;
    if g.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(format!(
            "angular grid on [{lo}, {hi}] with n = {n} is not strictly increasing in f64"
        )));
    }
    Ok(g)
}
