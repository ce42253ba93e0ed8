//! Shape-preserving (monotone) cubic Hermite interpolation.

use crate::error::{Error, Result};

/// Fritsch–Carlson monotone cubic.
///
/// Node slopes start from the three-point (parabolic) estimate and are then
/// limited so that the interpolant is monotone on every interval where the
/// data are. Evaluation outside the node range returns `None`.
#[derive(Clone, Debug)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    slope: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(x: &[f64], y: &[f64]) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n {
            return Err(Error::InvalidProfile(
                "interpolation needs at least two matching samples".into(),
            ));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidProfile("interpolation nodes must increase strictly".into()));
        }
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
        let mut m = vec![0.0; n];
        if n == 2 {
            m[0] = delta[0];
            m[1] = delta[0];
        } else {
            for i in 1..n - 1 {
                m[i] = (h[i] * delta[i - 1] + h[i - 1] * delta[i]) / (h[i - 1] + h[i]);
            }
            m[0] = end_slope(h[0], h[1], delta[0], delta[1]);
            m[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }
        for i in 0..n - 1 {
            let d = delta[i];
            if d == 0.0 {
                m[i] = 0.0;
                m[i + 1] = 0.0;
                continue;
            }
            if m[i] * d < 0.0 {
                m[i] = 0.0;
            }
            if m[i + 1] * d < 0.0 {
                m[i + 1] = 0.0;
            }
            let a = m[i] / d;
            let b = m[i + 1] / d;
            let r = a * a + b * b;
            if r > 9.0 {
                let tau = 3.0 / r.sqrt();
                m[i] = tau * a * d;
                m[i + 1] = tau * b * d;
            }
        }
        // sign changes of the secants force a flat node
        for i in 1..n - 1 {
            if delta[i - 1] * delta[i] < 0.0 {
                m[i] = 0.0;
            }
        }
        Ok(Self {
            x: x.to_vec(),
            y: y.to_vec(),
            slope: m,
        })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], *self.x.last().unwrap())
    }

    pub fn eval(&self, t: f64) -> Option<f64> {
        let (lo, hi) = self.domain();
        if !(t >= lo && t <= hi) {
            return None;
        }
        let n = self.x.len();
        let k = self.x.partition_point(|&v| v <= t).clamp(1, n - 1) - 1;
        let h = self.x[k + 1] - self.x[k];
        let s = (t - self.x[k]) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        Some(
            h00 * self.y[k]
                + h10 * h * self.slope[k]
                + h01 * self.y[k + 1]
                + h11 * h * self.slope[k + 1],
        )
    }
}

// one-sided three-point slope, limited as in PCHIP
fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 < 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}
