//! Flow-regime labels and parameter sweeps.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::profile::SimilarityProfile;
use crate::similarity::FlowParameters;

use super::{picard_solve, SolverConfig};

const SIGN_NOISE: f64 = 1e-8;

/// Direction of the meridional flow near the plane (radial, from U) and near
/// the vortex line (axial, from W).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegimeLabel {
    OutwardDownward,
    InwardUpward,
    InwardDownward,
    /// Not among the patterns seen in practice; kept so every sign pair has a
    /// name.
    OutwardUpward,
    Indeterminate,
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegimeLabel::OutwardDownward => "OutwardDownward",
            RegimeLabel::InwardUpward => "InwardUpward",
            RegimeLabel::InwardDownward => "InwardDownward",
            RegimeLabel::OutwardUpward => "OutwardUpward",
            RegimeLabel::Indeterminate => "Indeterminate",
        };
        f.write_str(s)
    }
}

/// Labels a profile by the mean U over the first 5% of nodes after the first
/// and the mean W over the last 5%.
pub fn classify_regime(profile: &SimilarityProfile) -> RegimeLabel {
    let n = profile.len();
    let m = (n / 20).max(1);
    let u = profile.u();
    let w = profile.w();
    let lo = 1.min(n - 1);
    let hi = (lo + m).min(n);
    let u_mean = u[lo..hi].iter().sum::<f64>() / (hi - lo) as f64;
    let w_mean = w[n - m..].iter().sum::<f64>() / m as f64;
    if u_mean.abs() < SIGN_NOISE || w_mean.abs() < SIGN_NOISE || !u_mean.is_finite() || !w_mean.is_finite() {
        return RegimeLabel::Indeterminate;
    }
    match (u_mean > 0.0, w_mean > 0.0) {
        (true, false) => RegimeLabel::OutwardDownward,
        (false, true) => RegimeLabel::InwardUpward,
        (false, false) => RegimeLabel::InwardDownward,
        (true, true) => RegimeLabel::OutwardUpward,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub nu: f64,
    pub v_inf: f64,
    pub e0: f64,
    pub converged: bool,
    pub regime: Option<RegimeLabel>,
    pub iterations: usize,
    pub res_a: Option<f64>,
    pub res_b: Option<f64>,
    /// Failure kind and message for points that did not converge.
    pub failure: Option<(String, String)>,
}

/// Cartesian product in (ν, V∞, E₀) order, ν slowest.
pub fn sweep_points(nus: &[f64], v_infs: &[f64], e0s: &[f64]) -> Vec<(f64, f64, f64)> {
    let mut pts = Vec::with_capacity(nus.len() * v_infs.len() * e0s.len());
    for &nu in nus {
        for &vi in v_infs {
            for &e0 in e0s {
                pts.push((nu, vi, e0));
            }
        }
    }
    pts
}

/// Solves every point, in parallel on the current rayon pool. Failures are
/// recorded, never propagated. Output order follows `points`.
pub fn parameter_sweep(points: &[(f64, f64, f64)], config: &SolverConfig) -> Vec<SweepRecord> {
    points
        .par_iter()
        .map(|&(nu, v_inf, e0)| {
            match picard_solve(&FlowParameters::viscous(nu, v_inf, e0), config) {
                Ok(sol) => SweepRecord {
                    nu,
                    v_inf,
                    e0,
                    converged: true,
                    regime: Some(classify_regime(&sol.profile)),
                    iterations: sol.convergence.iterations,
                    res_a: Some(sol.convergence.residual_2_5a),
                    res_b: Some(sol.convergence.residual_2_5b),
                    failure: None,
                },
                Err(e) => SweepRecord {
                    nu,
                    v_inf,
                    e0,
                    converged: false,
                    regime: None,
                    iterations: match &e {
                        crate::error::Error::MaxItersExceeded { iterations, .. } => *iterations,
                        _ => 0,
                    },
                    res_a: None,
                    res_b: None,
                    failure: Some((e.kind().to_string(), e.to_string())),
                },
            }
        })
        .collect()
}

pub const SWEEP_CSV_HEADER: &str = "nu,v_inf,e0,converged,regime,iters,res_a,res_b";

/// CSV table; failed points carry `failed:<kind>` in the regime column and
/// empty residuals.
pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    let opt = |v: Option<f64>| v.map(|x| format!("{x:.6e}")).unwrap_or_default();
    for r in records {
        let regime = match (&r.regime, &r.failure) {
            (Some(l), _) => l.to_string(),
            (None, Some((kind, _))) => format!("failed:{kind}"),
            (None, None) => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.nu,
            r.v_inf,
            r.e0,
            r.converged,
            regime,
            r.iterations,
            opt(r.res_a),
            opt(r.res_b)
        ));
    }
    out
}
