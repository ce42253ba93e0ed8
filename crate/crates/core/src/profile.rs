//! The sampled similarity profile and its JSON form.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::similarity::{velocities_from_theta, CompactCoordinate, FlowParameters};

/// Sampled (θ, θ′, V, P) on a ξ-grid together with the parameters that
/// produced them. Immutable once built; U and W are derived on demand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile")]
pub struct SimilarityProfile {
    params: FlowParameters,
    grid: Vec<f64>,
    theta: Vec<f64>,
    theta_prime: Vec<f64>,
    v: Vec<f64>,
    p: Vec<f64>,
}

#[derive(Deserialize)]
struct RawProfile {
    params: FlowParameters,
    grid: Vec<f64>,
    theta: Vec<f64>,
    theta_prime: Vec<f64>,
    v: Vec<f64>,
    p: Vec<f64>,
}

impl TryFrom<RawProfile> for SimilarityProfile {
    type Error = Error;

    fn try_from(r: RawProfile) -> Result<Self> {
        SimilarityProfile::new(r.params, r.grid, r.theta, r.theta_prime, r.v, r.p)
    }
}

impl SimilarityProfile {
    pub fn new(
        params: FlowParameters,
        grid: Vec<f64>,
        theta: Vec<f64>,
        theta_prime: Vec<f64>,
        v: Vec<f64>,
        p: Vec<f64>,
    ) -> Result<Self> {
        params.validate()?;
        let n = grid.len();
        if n < 2 {
            return Err(Error::InvalidProfile(format!(
                "need at least 2 grid points, got {n}"
            )));
        }
        for (name, seq) in [
            ("theta", &theta),
            ("theta_prime", &theta_prime),
            ("v", &v),
            ("p", &p),
        ] {
            if seq.len() != n {
                return Err(Error::InvalidProfile(format!(
                    "{name} has {} samples, grid has {n}",
                    seq.len()
                )));
            }
        }
        for (name, seq) in [
            ("grid", &grid),
            ("theta", &theta),
            ("theta_prime", &theta_prime),
            ("v", &v),
            ("p", &p),
        ] {
            if let Some(i) = seq.iter().position(|x| !x.is_finite()) {
                return Err(Error::InvalidProfile(format!(
                    "{name}[{i}] is not finite"
                )));
            }
        }
        if let Some(i) = grid.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::InvalidProfile(format!(
                "grid is not strictly increasing at index {}",
                i + 1
            )));
        }
        if grid[0] < params.xi0 {
            return Err(Error::InvalidProfile(format!(
                "grid starts at {} below xi0 = {}",
                grid[0], params.xi0
            )));
        }
        Ok(Self {
            params,
            grid,
            theta,
            theta_prime,
            v,
            p,
        })
    }

    pub fn params(&self) -> &FlowParameters {
        &self.params
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn theta_prime(&self) -> &[f64] {
        &self.theta_prime
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn xi_range(&self) -> (f64, f64) {
        (self.grid[0], self.grid[self.grid.len() - 1])
    }

    /// Radial similarity velocity U = −θ′ at every node.
    pub fn u(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.uw_at(i).0).collect()
    }

    /// Axial similarity velocity W = θ − ξθ′ at every node.
    pub fn w(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.uw_at(i).1).collect()
    }

    pub fn uw_at(&self, i: usize) -> (f64, f64) {
        velocities_from_theta(self.theta[i], self.theta_prime[i], self.grid[i])
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}

/// Profile in the compact coordinate: x = ξ/√(1+ξ²), Θ̄ = −√(1+ξ²)θ, V̄ = V.
#[derive(Clone, Debug, PartialEq)]
pub struct CompactProfile {
    pub x: Vec<CompactCoordinate>,
    pub theta_bar: Vec<f64>,
    pub v_bar: Vec<f64>,
}

impl CompactProfile {
    pub fn x_values(&self) -> Vec<f64> {
        self.x.iter().map(|c| c.value()).collect()
    }
}

pub fn serrin_transform(profile: &SimilarityProfile) -> CompactProfile {
    let x: Vec<CompactCoordinate> = profile
        .grid()
        .iter()
        .map(|&xi| CompactCoordinate::from_xi(xi))
        .collect();
    let theta_bar = profile
        .grid()
        .iter()
        .zip(profile.theta())
        .map(|(&xi, &th)| -xi.hypot(1.0) * th)
        .collect();
    CompactProfile {
        x,
        theta_bar,
        v_bar: profile.v().to_vec(),
    }
}
