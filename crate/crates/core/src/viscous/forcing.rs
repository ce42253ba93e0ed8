//! The swirl forcing G(ξ) = ξ√(1+ξ²) ∫_ξ^∞ I(ζ)/(ζ²(1+ζ²)^{3/2}) dζ with
//! I(ζ) = ∫₀^ζ sV²(s) ds.
//!
//! In the angle w = atan ζ the outer integrand becomes (I/ζ²)·cos w, which is
//! bounded on the whole grid. Beyond the last node V is held at V∞, so I grows
//! like V∞²ζ²/2 and the rest of the outer integral is done in closed form.

use crate::error::{Error, Result};
use crate::numerics::PiecewiseCubic;

use super::check_xi_grid;

#[derive(Clone, Debug)]
pub struct SwirlForcing {
    xi: Vec<f64>,
    v_inf: f64,
    inner: PiecewiseCubic,
    outer: PiecewiseCubic,
    tail: f64,
    g_nodes: Vec<f64>,
    g_interp: PiecewiseCubic,
}

/// ∫_a^∞ dζ/(ζ²(1+ζ²)^{3/2}) and ∫_a^∞ dζ/(1+ζ²)^{3/2}.
fn tail_kernels(a: f64) -> (f64, f64) {
    let s = a.hypot(1.0);
    let d = s + a;
    (1.0 / (a * s * d * d), 1.0 / (s * d))
}

impl SwirlForcing {
    /// `xi` starts at 0 and increases strictly; `v` holds V on those nodes.
    pub fn new(xi: &[f64], v: &[f64], v_inf: f64) -> Result<Self> {
        check_xi_grid(xi)?;
        if v.len() != xi.len() {
            return Err(Error::InvalidParameter(format!(
                "swirl has {} samples, grid has {}",
                v.len(),
                xi.len()
            )));
        }
        if let Some(i) = v.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!("swirl sample {i} is not finite")));
        }
        if !v_inf.is_finite() {
            return Err(Error::InvalidParameter("v_inf must be finite".into()));
        }
        let flux: Vec<f64> = xi.iter().zip(v).map(|(&t, &vv)| t * vv * vv).collect();
        let inner = PiecewiseCubic::new(xi, &flux);
        let big_i = inner.cumulative();
        let u: Vec<f64> = xi.iter().map(|t| t.atan()).collect();
        let kernel: Vec<f64> = (0..xi.len())
            .map(|i| {
                if xi[i] == 0.0 {
                    0.5 * v[0] * v[0]
                } else {
                    big_i[i] / (xi[i] * xi[i]) * u[i].cos()
                }
            })
            .collect();
        let outer = PiecewiseCubic::new(&u, &kernel);
        let m = xi.len() - 1;
        let a = xi[m];
        let (ka, kb) = tail_kernels(a);
        let tail = (big_i[m] - 0.5 * v_inf * v_inf * a * a) * ka + 0.5 * v_inf * v_inf * kb;
        let g_nodes: Vec<f64> = (0..xi.len())
            .map(|i| xi[i] * xi[i].hypot(1.0) * (outer.remaining()[i] + tail))
            .collect();
        let g_interp = PiecewiseCubic::new(&u, &g_nodes);
        Ok(Self {
            xi: xi.to_vec(),
            v_inf,
            inner,
            outer,
            tail,
            g_nodes,
            g_interp,
        })
    }

    /// G on the grid nodes.
    pub fn nodes(&self) -> &[f64] {
        &self.g_nodes
    }

    /// I(ξ) = ∫₀^ξ sV² ds on the grid nodes.
    pub fn swirl_flux(&self) -> &[f64] {
        self.inner.cumulative()
    }

    /// G(ξ) for any ξ ≥ 0, integrating the interpolated kernel exactly.
    pub fn eval(&self, xi: f64) -> f64 {
        if xi <= 0.0 {
            return 0.0;
        }
        let m = self.xi.len() - 1;
        let xm = self.xi[m];
        let t = if xi <= xm {
            self.outer.integral_from(xi.atan()) + self.tail
        } else {
            let vi2 = self.v_inf * self.v_inf;
            let big_i = self.inner.total() + 0.5 * vi2 * (xi - xm) * (xi + xm);
            let (ka, kb) = tail_kernels(xi);
            (big_i - 0.5 * vi2 * xi * xi) * ka + 0.5 * vi2 * kb
        };
        xi * xi.hypot(1.0) * t
    }

    /// Cheap nodal interpolant of G in the angle u = atan ξ.
    pub fn eval_angle(&self, u: f64) -> f64 {
        self.g_interp.eval(u)
    }
}

/// G(ξ) for swirl samples `v` on `grid`, with V ≡ `v_inf` beyond the grid.
pub fn compute_g(grid: &[f64], v: &[f64], v_inf: f64, xi: f64) -> Result<f64> {
    Ok(SwirlForcing::new(grid, v, v_inf)?.eval(xi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::similarity::phi;
    use crate::viscous::SolverGrid;

    #[test]
    fn zero_swirl_gives_zero() {
        let g = SolverGrid::new(0.999, 64).unwrap();
        let f = SwirlForcing::new(&g.xi, &vec![0.0; 64], 0.0).unwrap();
        assert!(f.nodes().iter().all(|&x| x == 0.0));
        assert_eq!(f.eval(3.0), 0.0);
    }

    #[test]
    fn constant_swirl_reproduces_shape_function() {
        let g = SolverGrid::new(1.0 - 1e-8, 2048).unwrap();
        for &v0 in &[0.5, 1.0, 2.0] {
            let f = SwirlForcing::new(&g.xi, &vec![v0; g.len()], v0).unwrap();
            assert_eq!(f.eval(0.0), 0.0);
            for &xi in &[0.01, 0.3, 1.0, 7.5, 100.0, 5e4] {
                let want = 0.5 * v0 * v0 * phi(xi);
                let got = f.eval(xi);
                assert!(((got - want) / want).abs() < 1e-10, "v0={v0} xi={xi}: {got} vs {want}");
            }
            assert!((compute_g(&g.xi, &vec![2.0; g.len()], 2.0, 1.0).unwrap() - 0.82842712).abs() < 5e-9);
        }
    }

    #[test]
    fn rejects_bad_swirl() {
        let g = SolverGrid::new(0.9, 16).unwrap();
        let mut v = vec![1.0; 16];
        v[3] = f64::INFINITY;
        assert!(SwirlForcing::new(&g.xi, &v, 1.0).is_err());
        assert!(SwirlForcing::new(&g.xi, &v[..4], 1.0).is_err());
        assert!(SwirlForcing::new(&g.xi[1..], &vec![1.0; 15], 1.0).is_err());
    }

    #[test]
    fn nonconstant_swirl_against_quadrature() {
        use crate::numerics::adaptive_simpson;
        // V = x = ξ/√(1+ξ²): I = (ξ² − ln(1+ξ²))/2
        let g = SolverGrid::new(1.0 - 1e-8, 2048).unwrap();
        let f = SwirlForcing::new(&g.xi, &g.x, 1.0).unwrap();
        let big_i = |z: f64| 0.5 * (z * z - z.mul_add(z, 1.0).ln());
        for xi in [0.2f64, 1.0, 10.0] {
            // substitute ζ = tan w
            let t = adaptive_simpson(
                |w: f64| {
                    let z = w.tan();
                    big_i(z) / (z * z) * w.cos()
                },
                xi.atan(),
                std::f64::consts::FRAC_PI_2 - 1e-9,
                1e-13,
            );
            let want = xi * xi.hypot(1.0) * t;
            assert!(((f.eval(xi) - want) / want).abs() < 1e-7, "{xi}: {} vs {want}", f.eval(xi));
        }
    }
}
