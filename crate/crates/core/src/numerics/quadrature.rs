//! Quadrature on sampled data and on closures.

/// Adaptive Simpson quadrature with Richardson correction.
///
/// Stops refining an interval once the two-level difference is below
/// `15 * tol` scaled to the interval, or at depth 50.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Piecewise cubic through sampled data, one local cubic per interval.
///
/// On interval `[t_i, t_{i+1}]` the cubic interpolates the four nearest nodes
/// (`i-1..=i+2`, shifted inwards at the ends), so values are reproduced at the
/// nodes and cubics are integrated exactly. Accuracy is fourth order in the
/// local spacing. Grids with two or three nodes fall back to linear and
/// quadratic pieces.
#[derive(Clone, Debug)]
pub struct PiecewiseCubic {
    nodes: Vec<f64>,
    // monomial coefficients in (t - t_i) for each interval
    coeffs: Vec<[f64; 4]>,
    // integral from nodes[0] to nodes[i]
    cumulative: Vec<f64>,
    // integral from nodes[i] to the last node, summed from the far end
    remaining: Vec<f64>,
}

impl PiecewiseCubic {
    /// `nodes` must be strictly increasing and have the same length as
    /// `values` (at least 2). Callers validate; this panics on misuse.
    pub fn new(nodes: &[f64], values: &[f64]) -> Self {
        let n = nodes.len();
        assert!(n >= 2 && values.len() == n, "need >= 2 matching samples");
        let width = n.min(4);
        let mut coeffs = Vec::with_capacity(n - 1);
        let mut cumulative = Vec::with_capacity(n);
        cumulative.push(0.0);
        for i in 0..n - 1 {
            let start = i.saturating_sub(1).min(n - width);
            let origin = nodes[i];
            let c = local_monomials(
                &nodes[start..start + width],
                &values[start..start + width],
                origin,
            );
            let h = nodes[i + 1] - origin;
            let area = integrate_monomials(&c, h);
            cumulative.push(cumulative[i] + area);
            coeffs.push(c);
        }
        let mut remaining = vec![0.0; n];
        for i in (0..n - 1).rev() {
            let h = nodes[i + 1] - nodes[i];
            remaining[i] = remaining[i + 1] + integrate_monomials(&coeffs[i], h);
        }
        Self {
            nodes: nodes.to_vec(),
            coeffs,
            cumulative,
            remaining,
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    fn interval(&self, t: f64) -> usize {
        let n = self.nodes.len();
        let k = self.nodes.partition_point(|&v| v <= t);
        k.clamp(1, n - 1) - 1
    }

    /// Interpolated value; extrapolates the end cubics outside the node range.
    pub fn eval(&self, t: f64) -> f64 {
        let i = self.interval(t);
        let y = t - self.nodes[i];
        let c = &self.coeffs[i];
        ((c[3] * y + c[2]) * y + c[1]) * y + c[0]
    }

    /// ∫ from the first node to node `i`.
    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn total(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// ∫ from the first node to `t`.
    pub fn integral_to(&self, t: f64) -> f64 {
        let i = self.interval(t);
        let y = t - self.nodes[i];
        self.cumulative[i] + integrate_monomials(&self.coeffs[i], y)
    }

    /// ∫ from node `i` to the last node.
    pub fn remaining(&self) -> &[f64] {
        &self.remaining
    }

    /// ∫ from `t` to the last node. Accurate to rounding relative to the
    /// result itself, even when it is tiny compared with the total.
    pub fn integral_from(&self, t: f64) -> f64 {
        let i = self.interval(t);
        let c = &self.coeffs[i];
        let h = self.nodes[i + 1] - self.nodes[i];
        let y = t - self.nodes[i];
        self.remaining[i + 1] + (integrate_monomials(c, h) - integrate_monomials(c, y))
    }
}

fn integrate_monomials(c: &[f64; 4], h: f64) -> f64 {
    h * (c[0] + h * (c[1] / 2.0 + h * (c[2] / 3.0 + h * c[3] / 4.0)))
}

// Newton divided differences, expanded to monomials in (t - origin).
fn local_monomials(t: &[f64], f: &[f64], origin: f64) -> [f64; 4] {
    let m = t.len();
    let y: Vec<f64> = t.iter().map(|&v| v - origin).collect();
    let mut dd = f.to_vec();
    for level in 1..m {
        for k in (level..m).rev() {
            dd[k] = (dd[k] - dd[k - 1]) / (y[k] - y[k - level]);
        }
    }
    // Horner on the Newton form: p = dd[m-1]; p = p*(y - y[k]) + dd[k]
    let mut poly = [0.0f64; 4];
    poly[0] = dd[m - 1];
    let mut degree = 0;
    for k in (0..m - 1).rev() {
        // poly <- poly * (t - y[k]) + dd[k]
        let mut next = [0.0f64; 4];
        for d in 0..=degree {
            next[d + 1] += poly[d];
            next[d] -= poly[d] * y[k];
        }
        next[0] += dd[k];
        poly = next;
        degree += 1;
    }
    poly
}
