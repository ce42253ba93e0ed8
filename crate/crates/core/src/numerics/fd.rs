//! Finite-difference derivatives on arbitrary grids (Fornberg weights).

/// Weights for derivatives of order `0..=max_order` at `z` from the stencil
/// `x`. Returns `w[order][j]`.
pub fn fornberg_weights(z: f64, x: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// First and second derivatives of sampled `f` at every node, using a
/// five-point stencil (centred in the interior, one-sided at the ends).
pub fn derivatives_5pt(t: &[f64], f: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = t.len();
    assert!(n >= 5 && f.len() == n);
    let mut d1 = vec![0.0; n];
    let mut d2 = vec![0.0; n];
    for i in 0..n {
        let start = i.saturating_sub(2).min(n - 5);
        let w = fornberg_weights(t[i], &t[start..start + 5], 2);
        for j in 0..5 {
            d1[i] += w[1][j] * f[start + j];
            d2[i] += w[2][j] * f[start + j];
        }
    }
    (d1, d2)
}
