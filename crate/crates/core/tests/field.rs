use swirl_core::field::{cell_centres, write_csv};
use swirl_core::grid::{angular_grid, uniform_grid};
use swirl_core::{
    euler_continuous, picard_solve, reconstruct, Branch, FlowParameters, PhysicalField,
    SimilarityProfile, SolverConfig,
};

// max |(1/r)∂(ru)/∂r + ∂w/∂z| over interior points, central differences
fn max_divergence(f: &PhysicalField) -> f64 {
    let (nr, nz) = (f.nr(), f.nz());
    let mut worst: f64 = 0.0;
    for ir in 1..nr - 1 {
        for iz in 1..nz - 1 {
            let r = f.r_grid[ir];
            let dr = f.r_grid[ir + 1] - f.r_grid[ir - 1];
            let dz = f.z_grid[iz + 1] - f.z_grid[iz - 1];
            let ru = |i: usize| f.r_grid[i] * f.u[f.index(i, iz)];
            let div = (ru(ir + 1) - ru(ir - 1)) / (dr * r)
                + (f.w[f.index(ir, iz + 1)] - f.w[f.index(ir, iz - 1)]) / dz;
            worst = worst.max(div.abs());
        }
    }
    worst
}

fn divergence_at(profile: &SimilarityProfile, h: f64) -> f64 {
    let n = (1.0 / h).round() as usize + 1;
    let r = uniform_grid(1.0, 2.0, n).unwrap();
    let z = uniform_grid(1.0, 2.0, n).unwrap();
    max_divergence(&reconstruct(profile, &r, &z).unwrap())
}

#[test]
fn euler_field_is_divergence_free() {
    let g = angular_grid(1e-4, 1e3, 20001).unwrap();
    let prof = euler_continuous(&FlowParameters::inviscid(1.0, 1.0, Branch::Positive), &g).unwrap();
    let coarse = divergence_at(&prof, 1e-2);
    let fine = divergence_at(&prof, 5e-3);
    assert!(coarse < 1e-4, "{coarse:e}");
    assert!(coarse / fine > 3.0, "{coarse:e} -> {fine:e}");
}

#[test]
fn viscous_field_is_divergence_free() {
    let s = picard_solve(&FlowParameters::viscous(1.0, 1.0, 1.0), &SolverConfig::default()).unwrap();
    let coarse = divergence_at(&s.profile, 1e-2);
    let fine = divergence_at(&s.profile, 5e-3);
    assert!(coarse < 1e-4, "{coarse:e}");
    assert!(coarse / fine > 3.0, "{coarse:e} -> {fine:e}");
}

#[test]
fn csv_round_trip() {
    let g = angular_grid(1e-4, 1e3, 2001).unwrap();
    let prof = euler_continuous(&FlowParameters::inviscid(1.0, 1.0, Branch::Negative), &g).unwrap();
    let f = reconstruct(&prof, &cell_centres(0.1, 2.0, 7).unwrap(), &cell_centres(0.0, 2.0, 5).unwrap()).unwrap();
    let mut buf = Vec::new();
    write_csv(&f, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|s| s.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 35);
    for (ir, &r) in f.r_grid.iter().enumerate() {
        for (iz, &z) in f.z_grid.iter().enumerate() {
            let k = f.index(ir, iz);
            let row = &rows[k];
            assert_eq!(row, &vec![r, z, f.u[k], f.v[k], f.w[k], f.p[k]]);
        }
    }
}

#[test]
fn homogeneity_of_viscous_field() {
    let s = picard_solve(&FlowParameters::viscous(1.0, 1.0, 1.0), &SolverConfig::default()).unwrap();
    let r = [0.3, 0.9, 1.7];
    let z = [0.1, 0.8, 1.9];
    let lam = 2.5;
    let a = reconstruct(&s.profile, &r, &z).unwrap();
    let b = reconstruct(&s.profile, &r.map(|x| lam * x), &z.map(|x| lam * x)).unwrap();
    for k in 0..9 {
        assert!((a.u[k] - lam * b.u[k]).abs() < 1e-12);
        assert!((a.v[k] - lam * b.v[k]).abs() < 1e-12);
        assert!((a.w[k] - lam * b.w[k]).abs() < 1e-12);
        assert!((a.p[k] - lam * lam * b.p[k]).abs() < 1e-12);
    }
}
