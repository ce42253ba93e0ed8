use swirl_core::viscous::{parameter_sweep, sweep_csv, sweep_points};
use swirl_core::{picard_solve, Error, FlowParameters, SolverConfig};

fn sup(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

#[test]
fn rest_state_in_one_iteration() {
    for &nu in &[0.1, 1.0, 10.0] {
        let s = picard_solve(&FlowParameters::viscous(nu, 0.0, 0.0), &SolverConfig::default()).unwrap();
        assert_eq!(s.convergence.iterations, 1);
        let p = &s.profile;
        assert!(p.theta().iter().chain(p.v()).chain(p.p()).all(|&x| x == 0.0));
    }
}

#[test]
fn boundary_behaviour_of_converged_profile() {
    let s = picard_solve(&FlowParameters::viscous(1.0, 1.0, 1.0), &SolverConfig::default()).unwrap();
    let p = &s.profile;
    let n = p.len();
    assert!(s.convergence.theta_prime_at_origin.abs() < 1e-8);
    let xi_max = p.grid()[n - 1];
    let far = p.theta_prime()[n - 1].abs() * (1.0 + xi_max * xi_max);
    assert!(far.is_finite() && far < 10.0, "{far}");
    assert!(s.convergence.residual_2_5a < 1e-6);
    assert!(s.convergence.residual_2_5b < 1e-6);
}

#[test]
fn damping_does_not_change_the_answer() {
    let params = FlowParameters::viscous(1.0, 1.0, 1.0);
    let base = SolverConfig::default();
    let a = picard_solve(&params, &base).unwrap();
    let b = picard_solve(&params, &SolverConfig { damping: 1.0, ..base }).unwrap();
    let d = sup(a.profile.theta(), b.profile.theta());
    assert!(d < 10.0 * base.picard_tol, "{d:e}");
}

#[test]
fn large_viscosity_approaches_zero_theta_oracle() {
    let v_inf = 1.5;
    let s = picard_solve(&FlowParameters::viscous(1e3, v_inf, 0.5), &SolverConfig::default()).unwrap();
    let p = &s.profile;
    let gap = p
        .grid()
        .iter()
        .zip(p.v())
        .fold(0.0f64, |m, (&xi, &v)| m.max((v - v_inf * xi / xi.hypot(1.0)).abs()));
    assert!(gap < 1e-3, "{gap:e}");
}

#[test]
fn solves_are_bit_identical() {
    let params = FlowParameters::viscous(0.5, -1.0, 0.5);
    let cfg = SolverConfig {
        n_grid: 512,
        ..SolverConfig::default()
    };
    let a = picard_solve(&params, &cfg).unwrap().to_json().unwrap();
    let b = picard_solve(&params, &cfg).unwrap().to_json().unwrap();
    assert_eq!(a, b);
}

#[test]
fn sweep_records_every_point_in_order() {
    let cfg = SolverConfig {
        n_grid: 512,
        ..SolverConfig::default()
    };
    let pts = sweep_points(&[0.1, 1.0], &[-2.0, 2.0], &[-1.0, 1.0]);
    let recs = parameter_sweep(&pts, &cfg);
    assert_eq!(recs.len(), 8);
    for (r, &(nu, vi, e0)) in recs.iter().zip(&pts) {
        assert_eq!((r.nu, r.v_inf, r.e0), (nu, vi, e0));
        assert!(r.converged == r.failure.is_none());
        assert!(r.converged == r.regime.is_some());
    }
    assert_eq!(sweep_csv(&recs), sweep_csv(&parameter_sweep(&pts, &cfg)));
}

#[test]
fn near_inviscid_run_fails_cleanly() {
    let err = picard_solve(&FlowParameters::viscous(1e-9, 1.0, 1.0), &SolverConfig::default()).unwrap_err();
    assert!(
        matches!(err, Error::BlowUp { .. } | Error::MaxItersExceeded { .. } | Error::IntegratorStalled { .. }),
        "{err}"
    );
}

#[test]
fn axis_swirl_override() {
    let cfg = SolverConfig {
        n_grid: 512,
        swirl_at_axis_plane: 0.5,
        ..SolverConfig::default()
    };
    let s = picard_solve(&FlowParameters::viscous(1.0, 1.0, 0.0), &cfg).unwrap();
    assert_eq!(s.profile.v()[0], 0.5);
    assert!(s.convergence.residual_2_5b < 1e-6);
}

#[test]
fn swirl_ladder_shows_three_regimes() {
    use swirl_core::{classify_regime, RegimeLabel};
    let cfg = SolverConfig::default();
    let label = |v_inf: f64| {
        let s = picard_solve(&FlowParameters::viscous(1.0, v_inf, -1.0), &cfg).unwrap();
        assert!(s.convergence.residual_2_5a < 1e-6 && s.convergence.residual_2_5b < 1e-6);
        classify_regime(&s.profile)
    };
    assert_eq!(label(1.0), RegimeLabel::InwardUpward);
    assert_eq!(label(2.0), RegimeLabel::InwardDownward);
    assert_eq!(label(3.0), RegimeLabel::OutwardDownward);
}
