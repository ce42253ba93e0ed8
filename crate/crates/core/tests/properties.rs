use proptest::prelude::*;

use swirl_core::jump::{
    certify_nonexistence, jump_ratio_half_space, sign_function_f, sign_function_j, CertifyOptions,
    Domain,
};
use swirl_core::similarity::{phi_compact, phi_prime};
use swirl_core::{phi, velocities_from_theta, x_to_xi, xi_to_x, CompactCoordinate};

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn phi_positive_increasing_and_bounded(a in 1e-8f64..1e8, t in 1e-6f64..1.0) {
        let b = a * (1.0 + t);
        prop_assert!(phi(a) > 0.0);
        // far out the increments fall below an ulp of 1/2
        if a < 1e3 {
            prop_assert!(phi(b) > phi(a));
        } else {
            prop_assert!(phi(b) >= phi(a) - f64::EPSILON);
        }
        prop_assert!(phi(b) <= 0.5);
        prop_assert!(phi_prime(a) > 0.0);
    }

    #[test]
    fn phi_prime_matches_central_difference(xi in -20.0f64..20.0) {
        let h = 1e-5;
        let fd = (phi(xi + h) - phi(xi - h)) / (2.0 * h);
        let exact = phi_prime(xi);
        prop_assert!(((fd - exact) / exact).abs() < 1e-6, "{} vs {}", fd, exact);
    }

    #[test]
    fn compact_round_trip(xi in -1e6f64..1e6) {
        let back = x_to_xi(xi_to_x(xi));
        prop_assert!((back - xi).abs() <= 1e-12 * xi.abs().max(1.0));
    }

    #[test]
    fn phi_in_compact_coordinate(x in 0.0f64..0.999) {
        let xi = x_to_xi(CompactCoordinate::new(x).unwrap());
        prop_assert!((phi(xi) - phi_compact(x)).abs() < 1e-10);
    }

    #[test]
    fn velocities_are_linear(
        t1 in -10.0f64..10.0, d1 in -10.0f64..10.0,
        t2 in -10.0f64..10.0, d2 in -10.0f64..10.0,
        a in -3.0f64..3.0, xi in 0.0f64..100.0,
    ) {
        let (u1, w1) = velocities_from_theta(t1, d1, xi);
        let (u2, w2) = velocities_from_theta(t2, d2, xi);
        let (u, w) = velocities_from_theta(a * t1 + t2, a * d1 + d2, xi);
        let scale = 1.0 + xi * 30.0;
        prop_assert!((u - (a * u1 + u2)).abs() < 1e-12 * scale);
        prop_assert!((w - (a * w1 + w2)).abs() < 1e-12 * scale);
    }

    #[test]
    fn half_space_ratio_negative(sigma in 1e-6f64..1e3) {
        prop_assert!(jump_ratio_half_space(sigma).unwrap().value < 0.0);
    }

    #[test]
    fn j_positive_inside(sigma in 1e-3f64..1e3, t in 0.001f64..0.999) {
        prop_assert!(sign_function_j(t * sigma, sigma).unwrap() > 0.0);
    }

    #[test]
    fn f_decreasing_on_each_branch(sigma in 0.05f64..20.0, a in 0.0f64..1.0, gap in 1e-3f64..5.0) {
        // right of -sigma
        let x1 = -sigma + 1e-3 + a * 3.0 * sigma;
        let x2 = x1 + gap;
        if (x1 - sigma).abs() > 1e-6 && (x2 - sigma).abs() > 1e-6 {
            prop_assert!(sign_function_f(x1, sigma).unwrap() > sign_function_f(x2, sigma).unwrap());
        }
        // left of -sigma
        let y2 = -sigma - 1e-3 - a * 3.0 * sigma;
        let y1 = y2 - gap;
        prop_assert!(sign_function_f(y1, sigma).unwrap() > sign_function_f(y2, sigma).unwrap());
    }

    #[test]
    fn no_admissible_sigma(xi0 in -5.0f64..5.0, lo in 0.01f64..5.0, span in 0.1f64..50.0) {
        let start = lo.max(xi0 + 0.01);
        let grid: Vec<f64> = (0..24)
            .map(|i| start + span * i as f64 / 23.0)
            .filter(|s| (s * s - xi0 * xi0).abs() > 1e-6)
            .collect();
        let opts = CertifyOptions { samples: 64, ..CertifyOptions::default() };
        let cert = certify_nonexistence(Domain::Conical { xi0 }, &grid, &opts).unwrap();
        prop_assert_eq!(cert.summary.n_admissible, 0);
    }
}

#[test]
fn j_vanishes_at_ends() {
    for &s in &[0.01, 0.7, 3.0, 250.0] {
        assert!(sign_function_j(0.0, s).unwrap().abs() < 1e-15);
        assert!(sign_function_j(s, s).unwrap().abs() < 1e-15);
    }
}

#[test]
fn phi_limit_at_infinity() {
    assert!((phi(1e8) - 0.5).abs() < 1e-15);
    assert!((phi(1e300) - 0.5).abs() < 1e-15);
}
