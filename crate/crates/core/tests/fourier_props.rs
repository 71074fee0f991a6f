use std::f64::consts::PI;

use proptest::prelude::*;
use varmin_core::fourier::{energy_numerator, l1_norm, rayleigh_j};
use varmin_core::FourierSeries;

fn series(max_mode: usize) -> impl Strategy<Value = FourierSeries> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), max_mode - 1).prop_map(move |modes| {
        let mut s = FourierSeries::zeros(max_mode);
        for (i, (a, b)) in modes.into_iter().enumerate() {
            let k = i + 2;
            s.set_mode(k, a / k as f64, b / k as f64);
        }
        s
    })
}

const GRID: usize = 512;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quotient_is_scale_invariant(u in series(12), c in prop_oneof![-50.0f64..-0.01, 0.01f64..50.0]) {
        let j = rayleigh_j(&u, GRID).unwrap();
        let jc = rayleigh_j(&u.scaled(c), GRID).unwrap();
        prop_assert!((j - jc).abs() <= 1e-11 * j);
    }

    #[test]
    fn quotient_is_translation_invariant(u in series(12), shift in -PI..PI) {
        let j = rayleigh_j(&u, GRID).unwrap();
        let jt = rayleigh_j(&u.translated(shift), GRID).unwrap();
        prop_assert!((j - jt).abs() <= 1e-10 * j);
    }

    #[test]
    fn quotient_respects_cauchy_schwarz(u in series(16)) {
        prop_assert!(rayleigh_j(&u, GRID).unwrap() >= 3.0 / (2.0 * PI) - 1e-12);
    }

    #[test]
    fn projection_is_idempotent(cos in prop::collection::vec(-1.0f64..1.0, 7), sin in prop::collection::vec(-1.0f64..1.0, 6)) {
        let u = FourierSeries::from_coefficients(cos, sin).unwrap();
        let p = u.project_constraints();
        prop_assert_eq!(p.project_constraints(), p.clone());
        prop_assert!(p.check_constraints().is_ok());
        for k in 2..=6 {
            prop_assert_eq!((p.a(k), p.b(k)), (u.a(k), u.b(k)));
        }
    }

    #[test]
    fn energy_matches_quadrature(u in series(10)) {
        // trapezoid is exact for trigonometric polynomials of degree < M
        let v = u.sample(64).unwrap();
        let d = u.sample_derivative(64).unwrap();
        let q: f64 = v.values().iter().zip(d.values()).map(|(x, y)| y * y - x * x).sum::<f64>() * v.step();
        let e = energy_numerator(&u).unwrap();
        prop_assert!((q - e).abs() <= 1e-12 * e.abs().max(1.0));
    }

    #[test]
    fn exact_l1_beats_fine_rectangle_rule(u in series(8)) {
        let exact = l1_norm(&u, 256).unwrap();
        let fine = u.sample(1 << 16).unwrap();
        let rect: f64 = fine.values().iter().map(|x| x.abs()).sum::<f64>() * fine.step();
        prop_assert!((exact - rect).abs() <= 1e-6 * exact);
    }
}

#[test]
fn cos2_is_not_minimal() {
    // J(cos 2θ) = 3π/16 ≈ 0.589 exceeds the minimum 0.58247
    let u = FourierSeries::zeros(2).with_mode(2, 1.0, 0.0);
    let j = rayleigh_j(&u, 64).unwrap();
    assert!((j - 3.0 * PI / 16.0).abs() < 1e-14);
    assert!(j > varmin_core::MINIMUM_VALUE);
}

#[test]
fn constraint_violations_are_rejected() {
    let u = FourierSeries::zeros(3).with_mode(1, 0.5, 0.0).with_mode(3, 1.0, 0.0);
    assert!(energy_numerator(&u).is_err());
    assert!(rayleigh_j(&FourierSeries::zeros(4), 64).is_err());
}
