use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use varmin_core::certify::formulas::{h_ratio, long_interval_share};
use varmin_core::certify::{
    catalog, certify, certify_default, default_step, falsified_g_bound, lookup, ClaimKind, Face, InequalitySpec,
    Verdict,
};
use varmin_core::Error;

fn custom(domain: (f64, f64), exceptions: &[Face], f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> InequalitySpec {
    InequalitySpec {
        id: "custom".into(),
        claim: "test".into(),
        kind: ClaimKind::Bound,
        variables: vec!["x"],
        domain: vec![domain],
        exceptions: exceptions.to_vec(),
        margin: Arc::new(f),
        default_step: default_step(1),
        refinement: None,
        tolerance: 0.0,
    }
}

#[test]
fn ids_are_unique_and_resolvable() {
    let specs = catalog();
    let mut ids: Vec<&str> = specs.iter().map(|s| s.id.as_str()).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), specs.len());
    for s in &specs {
        assert_eq!(lookup(&s.id).unwrap().id, s.id);
        assert!((1..=3).contains(&s.arity()));
    }
    assert!(matches!(lookup("no_such_claim"), Err(Error::UnknownClaim(_))));
}

#[test]
fn h_spot_value() {
    let h = h_ratio(FRAC_PI_2);
    assert!((h - 0.118_054_014_886_460_8).abs() < 1e-15);
    assert!(h <= FRAC_PI_2.powi(2) / 12.0);
    assert!((FRAC_PI_2.powi(2) / 12.0 - 0.205_617).abs() < 1e-6);
}

#[test]
fn length_threshold_root() {
    // root of 0.45(2π−ℓ)ℓ³ = 4π(4−π) from a 30-digit solve
    let root = 1.741_045_370_262_260_8;
    assert!((long_interval_share(root) - 0.5).abs() < 1e-14);
    assert!(long_interval_share(1.74) < 0.5);
}

#[test]
fn g_lemma_certifies_with_refined_margin() {
    let r = certify_default(&lookup("g_sqrt_shifted_pi6").unwrap()).unwrap();
    assert_eq!(r.verdict, Verdict::Certified, "{r:?}");
    let fine = r.refinement.unwrap();
    assert_eq!(fine.step, 1e-6);
    assert!(fine.worst_margin >= 1e-5);
    // interior maximum of G(t, t+π/6): 0.662720640549070, margin 1.82026661e-5 (30-digit root of G')
    assert!((fine.worst_point[0] - 0.662_720_6).abs() < 2e-6, "{:?}", fine.worst_point);
    assert!((fine.worst_margin - 1.820_266e-5).abs() < 1e-10);
}

#[test]
fn tightened_g_lemma_is_violated() {
    let r = certify_default(&falsified_g_bound()).unwrap();
    assert_eq!(r.verdict, Verdict::Violated);
    let w = r.witness.unwrap();
    assert!(w[0] > 0.5 && w[0] < 0.8);
}

#[test]
fn boundary_zero_is_handled_by_face_rule() {
    let k = lookup("k_negative_beyond_half_pi").unwrap();
    let r = certify_default(&k).unwrap();
    assert_eq!(r.verdict, Verdict::Certified);
    let z = &r.exception_zones[0];
    assert!(z.probes_ok && z.min_inward_slope > 0.0);
    // k'(π/2) = −π/2
    assert!((z.min_inward_slope - FRAC_PI_2).abs() < 1e-3);

    // without the exception the zero at π/2 cannot pass the margin rule
    let mut bare = k.clone();
    bare.exceptions.clear();
    assert_ne!(certify_default(&bare).unwrap().verdict, Verdict::Certified);
}

#[test]
fn tiny_positive_margin_with_steep_slope_is_inconclusive() {
    let s = custom((0.0, 1.0), &[], |x| 1e-9 + 5.0 * (x[0] - 0.5).abs());
    let r = certify(&s, 1e-3).unwrap();
    assert_eq!(r.verdict, Verdict::Inconclusive);
    assert!(r.witness.is_some());
}

#[test]
fn negative_sample_is_violated_with_witness() {
    let s = custom((0.0, 1.0), &[], |x| x[0] - 0.3);
    let r = certify(&s, 1e-3).unwrap();
    assert_eq!(r.verdict, Verdict::Violated);
    assert_eq!(r.witness.unwrap(), vec![0.0]);
}

#[test]
fn wrong_exception_is_not_trusted() {
    // vanishes at 0 but decreases into the domain first
    let s = custom((0.0, 1.0), &[Face::lower(0)], |x| x[0] * (x[0] - 0.01));
    assert_eq!(certify(&s, 1e-4).unwrap().verdict, Verdict::Violated);
    // positive at the face: the face claim itself is wrong
    let s = custom((0.0, 1.0), &[Face::lower(0)], |x| 1.0 + x[0]);
    assert_eq!(certify(&s, 1e-3).unwrap().verdict, Verdict::Inconclusive);
}

#[test]
fn coarse_steps_are_rejected() {
    let s = lookup("tan_cubic_bound").unwrap();
    assert!(matches!(certify(&s, 0.01), Err(Error::InvalidInput(_))));
    assert!(certify(&s, 0.0).is_err());
    assert!(certify(&s, f64::NAN).is_err());
}

#[test]
fn reports_are_deterministic() {
    let s = lookup("f_lambda0_only_root_zero").unwrap();
    assert_eq!(certify_default(&s).unwrap(), certify_default(&s).unwrap());
}

#[test]
fn one_dimensional_catalog_certifies() {
    for s in catalog().iter().filter(|s| s.arity() == 1) {
        let r = certify_default(s).unwrap();
        assert_eq!(r.verdict, Verdict::Certified, "{}: {:?}", s.id, r.note);
        assert!(r.worst_margin > r.lipschitz_estimate * r.grid_step);
    }
}

#[test]
fn two_dimensional_catalog_certifies() {
    for s in catalog().iter().filter(|s| s.arity() == 2) {
        let r = certify_default(s).unwrap();
        assert_eq!(r.verdict, Verdict::Certified, "{}: {:?}", s.id, r.note);
    }
}

#[test]
fn nonfinite_margin_is_inconclusive() {
    let s = custom((0.0, PI), &[], |x| if x[0] > 3.0 { f64::NAN } else { 1.0 });
    let r = certify(&s, 1e-3).unwrap();
    assert_eq!(r.verdict, Verdict::Inconclusive);
    assert!(r.witness.unwrap()[0] > 3.0);
}
