use super::*;
use core::f64::consts::{PI, TAU};
use proptest::prelude::*;

fn poly(c: &[f64]) -> RealPoly {
    RealPoly::new(c.to_vec())
}

fn sin1() -> TrigPoly {
    TrigPoly::sine(1, 1.0)
}

fn sin_sq() -> TrigPoly {
    TrigPoly::new(0.5, vec![0.0, -0.5], vec![])
}

#[test]
fn construct_examples() {
    let (a, b) = construct_from_witness(&poly(&[0.0, 2.0]), &poly(&[1.0]), &sin1()).unwrap();
    assert!(a.max_coeff_diff(&TrigPoly::sine(2, 1.0)) < 1e-15);
    assert!(b.max_coeff_diff(&TrigPoly::cosine(1, 1.0)) < 1e-15);

    let (a, b) =
        construct_from_witness(&RealPoly::zero(), &poly(&[1.0]), &TrigPoly::cosine(1, -1.0))
            .unwrap();
    assert!(a.is_zero());
    assert!(b.max_coeff_diff(&sin1()) < 1e-15);

    let (a, b) = construct_from_witness(&RealPoly::x(), &RealPoly::x(), &sin1()).unwrap();
    assert!(a.max_coeff_diff(&TrigPoly::sine(2, 0.5)) < 1e-15);
    assert_eq!(a, b);

    assert_eq!(
        construct_from_witness(&RealPoly::x(), &RealPoly::x(), &TrigPoly::constant(2.0)),
        Err(Error::ConstantInner)
    );
}

#[test]
fn construct_gives_zero_mean() {
    let h = TrigPoly::new(0.3, vec![0.2, -1.0], vec![0.7, 0.1]);
    let (a, b) =
        construct_from_witness(&poly(&[0.5, -1.0, 2.0]), &poly(&[1.0, 0.0, 0.0, 3.0]), &h).unwrap();
    assert!(a.mean().abs() < 1e-14 && b.mean().abs() < 1e-14);
}

#[test]
fn verify_examples() {
    let a = TrigPoly::sine(2, 1.0);
    let b = TrigPoly::cosine(1, 1.0);
    let good = CompositionWitness::new(poly(&[0.0, 2.0]), poly(&[1.0]), sin1());
    assert!(verify_witness(&a, &b, &good) < 1e-15);
    let bad = CompositionWitness::new(RealPoly::x(), poly(&[1.0]), sin1());
    assert!((verify_witness(&a, &b, &bad) - 0.5).abs() < 1e-15);
    let w = CompositionWitness::new(RealPoly::zero(), poly(&[1.0]), TrigPoly::cosine(1, -1.0));
    assert!(verify_witness(&TrigPoly::zero(), &sin1(), &w) < 1e-15);
}

#[test]
fn solve_outer_examples() {
    let p = solve_outer_poly(&sin_sq(), &sin1()).unwrap();
    assert!(p.max_coeff_diff(&poly(&[0.0, 0.0, 1.0])) < 1e-12);
    let p = solve_outer_poly(&sin1(), &sin1()).unwrap();
    assert!(p.max_coeff_diff(&RealPoly::x()) < 1e-12);
    match solve_outer_poly(&TrigPoly::cosine(1, 1.0), &sin1()) {
        Err(Error::NoSolution { residual }) => assert!(residual > 0.5),
        other => panic!("unexpected {other:?}"),
    }
}

/// Brute force over degree-one inner factors `cos θ cos t + sin θ sin t`:
/// the directions `θ ∈ [0, π)` for which `f` is a polynomial in the factor.
fn exact_directions(f: &TrigPoly) -> alloc::vec::Vec<f64> {
    (0..3600)
        .map(|i| PI * i as f64 / 3600.0)
        .filter(|theta| {
            let h = TrigPoly::new(0.0, vec![theta.cos()], vec![theta.sin()]);
            solve_outer_with_residual(f, &h).is_ok_and(|(_, r)| r < 1e-9)
        })
        .collect()
}

/// Direction of a degree-one factor, folded into `[0, π)`.
fn direction(h: &TrigPoly) -> f64 {
    let theta = h.sin_coeff(1).atan2(h.cos_coeff(1));
    theta.rem_euclid(PI)
}

#[test]
fn peel_sin_squared() {
    // Hand expansion: eta_1^2 = -1/4 gives eta_1 = ±i/2, i.e. H = ±sin t. With a
    // leading coefficient -1 for P, eta_1^2 = 1/4 adds H = ±cos t (sin^2 = 1 - cos^2).
    let oracle = exact_directions(&sin_sq());
    assert_eq!(oracle, vec![0.0, PI / 2.0]);
    let c = peel_candidates(&sin_sq(), 1);
    assert_eq!(c.len(), 4);
    assert!(c.iter().any(|h| h.max_coeff_diff(&sin1()) < 1e-12));
    assert!(c.iter().any(|h| h.max_coeff_diff(&-sin1()) < 1e-12));
    for h in &c {
        assert!(oracle.iter().any(|d| (d - direction(h)).abs() < 1e-12));
        assert!((h.norm_inf() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn peel_cos_two_t() {
    // cos 2t = 2cos^2 t - 1 = 1 - 2sin^2 t; the normalised factors are ±sqrt(2) cos t
    // and ±sqrt(2) sin t.
    let f = TrigPoly::cosine(2, 1.0);
    let oracle = exact_directions(&f);
    let c = peel_candidates(&f, 1);
    assert!(c.iter().any(|h| (h.cos_coeff(1) - 2f64.sqrt()).abs() < 1e-12));
    for h in &c {
        assert!(oracle.iter().any(|d| (d - direction(h)).abs() < 1e-12));
        assert!((h.norm_inf() - 2f64.sqrt()).abs() < 1e-12);
        let p = solve_outer_poly(&f, h).unwrap();
        assert!(compose_poly(&p, h).max_coeff_diff(&f) < 1e-12);
    }
}

#[test]
fn peel_degree_one_is_identity() {
    let c = peel_candidates(&sin1(), 1);
    assert_eq!(c.len(), 1);
    assert!(c[0].max_coeff_diff(&sin1()) < 1e-12);
}

#[test]
fn peel_negative_leading_coefficient() {
    // -h^2 with h of degree 2 needs P with leading coefficient -1.
    let h = TrigPoly::new(0.0, vec![0.3, 1.0], vec![-0.4, 0.2]);
    let f = -&(&h * &h);
    let c = peel_candidates(&f, 2);
    assert!(!c.is_empty());
    for g in &c {
        assert!(solve_outer_poly(&f, g).is_ok());
    }
}

#[test]
fn witness_for_composition_example() {
    let out = find_common_witness(&TrigPoly::sine(2, 1.0), &TrigPoly::cosine(1, 1.0)).unwrap();
    let w = out.witness().expect("witness");
    assert!(out.residual < 1e-10);
    assert_eq!(w.h.degree(), 1);
    let (a, b) = construct_from_witness(&w.p, &w.q, &w.h).unwrap();
    assert!(a.max_coeff_diff(&TrigPoly::sine(2, 1.0)) < 1e-10);
    assert!(b.max_coeff_diff(&TrigPoly::cosine(1, 1.0)) < 1e-10);
}

#[test]
fn witness_when_a_vanishes() {
    let out = find_common_witness(&TrigPoly::zero(), &sin1()).unwrap();
    let w = out.witness().unwrap();
    assert!(w.p.is_zero());
    assert!(w.q.max_coeff_diff(&poly(&[1.0])) < 1e-15);
    assert!(w.h.max_coeff_diff(&TrigPoly::cosine(1, -1.0)) < 1e-15);
}

#[test]
fn no_witness_for_perturbed_system() {
    let a = TrigPoly::cosine(4, 0.1);
    let out = find_common_witness(&a, &sin1()).unwrap();
    assert_eq!(out.kind, OutcomeKind::None);
    assert_eq!(out.frequency_factor, 1);
    // Exhaustive oracle: B = 1 - cos t has degree 1, so any inner factor is affine in
    // cos t, and A = sin(4t)/40 is odd while every polynomial in cos t is even.
    let big_a = a.antiderivative().trig;
    assert!(solve_outer_poly(&big_a, &TrigPoly::cosine(1, 1.0)).is_err());
}

#[test]
fn frequency_factor_without_witness() {
    let out = find_common_witness(&TrigPoly::sine(2, 1.0), &TrigPoly::cosine(2, 1.0)).unwrap();
    assert_eq!(out.kind, OutcomeKind::FrequencyFactor { k: 2 });
    assert_eq!(out.frequency_factor, 2);
}

#[test]
fn frequency_factor_branch_is_recorded() {
    // Coefficients built from polynomials in 2t only.
    let h = TrigPoly::new(0.0, vec![0.0, 1.0], vec![0.0, 0.5]);
    let (a, b) = construct_from_witness(&poly(&[0.3, 1.0]), &poly(&[1.0, 0.0, -0.5]), &h).unwrap();
    let out = find_common_witness(&a, &b).unwrap();
    assert_eq!(out.frequency_factor, 2);
    let w = out.witness().expect("witness through the compressed search");
    assert!(verify_witness(&a, &b, w) < 1e-9);
}

#[test]
fn nonzero_mean_rules_out_witness() {
    let a = TrigPoly::new(0.1, vec![1.0], vec![]);
    let out = find_common_witness(&a, &sin1()).unwrap();
    assert_eq!(out.kind, OutcomeKind::None);
}

#[test]
fn both_zero_is_an_error() {
    assert_eq!(find_common_witness(&TrigPoly::zero(), &TrigPoly::zero()), Err(Error::BothZero));
}

prop_compose! {
    fn arb_witness()(
        p in proptest::collection::vec(-1.0..1.0f64, 1..=4),
        q in proptest::collection::vec(-1.0..1.0f64, 1..=4),
        dh in 1usize..=2,
    )(
        h_cos in proptest::collection::vec(-1.0..1.0f64, dh),
        h_sin in proptest::collection::vec(-1.0..1.0f64, dh),
        p in Just(p), q in Just(q),
    ) -> CompositionWitness {
        CompositionWitness::new(RealPoly::new(p), RealPoly::new(q), TrigPoly::new(0.0, h_cos, h_sin))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witness_round_trip(w in arb_witness()) {
        prop_assume!(w.h.degree() >= 1 && w.h.norm_inf() > 0.1);
        let (a, b) = construct_from_witness(&w.p, &w.q, &w.h).unwrap();
        prop_assume!(b.zeros().map(|z| z.all_simple()).unwrap_or(false));
        let out = find_common_witness(&a, &b).unwrap();
        let found = out.witness();
        prop_assert!(found.is_some(), "no witness for {:?}", w);
        prop_assert!(verify_witness(&a, &b, found.unwrap()) < 1e-8);
    }

    #[test]
    fn peel_soundness(w in arb_witness()) {
        prop_assume!(w.h.norm_inf() > 0.1);
        let big_a = compose_poly(&w.p.antiderivative(), &w.h);
        prop_assume!(!big_a.is_constant());
        for d in (1..=big_a.degree()).filter(|d| big_a.degree().is_multiple_of(*d)) {
            for h in peel_candidates(&big_a, d) {
                prop_assert!(solve_outer_poly(&big_a, &h).is_ok());
            }
        }
    }

    #[test]
    fn translation_covariance(w in arb_witness(), tau in 0.0..TAU) {
        prop_assume!(w.h.norm_inf() > 0.1);
        let (a, b) = construct_from_witness(&w.p, &w.q, &w.h).unwrap();
        let shifted = CompositionWitness::new(w.p.clone(), w.q.clone(), w.h.time_shift(tau));
        let r = verify_witness(&a.time_shift(tau), &b.time_shift(tau), &shifted);
        prop_assert!(r < 1e-9 * (1.0 + a.norm_inf() + b.norm_inf()));
    }
}
