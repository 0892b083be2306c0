use super::*;
use crate::decompose::construct_from_witness;
use crate::error::Error;
use crate::flow::{integrate, PwlOde};
use crate::trigpoly::{RealPoly, TrigPoly};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

fn sin1() -> TrigPoly {
    TrigPoly::sine(1, 1.0)
}

fn zero_a() -> PwlOde {
    PwlOde::new(TrigPoly::zero(), sin1()).unwrap()
}

fn composition_example() -> PwlOde {
    PwlOde::new(TrigPoly::sine(2, 1.0), TrigPoly::cosine(1, 1.0)).unwrap()
}

fn eps_cos_4t(eps: f64) -> PwlOde {
    PwlOde::new(TrigPoly::cosine(4, eps), sin1()).unwrap()
}

/// `a = 0`, `b = -(cos t + 1/2) sin t`: `u = x + Q(cos t) - 1` with `Q(y) = y²/2 + y/2`.
///
/// Edges are `0, 1, 9/8`. On the two-zero band `(0, 1)` the zeros are `±arccos y`
/// with `Q(y) = 1 - x`; the gap tends to `2π` at `x → 0` and to `π` at `x → 1`.
fn non_merging_center() -> PwlOde {
    let (a, b) = construct_from_witness(
        &RealPoly::zero(),
        &RealPoly::new(vec![0.5, 1.0]),
        &TrigPoly::cosine(1, 1.0),
    )
    .unwrap();
    PwlOde::new(a, b).unwrap()
}

/// Fixed-step RK4 on `x' = a|x| + b`; `t1 < t0` integrates backward.
fn rk4(ode: &PwlOde, t0: f64, x0: f64, t1: f64, steps: usize) -> f64 {
    let h = (t1 - t0) / steps as f64;
    let mut x = x0;
    for i in 0..steps {
        let t = t0 + i as f64 * h;
        let k1 = ode.rhs(t, x);
        let k2 = ode.rhs(t + h / 2.0, x + h / 2.0 * k1);
        let k3 = ode.rhs(t + h / 2.0, x + h / 2.0 * k2);
        let k4 = ode.rhs(t + h, x + h * k3);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    x
}

/// Edge oracle: RK4 backward from each zero of `b`, plus `0`.
fn rk4_edges(ode: &PwlOde) -> Vec<f64> {
    let mut out = vec![0.0];
    for z in ode.b().zeros().unwrap().iter().filter(|z| z.t > 1e-12) {
        out.push(rk4(ode, z.t, 0.0, 0.0, 1 << 16));
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
    out
}

fn assert_close(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() < tol, "{got:?} vs {want:?}");
    }
}

fn counts(bs: &BandStructure) -> Vec<usize> {
    bs.bands.iter().map(|b| b.zero_count).collect()
}

#[test]
fn candidates_closed_form() {
    let c = band_candidates(&zero_a(), &FlowOptions::default()).unwrap();
    assert_close(&c, &[-2.0, 0.0], 1e-10);
}

#[test]
fn candidates_match_rk4() {
    let opts = FlowOptions::default();
    for ode in [composition_example().canonical().unwrap(), eps_cos_4t(0.1)] {
        let c = band_candidates(&ode, &opts).unwrap();
        assert_eq!(c.len(), 2);
        assert_close(&c, &rk4_edges(&ode), 1e-7);
    }
    let c = band_candidates(&eps_cos_4t(0.1), &opts).unwrap();
    assert!((c[0] + 2.0).abs() < 1e-2 && c[1] == 0.0);
}

#[test]
fn candidates_reject_non_simple_b() {
    // b = 1 - cos t has a double zero at 0.
    let ode = PwlOde::new(TrigPoly::zero(), TrigPoly::new(1.0, vec![-1.0], vec![])).unwrap();
    assert!(matches!(
        band_candidates(&ode, &FlowOptions::default()),
        Err(Error::NonSimpleB { .. })
    ));
}

#[test]
fn band_structure_examples() {
    let opts = FlowOptions::default();
    let bs = band_structure(&zero_a(), &opts).unwrap();
    assert_eq!(counts(&bs), [0, 2, 0]);
    let profiles: Vec<_> = bs.bands.iter().map(|b| b.profile).collect();
    assert_eq!(profiles, [SignProfile::Negative, SignProfile::Mixed, SignProfile::Positive]);
    assert!((bs.bands[1].lo + 2.0).abs() < 1e-10 && bs.bands[1].hi == 0.0);
    assert!(bs.bands[0].lo == f64::NEG_INFINITY && bs.bands[2].hi == f64::INFINITY);

    let bs = band_structure(&composition_example().canonical().unwrap(), &opts).unwrap();
    assert_eq!(counts(&bs), [0, 2, 0]);
    let bs = band_structure(&eps_cos_4t(0.1), &opts).unwrap();
    assert_eq!(counts(&bs), [0, 2, 0]);

    let bs = band_structure(&non_merging_center(), &opts).unwrap();
    assert_close(&bs.edges, &[0.0, 1.0, 1.125], 1e-9);
    assert_eq!(counts(&bs), [0, 2, 4, 0]);
}

#[test]
fn edges_are_tangencies() {
    let opts = FlowOptions::default();
    for ode in [
        zero_a(),
        composition_example().canonical().unwrap(),
        eps_cos_4t(0.05),
        non_merging_center(),
    ] {
        let zeros = ode.b().zeros().unwrap();
        for x in band_candidates(&ode, &opts).unwrap() {
            // Some zero τ of b carries the solution through (τ, 0).
            let touches = zeros.iter().any(|z| {
                let u =
                    if z.t == 0.0 { x } else { integrate(&ode, 0.0, x, z.t, &opts).unwrap().end.1 };
                u.abs() < 1e-8 && ode.rhs(z.t, u).abs() < 1e-8
            });
            assert!(touches, "edge {x} is not a tangency");
        }
    }
}

#[test]
fn outer_bands_are_zero_free_and_definite() {
    let opts = FlowOptions::default();
    let cases = [
        zero_a(),
        composition_example().canonical().unwrap(),
        eps_cos_4t(0.2),
        non_merging_center(),
        PwlOde::new(
            TrigPoly::new(0.3, vec![1.0], vec![]),
            TrigPoly::new(0.2, vec![0.5], vec![1.0]),
        )
        .unwrap()
        .canonical()
        .unwrap(),
    ];
    for ode in cases {
        let bs = band_structure(&ode, &opts).unwrap();
        let n = ode.b().zeros().unwrap().len();
        let first = bs.bands.first().unwrap();
        let last = bs.bands.last().unwrap();
        assert_eq!((first.zero_count, first.profile), (0, SignProfile::Negative));
        assert_eq!((last.zero_count, last.profile), (0, SignProfile::Positive));
        assert!(bs.bands.iter().all(|b| b.zero_count <= n + 1));
    }
}

#[test]
fn hypothesis_closed_form() {
    let ode = zero_a();
    let opts = AnalysisOptions::default();
    let bs = band_structure(&ode, &opts.flow).unwrap();
    let h = hypothesis_check(&ode, &bs, &opts).unwrap();
    assert!(h.holds);
    let (lo, hi) = h.band.unwrap();
    assert!((lo + 2.0).abs() < 1e-10 && hi == 0.0);
    assert_eq!(h.merge_edge, Some(Edge::Lower));
    assert!((h.merge_time.unwrap() - PI).abs() < 1e-6);
    assert!(h.b_at_merge.unwrap().abs() < 1e-6);
    // u = x + 1 - cos t: the zeros are ±arccos(x + 1).
    for s in &h.evidence {
        let t1 = libm::acos(s.x + 1.0);
        assert!((s.t1 - t1).abs() < 1e-9 && (s.t2 - (TAU - t1)).abs() < 1e-9);
    }
    let gaps: Vec<f64> = h.evidence.iter().map(GapSample::gap).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn hypothesis_composition_example() {
    let ode = composition_example().canonical().unwrap();
    let opts = AnalysisOptions::default();
    let bs = band_structure(&ode, &opts.flow).unwrap();
    let h = hypothesis_check(&ode, &bs, &opts).unwrap();
    assert!(h.holds && h.extrapolated_gap < opts.merge_gap);
    let t = h.merge_time.unwrap();
    let nearest = ode
        .b()
        .zeros()
        .unwrap()
        .times()
        .into_iter()
        .map(|z| (z - t).abs())
        .fold(f64::MAX, f64::min);
    assert!(nearest < 1e-6, "merge time {t} is not a zero of b");
}

#[test]
fn hypothesis_fails_without_merging() {
    let ode = non_merging_center();
    let opts = AnalysisOptions::default();
    let bs = band_structure(&ode, &opts.flow).unwrap();
    let h = hypothesis_check(&ode, &bs, &opts).unwrap();
    assert!(!h.holds);
    assert_eq!(h.merge_edge, None);
    // Towards x = 0 the gap opens to 2π: first probe is the lower edge.
    let last = h.evidence.last().unwrap();
    assert!(last.gap() > 6.0);
    // Zeros at ±arccos y with y²/2 + y/2 = 1 - x.
    for s in &h.evidence {
        let y = (-1.0 + libm::sqrt(1.0 + 8.0 * (1.0 - s.x))) / 2.0;
        assert!((s.t1 - libm::acos(y)).abs() < 1e-8);
    }
    let r = center_classify(&ode, &opts).unwrap();
    assert!(r.witness.witness().is_some());
    assert!(r.numeric.max_abs_displacement < 1e-6);
    assert_eq!(r.verdict, Verdict::Inconclusive);
}

#[test]
fn hypothesis_needs_a_two_zero_band() {
    // a = 0, b = sin 2t: u = x + sin²t has bands with 0 and 4 zeros only.
    let ode = PwlOde::new(TrigPoly::zero(), TrigPoly::sine(2, 1.0)).unwrap();
    let opts = AnalysisOptions::default();
    let bs = band_structure(&ode, &opts.flow).unwrap();
    assert_eq!(counts(&bs), [0, 4, 0]);
    assert_eq!(hypothesis_check(&ode, &bs, &opts), Err(Error::NoTwoZeroBand));
    let r = center_classify(&ode, &opts).unwrap();
    assert!(!r.hypothesis.holds);
    assert_eq!(r.verdict, Verdict::Inconclusive);
}

#[test]
fn invariants_closed_form() {
    let r = cycle_invariants(&zero_a(), (-2.0, 0.0), 1, &FlowOptions::default()).unwrap();
    let s = r.samples[0];
    assert_eq!(s.x, -1.0);
    assert!((s.t1 - PI / 2.0).abs() < 1e-10 && (s.t2 - 3.0 * PI / 2.0).abs() < 1e-10);
    for v in [s.r_t1t2, s.r_periodic, s.r_drift_a, s.r_drift_b] {
        assert!(v.abs() < 1e-10);
    }
}

#[test]
fn invariants_on_a_center() {
    let ode = composition_example().canonical().unwrap();
    let opts = FlowOptions::default();
    let bs = band_structure(&ode, &opts).unwrap();
    let band = bs.bands.iter().find(|b| b.zero_count == 2).unwrap();
    let r = cycle_invariants(&ode, (band.lo, band.hi), 9, &opts).unwrap();
    assert_eq!(r.samples.len(), 9);
    assert!(r.samples.iter().all(|s| band.contains(s.x)));
    let fields: [fn(&CycleSample) -> f64; 4] =
        [|s| s.r_t1t2, |s| s.r_periodic, |s| s.r_drift_a, |s| s.r_drift_b];
    for f in fields {
        assert!(r.max_abs(f) < 1e-7);
    }
    // The band is positive: t₁ increases and t₂ decreases with x.
    assert!(r.t1_monotone && r.t2_monotone);
    let pairs: Vec<_> = r.samples.iter().map(|s| (s.t1, s.t2)).collect();
    assert!(abelian_cycle_integral(&ode.b().antiderivative(), &pairs) < 1e-7);
}

#[test]
fn invariants_off_a_center() {
    let ode = eps_cos_4t(0.1);
    let opts = FlowOptions::default();
    let bs = band_structure(&ode, &opts).unwrap();
    let band = bs.bands.iter().find(|b| b.zero_count == 2).unwrap();
    let r = cycle_invariants(&ode, (band.lo, band.hi), 9, &opts).unwrap();
    assert!(r.max_abs(|s| s.r_t1t2) < 1e-10);
    assert!(r.max_abs(|s| s.r_periodic) > 1e-4);
    assert!(r.samples.iter().all(|s| s.r_t1t2.is_finite() && s.r_periodic.is_finite()));
    // Negative band: t₁ decreases and t₂ increases with x.
    assert!(r.t1_monotone && r.t2_monotone);
    let pairs: Vec<_> = r.samples.iter().map(|s| (s.t1, s.t2)).collect();
    assert!(abelian_cycle_integral(&ode.b().antiderivative(), &pairs) > 1e-4);
}

#[test]
fn invariants_need_two_zeros() {
    let r = cycle_invariants(&zero_a(), (-3.0, -2.5), 3, &FlowOptions::default());
    assert!(matches!(r, Err(Error::Invalid(_))));
}

#[test]
fn abelian_integral_closed_form() {
    let big_b =
        crate::trigpoly::DriftTrigPoly { drift: 0.0, trig: TrigPoly::new(1.0, vec![-1.0], vec![]) };
    assert!(abelian_cycle_integral(&big_b, &[(PI / 2.0, 3.0 * PI / 2.0)]) < 1e-15);
}

#[test]
fn classify_closed_form() {
    let r = center_classify(&zero_a(), &AnalysisOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::GlobalCenter);
    assert!(r.consistency && r.hypothesis.holds && r.outer.ok);
    let w = r.witness.witness().unwrap();
    assert!(w.p.is_zero());
    assert!(w.q.max_coeff_diff(&RealPoly::constant(1.0)) < 1e-12);
    assert!(w.h.max_coeff_diff(&TrigPoly::cosine(1, -1.0)) < 1e-12);
    assert!(r.numeric.limit_cycles.is_empty());
}

#[test]
fn classify_composition_example() {
    let ode = composition_example();
    let r = center_classify(&ode, &AnalysisOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::GlobalCenter);
    assert!(r.consistency);
    assert!((r.tau0 - PI / 2.0).abs() < 1e-12);
    assert!(r.numeric.max_abs_displacement < 1e-6);
    let w = r.witness.witness().unwrap();
    assert!(crate::decompose::verify_witness(ode.a(), ode.b(), w) < 1e-9);
    // Same inner factor as (2x, 1, sin t) up to sign.
    assert!(w.h.max_coeff_diff(&sin1()).min(w.h.max_coeff_diff(&-sin1())) < 1e-9);
    let inv = r.invariants.unwrap();
    assert!(inv.max_abs(|s| s.r_drift_a) < 1e-7 && inv.max_abs(|s| s.r_drift_b) < 1e-7);
}

#[test]
fn classify_eps_cos_4t() {
    let opts = AnalysisOptions::default();
    let r = center_classify(&eps_cos_4t(0.1), &opts).unwrap();
    assert_eq!(r.verdict, Verdict::NotGlobalCenter);
    assert!(r.witness.witness().is_none());
    assert!(r.consistency);
    assert!(r.numeric.limit_cycles.len() >= 2);
    for lc in &r.numeric.limit_cycles {
        let (lo, hi) = lc.bracket;
        assert!(hi - lo < opts.isolation_bracket && lo <= lc.x && lc.x <= hi);
        let d_lo = crate::flow::displacement(&eps_cos_4t(0.1), lo, &opts.flow).unwrap();
        let d_hi = crate::flow::displacement(&eps_cos_4t(0.1), hi, &opts.flow).unwrap();
        assert!(d_lo * d_hi < 0.0);
    }
}

#[test]
fn classify_nonzero_mean_a() {
    // mean(a) ≠ 0: the outer bands contract or expand, so no global center.
    let ode = PwlOde::new(TrigPoly::new(0.1, vec![], vec![]), sin1()).unwrap();
    let r = center_classify(&ode, &AnalysisOptions::default()).unwrap();
    assert!(!r.outer.ok);
    assert_eq!(r.verdict, Verdict::NotGlobalCenter);
    assert!(r.witness.witness().is_none());
    assert!(r.consistency);
}

#[test]
fn classify_rejects_non_simple_b() {
    let ode = PwlOde::new(TrigPoly::zero(), TrigPoly::new(1.0, vec![-1.0], vec![])).unwrap();
    assert!(matches!(
        center_classify(&ode, &AnalysisOptions::default()),
        Err(Error::NonSimpleB { .. })
    ));
}

#[test]
fn classify_is_translation_invariant() {
    let opts = AnalysisOptions::default();
    let r0 = center_classify(&composition_example(), &opts).unwrap();
    let r1 = center_classify(&composition_example().time_shift(0.7), &opts).unwrap();
    assert_eq!(r0.verdict, r1.verdict);
    assert_close(&r0.bands.edges, &r1.bands.edges, 1e-8);
}

#[test]
fn scan_respects_x_range() {
    let opts = AnalysisOptions { x_range: Some((-5.0, 5.0)), ..AnalysisOptions::default() };
    let r = center_classify(&zero_a(), &opts).unwrap();
    let xs: Vec<f64> = r.numeric.samples.iter().map(|s| s.x).collect();
    assert_eq!(xs.len(), 41 + 10);
    assert_eq!(xs.first(), Some(&-5.0));
    assert_eq!(xs.last(), Some(&5.0));
    assert!(xs.windows(2).all(|w| w[0] < w[1]));
}
