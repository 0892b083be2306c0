use alloc::vec::Vec;
use core::f64::consts::TAU;
#[allow(unused_imports)] // inherent f64 math shadows it when std is linked
use num_traits::Float;

use super::hypothesis::two_zeros;
use crate::error::{Error, Result};
use crate::flow::{FlowOptions, PwlOde};
use crate::quad;
use crate::trigpoly::DriftTrigPoly;

/// Crossing times of one solution and the residuals of the identities they satisfy.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CycleSample {
    pub x: f64,
    pub t1: f64,
    pub t2: f64,
    /// `∫_{t₁}^{t₂} b(t) e^{σ(A(t₂)-A(t))} dt`; zero for every solution.
    pub r_t1t2: f64,
    /// `∫_{t₂}^{t₁+2π} b(t) e^{-σ(A(t₁+2π)-A(t))} dt`; zero iff the solution is periodic.
    pub r_periodic: f64,
    /// `A(t₂) - A(t₁)`.
    pub r_drift_a: f64,
    /// `B(t₂) - B(t₁)`.
    pub r_drift_b: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CycleInvariantReport {
    pub band: (f64, f64),
    pub samples: Vec<CycleSample>,
    /// `t₁` decreases in `x` on a negative band and increases on a positive one.
    pub t1_monotone: bool,
    /// `t₂` moves opposite to `t₁`.
    pub t2_monotone: bool,
}

impl CycleInvariantReport {
    pub fn max_abs<F: Fn(&CycleSample) -> f64>(&self, f: F) -> f64 {
        self.samples.iter().map(|s| f(s).abs()).fold(0.0, f64::max)
    }
}

/// Evaluates the crossing-time identities on `n` evenly spaced interior points of a
/// two-zero band.
///
/// `σ` is the sign of the solution between `t₁` and `t₂`. Every sample must have
/// exactly two simple zeros on `(0, 2π)`.
pub fn cycle_invariants(
    ode: &PwlOde,
    band: (f64, f64),
    n: usize,
    opts: &FlowOptions,
) -> Result<CycleInvariantReport> {
    let (lo, hi) = band;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Invalid(alloc::format!("band ({lo}, {hi}) is not a finite interval")));
    }
    let big_a = ode.big_a();
    let big_b = ode.b().antiderivative();
    let b = ode.b();
    let qt = opts.quad_tol.min(1e-12);
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let x = lo + (i + 1) as f64 / (n + 1) as f64 * (hi - lo);
        let g = two_zeros(ode, x, opts)?.ok_or_else(|| {
            Error::Invalid(alloc::format!("u(., {x}) does not have exactly two zeros"))
        })?;
        let (t1, t2) = (g.t1, g.t2);
        // Negative start: the solution is positive between the zeros.
        let sigma = if x < 0.0 { 1.0 } else { -1.0 };
        let a2 = big_a.eval(t2);
        let r_t1t2 =
            quad::integrate(|t| b.eval(t) * (sigma * (a2 - big_a.eval(t))).exp(), t1, t2, qt);
        let a_end = big_a.eval(t1 + TAU);
        let r_periodic = quad::integrate(
            |t| b.eval(t) * (-sigma * (a_end - big_a.eval(t))).exp(),
            t2,
            t1 + TAU,
            qt,
        );
        samples.push(CycleSample {
            x,
            t1,
            t2,
            r_t1t2,
            r_periodic,
            r_drift_a: a2 - big_a.eval(t1),
            r_drift_b: big_b.eval(t2) - big_b.eval(t1),
        });
    }
    let negative = hi <= 0.0;
    let inc = |f: fn(&CycleSample) -> f64| samples.windows(2).all(|w| f(&w[1]) > f(&w[0]));
    let dec = |f: fn(&CycleSample) -> f64| samples.windows(2).all(|w| f(&w[1]) < f(&w[0]));
    let (t1_monotone, t2_monotone) =
        if negative { (dec(|s| s.t1), inc(|s| s.t2)) } else { (inc(|s| s.t1), dec(|s| s.t2)) };
    Ok(CycleInvariantReport { band, samples, t1_monotone, t2_monotone })
}

/// `max |B(t₂) - B(t₁)|` over crossing-time pairs.
pub fn abelian_cycle_integral(big_b: &DriftTrigPoly, pairs: &[(f64, f64)]) -> f64 {
    pairs.iter().map(|&(t1, t2)| (big_b.eval(t2) - big_b.eval(t1)).abs()).fold(0.0, f64::max)
}
