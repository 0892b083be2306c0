//! Integration of `x' = a(t)|x| + b(t)`.
//!
//! On a region of fixed sign `σ` the equation is linear, `x' = σ a x + b`, and
//! the solution from `(s, x_s)` is
//!
//! ```text
//! u(t) = e^{σ(A(t) - A(s))} ( x_s + ∫_s^t b(r) e^{-σ(A(r) - A(s))} dr )
//! ```
//!
//! with `A' = a`. The integrator walks a fixed grid, evaluates this closed form
//! with adaptive quadrature, and stops at every zero of the solution to switch
//! `σ`. Zeros inside a grid step are bracketed either by a sign change at the
//! step end or by a negative interior minimum of `σ u`.

use alloc::vec::Vec;
use core::f64::consts::TAU;
#[allow(unused_imports)] // inherent f64 math shadows it when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::quad;
use crate::roots::{bisect, brent};
use crate::tol;
use crate::trigpoly::{DriftTrigPoly, TrigPoly};

/// The equation `x' = a(t)|x| + b(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PwlOde {
    a: TrigPoly,
    b: TrigPoly,
    shift: f64,
    big_a: DriftTrigPoly,
    db: TrigPoly,
}

impl PwlOde {
    /// Fails with [`Error::IdenticallyZero`] when `b ≡ 0`.
    pub fn new(a: TrigPoly, b: TrigPoly) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::IdenticallyZero);
        }
        Ok(Self::new_unchecked(a, b))
    }

    /// Skips the `b ≢ 0` check; useful to exercise the linear kernel on its own.
    pub fn new_unchecked(a: TrigPoly, b: TrigPoly) -> Self {
        let big_a = a.antiderivative();
        let db = b.derivative();
        PwlOde { a, b, shift: 0.0, big_a, db }
    }

    pub fn a(&self) -> &TrigPoly {
        &self.a
    }

    pub fn b(&self) -> &TrigPoly {
        &self.b
    }

    /// Time translation `τ₀` applied relative to the user's coefficients.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// `A(t) = ∫_0^t a`.
    pub fn big_a(&self) -> &DriftTrigPoly {
        &self.big_a
    }

    pub fn db(&self) -> &TrigPoly {
        &self.db
    }

    /// Right-hand side `a(t)|x| + b(t)`.
    pub fn rhs(&self, t: f64, x: f64) -> f64 {
        self.a.eval(t) * x.abs() + self.b.eval(t)
    }

    /// Translates time by `τ`: the result has coefficients `a(t + τ)`, `b(t + τ)`.
    pub fn time_shift(&self, tau: f64) -> PwlOde {
        let mut ode = Self::new_unchecked(self.a.time_shift(tau), self.b.time_shift(tau));
        ode.shift = self.shift + tau;
        ode
    }

    /// Translates time so that `b(0) = 0`, using the first zero of `b` in `[0, 2π)`.
    ///
    /// If `b` has no zero the equation is returned unchanged.
    pub fn canonical(&self) -> Result<PwlOde> {
        let zeros = self.b.zeros()?;
        Ok(match zeros.zeros.first() {
            Some(z) if z.t != 0.0 => self.time_shift(z.t),
            _ => self.clone(),
        })
    }

    /// The equation satisfied by `v(s) = u(-s)`: coefficients `-a(-s)`, `-b(-s)`.
    pub fn reversed(&self) -> PwlOde {
        let mut ode = Self::new_unchecked(-self.a.reversed(), -self.b.reversed());
        ode.shift = -self.shift;
        ode
    }

    /// Solution of the linear equation of sign `sigma` from `(s, xs)`, evaluated at `t`.
    fn propagate(&self, sigma: f64, s: f64, xs: f64, t: f64, quad_tol: f64) -> f64 {
        let a_s = self.big_a.eval(s);
        let integral = quad::integrate(
            |r| self.b.eval(r) * (-sigma * (self.big_a.eval(r) - a_s)).exp(),
            s,
            t,
            quad_tol,
        );
        (sigma * (self.big_a.eval(t) - a_s)).exp() * (xs + integral)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Direction {
    Up,
    Down,
}

/// A zero of the solution.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Crossing {
    pub t: f64,
    /// `u'(t) = b(t)`.
    pub slope: f64,
    pub direction: Direction,
    /// `b(t)` vanished here; the continuation sign came from `b'(t)`.
    pub tangent: bool,
}

/// A maximal interval on which the solution keeps one sign, by its entry point.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Segment {
    pub sign: i8,
    pub t: f64,
    pub x: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TracePoint {
    pub t: f64,
    pub x: f64,
    pub sign: i8,
}

/// An integrated solution with its zero crossings.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Trace {
    pub start: (f64, f64),
    pub end: (f64, f64),
    pub crossings: Vec<Crossing>,
    pub segments: Vec<Segment>,
    /// Values on the bracketing grid and at every crossing.
    pub samples: Vec<TracePoint>,
}

impl Trace {
    /// Crossing times strictly inside the integration interval.
    pub fn interior_crossings(&self) -> impl Iterator<Item = &Crossing> {
        let (lo, hi) = if self.start.0 <= self.end.0 {
            (self.start.0, self.end.0)
        } else {
            (self.end.0, self.start.0)
        };
        self.crossings.iter().filter(move |c| c.t > lo && c.t < hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FlowOptions {
    pub quad_tol: f64,
    pub grid_per_period: usize,
    pub crossing_tol: f64,
    pub tangency_tol: f64,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions {
            quad_tol: tol::QUAD,
            grid_per_period: tol::GRID_PER_PERIOD,
            crossing_tol: tol::CROSSING_TIME,
            tangency_tol: tol::TANGENCY,
        }
    }
}

fn sign_of(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Sign of the solution just after it leaves zero at `t`, with whether `b(t)` vanished.
fn departure_sign(ode: &PwlOde, t: f64, opts: &FlowOptions) -> Result<(f64, bool)> {
    let bt = ode.b.eval(t);
    let dbt = ode.db.eval(t);
    if bt.abs() > opts.tangency_tol + dbt.abs() * tol::TANGENCY_WINDOW {
        return Ok((sign_of(bt), false));
    }
    // u'' = b'(t) at a tangency.
    if dbt.abs() <= opts.tangency_tol {
        return Err(Error::TangencyAmbiguous { t });
    }
    Ok((sign_of(dbt), true))
}

/// Integrates forward from `(t0, x0)` to `t1 > t0`.
pub fn integrate(ode: &PwlOde, t0: f64, x0: f64, t1: f64, opts: &FlowOptions) -> Result<Trace> {
    if t0.is_nan() || t1.is_nan() || t1 <= t0 {
        return Err(Error::Invalid(alloc::format!("integration needs t1 > t0, got [{t0}, {t1}]")));
    }
    let step = TAU / opts.grid_per_period as f64;
    let qt = opts.quad_tol;

    let mut sigma = if x0 != 0.0 { sign_of(x0) } else { departure_sign(ode, t0, opts)?.0 };
    let mut t = t0;
    let mut x = x0;
    let mut crossings: Vec<Crossing> = Vec::new();
    let mut segments = alloc::vec![Segment { sign: sigma as i8, t, x }];
    let mut samples = alloc::vec![TracePoint { t, x, sign: sigma as i8 }];
    let mut k = 1usize;

    while t < t1 {
        let t_next = (t0 + k as f64 * step).min(t1);
        if t_next <= t {
            k += 1;
            continue;
        }
        // g = σ u is positive inside the current region.
        let g = |tau: f64| sigma * ode.propagate(sigma, t, x, tau, qt);
        let g_start = sigma * x;
        let g_next = g(t_next);

        // A negative value of g in (t, t_next], if any.
        let mut below = (g_next < 0.0).then_some((t_next, g_next));
        if below.is_none() {
            // g' = a g + σ b; a sign change of g' from - to + hides a minimum.
            let dg = |tau: f64, gv: f64| ode.a.eval(tau) * gv + sigma * ode.b.eval(tau);
            let dg_start = dg(t, g_start);
            if dg_start < 0.0 && dg(t_next, g_next) > 0.0 {
                let t_min = bisect(|tau| dg(tau, g(tau)), t, t_next, dg_start, opts.crossing_tol);
                let g_min = g(t_min);
                if g_min < 0.0 {
                    below = Some((t_min, g_min));
                }
            }
        }
        let mut hit = None;
        if let Some((hi, g_hi)) = below {
            hit = locate(&g, t, g_start, hi, g_hi, opts)?;
            if hit.is_none() {
                // Just left zero on the wrong side of a tangency: the solution lies on the other.
                match crossings.last_mut() {
                    Some(last) if last.t == t => {
                        sigma = -sigma;
                        last.direction = if sigma > 0.0 { Direction::Up } else { Direction::Down };
                        last.tangent = true;
                    }
                    None if t == t0 && x0 == 0.0 => sigma = -sigma,
                    _ => return Err(Error::TangencyAmbiguous { t }),
                }
                if let Some(seg) = segments.last_mut() {
                    seg.sign = sigma as i8;
                }
                if let Some(p) = samples.last_mut() {
                    p.sign = sigma as i8;
                }
                continue;
            }
        }

        match hit {
            Some(tc) if t1 - tc <= opts.crossing_tol => {
                t = t1;
                x = 0.0;
                samples.push(TracePoint { t, x, sign: sigma as i8 });
            }
            Some(tc) => {
                let (new_sigma, tangent) = departure_sign(ode, tc, opts)?;
                let slope = ode.b.eval(tc);
                crossings.push(Crossing {
                    t: tc,
                    slope,
                    direction: if new_sigma > 0.0 { Direction::Up } else { Direction::Down },
                    tangent,
                });
                sigma = new_sigma;
                t = tc;
                x = 0.0;
                segments.push(Segment { sign: sigma as i8, t, x });
                samples.push(TracePoint { t, x, sign: sigma as i8 });
            }
            None => {
                t = t_next;
                x = sigma * g_next;
                k += 1;
                samples.push(TracePoint { t, x, sign: sigma as i8 });
            }
        }
    }

    Ok(Trace { start: (t0, x0), end: (t, x), crossings, segments, samples })
}

/// First zero of `g` in `(lo, hi]` given `g(hi) < 0 ≤ g(lo)`.
///
/// `None` when `g(lo) = 0` and `g` is negative on every probe towards `lo`.
fn locate<G: Fn(f64) -> f64>(
    g: &G,
    lo: f64,
    g_lo: f64,
    hi: f64,
    g_hi: f64,
    opts: &FlowOptions,
) -> Result<Option<f64>> {
    let (mut lo, mut g_lo) = (lo, g_lo);
    if g_lo <= 0.0 {
        // Leaving zero: find a point where the solution has already moved into its region.
        let mut found = false;
        for j in 1..=60 {
            let m = lo + (hi - lo) * 0.5f64.powi(j);
            let gm = g(m);
            if gm > 0.0 {
                lo = m;
                g_lo = gm;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    Ok(Some(brent(g, lo, hi, g_lo, g_hi, opts.crossing_tol)))
}

/// Integrates backward from `(t0, x0)` to `t1 < t0`.
///
/// Runs the forward integrator on [`PwlOde::reversed`] and maps the result back:
/// times are negated and lists are returned in increasing time.
pub fn integrate_backward(
    ode: &PwlOde,
    t0: f64,
    x0: f64,
    t1: f64,
    opts: &FlowOptions,
) -> Result<Trace> {
    let rev = integrate(&ode.reversed(), -t0, x0, -t1, opts)?;
    let crossings = rev
        .crossings
        .iter()
        .rev()
        .map(|c| Crossing {
            t: -c.t,
            slope: -c.slope,
            direction: match c.direction {
                Direction::Up => Direction::Down,
                Direction::Down => Direction::Up,
            },
            tangent: c.tangent,
        })
        .collect();
    let segments = rev.segments.iter().rev().map(|s| Segment { t: -s.t, ..*s }).collect();
    let samples = rev.samples.iter().rev().map(|p| TracePoint { t: -p.t, ..*p }).collect();
    Ok(Trace { start: (t0, x0), end: (-rev.end.0, rev.end.1), crossings, segments, samples })
}

/// `u(2π, x)` for the solution with `u(0) = x`.
pub fn poincare(ode: &PwlOde, x: f64, opts: &FlowOptions) -> Result<f64> {
    Ok(integrate(ode, 0.0, x, TAU, opts)?.end.1)
}

/// `Δ(x) = u(2π, x) - x`.
pub fn displacement(ode: &PwlOde, x: f64, opts: &FlowOptions) -> Result<f64> {
    Ok(poincare(ode, x, opts)? - x)
}

/// Closed form of the return map on a sign-definite band: `u(2π) = slope · x + offset`.
///
/// `sign = +1` is the all-positive band, `-1` the all-negative one.
pub fn outer_band_displacement(ode: &PwlOde, sign: f64, quad_tol: f64) -> (f64, f64) {
    let sigma = sign_of(sign);
    let a_end = ode.big_a.eval(TAU);
    let slope = (sigma * a_end).exp();
    let offset = quad::integrate(
        |s| ode.b.eval(s) * (sigma * (a_end - ode.big_a.eval(s))).exp(),
        0.0,
        TAU,
        quad_tol,
    );
    (slope, offset)
}
