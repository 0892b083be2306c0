use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::flow::{integrate, integrate_backward, FlowOptions, PwlOde};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SignProfile {
    Positive,
    Negative,
    Mixed,
}

/// An open interval of initial values with a constant number of zeros on `(0, 2π)`.
///
/// Outer bands have an infinite end.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
    pub zero_count: usize,
    pub profile: SignProfile,
}

impl Band {
    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BandStructure {
    pub edges: Vec<f64>,
    pub bands: Vec<Band>,
}

impl BandStructure {
    pub fn band_of(&self, x: f64) -> Option<usize> {
        self.bands.iter().position(|b| b.contains(x))
    }

    /// Distance used to place samples on the outer bands.
    pub fn span(&self) -> f64 {
        match (self.edges.first(), self.edges.last()) {
            (Some(lo), Some(hi)) => (hi - lo).max(1.0),
            _ => 1.0,
        }
    }
}

/// Initial values at which the number of zeros of `u(·, x)` on `(0, 2π)` can change.
///
/// These are the values `u(0)` of the solutions through `(τ, 0)` for each zero `τ`
/// of `b`, found by integrating backward; at `τ` the solution leaves zero with the
/// sign of `b'(τ)`. Zeros can also enter through the ends of the period, so `0`
/// and the preimage of `0` under the return map are included; for a periodic
/// equation both coincide with the candidate of `τ = 0`. Sorted, with
/// near-duplicates merged.
pub fn band_candidates(ode: &PwlOde, opts: &FlowOptions) -> Result<Vec<f64>> {
    let zeros = ode.b().zeros()?;
    if let Some(t) = zeros.first_non_simple() {
        return Err(Error::NonSimpleB { t });
    }
    let mut out = Vec::with_capacity(zeros.len() + 2);
    out.push(0.0);
    out.push(integrate_backward(ode, TAU, 0.0, 0.0, opts)?.end.1);
    let tiny = opts.crossing_tol;
    for z in zeros.iter().filter(|z| z.t > tiny && z.t < TAU - tiny) {
        out.push(integrate_backward(ode, z.t, 0.0, 0.0, opts)?.end.1);
    }
    for x in out.iter_mut().filter(|x| x.abs() < tol::EDGE_DEDUP) {
        *x = 0.0;
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < tol::EDGE_DEDUP);
    Ok(out)
}

/// Zeros of `u(·, x)` on `(0, 2π)`, and whether all of them are simple.
pub(crate) fn count_zeros(ode: &PwlOde, x: f64, opts: &FlowOptions) -> Result<(usize, bool)> {
    let tr = integrate(ode, 0.0, x, TAU, opts)?;
    let mut n = 0;
    let mut simple = true;
    for c in tr.interior_crossings() {
        n += 1;
        simple &= !c.tangent;
    }
    Ok((n, simple))
}

fn sample_points(lo: f64, hi: f64, span: f64) -> [f64; 3] {
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => {
            let w = hi - lo;
            [lo + 0.25 * w, lo + 0.5 * w, lo + 0.75 * w]
        }
        (false, true) => [hi - 0.5 * span, hi - span, hi - 2.0 * span],
        (true, false) => [lo + 0.5 * span, lo + span, lo + 2.0 * span],
        (false, false) => [-span, 0.0, span],
    }
}

/// Bands between consecutive [`band_candidates`], with sampled zero counts.
///
/// Each band is sampled at three interior points. If the counts disagree the
/// band is re-sampled with a four times finer crossing grid before giving up
/// with [`Error::InconsistentBand`].
pub fn band_structure(ode: &PwlOde, opts: &FlowOptions) -> Result<BandStructure> {
    let edges = band_candidates(ode, opts)?;
    let mut bounds = Vec::with_capacity(edges.len() + 2);
    bounds.push(f64::NEG_INFINITY);
    bounds.extend_from_slice(&edges);
    bounds.push(f64::INFINITY);
    let span = match (edges.first(), edges.last()) {
        (Some(lo), Some(hi)) => (hi - lo).max(1.0),
        _ => 1.0,
    };

    let fine = FlowOptions { grid_per_period: opts.grid_per_period * 4, ..*opts };
    let mut bands = Vec::with_capacity(bounds.len() - 1);
    for w in bounds.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let xs = sample_points(lo, hi, span);
        let mut counts = None;
        for o in [opts, &fine] {
            let c = xs.iter().map(|&x| count_zeros(ode, x, o)).collect::<Result<Vec<_>>>()?;
            if c.iter().all(|&(n, s)| s && n == c[0].0) {
                counts = Some(c[0].0);
                break;
            }
        }
        let zero_count = counts.ok_or(Error::InconsistentBand { lo, hi })?;
        let profile = match zero_count {
            0 if xs[1] > 0.0 => SignProfile::Positive,
            0 => SignProfile::Negative,
            _ => SignProfile::Mixed,
        };
        bands.push(Band { lo, hi, zero_count, profile });
    }
    Ok(BandStructure { edges, bands })
}
