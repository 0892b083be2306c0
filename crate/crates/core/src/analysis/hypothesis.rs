use alloc::vec::Vec;
use core::f64::consts::TAU;
#[allow(unused_imports)] // inherent f64 math shadows it when std is linked
use num_traits::Float;

use super::{AnalysisOptions, BandStructure};
use crate::error::{Error, Result};
use crate::flow::{integrate, FlowOptions, PwlOde};
use crate::linalg::least_squares;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Edge {
    Lower,
    Upper,
}

/// The two zeros `t₁ < t₂` of `u(·, x)` on `(0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GapSample {
    pub x: f64,
    pub t1: f64,
    pub t2: f64,
}

impl GapSample {
    pub fn gap(&self) -> f64 {
        self.t2 - self.t1
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HypothesisReport {
    pub holds: bool,
    /// The two-zero band the evidence was taken from.
    pub band: Option<(f64, f64)>,
    pub merge_edge: Option<Edge>,
    /// Extrapolated time at which the two zeros meet.
    pub merge_time: Option<f64>,
    /// `b` at `merge_time`; zero up to extrapolation error when the zeros merge.
    pub b_at_merge: Option<f64>,
    /// Extrapolated `t₂ - t₁` at the edge.
    pub extrapolated_gap: f64,
    /// Samples on the geometric grid towards `merge_edge`, farthest first.
    pub evidence: Vec<GapSample>,
}

impl HypothesisReport {
    fn absent() -> Self {
        HypothesisReport {
            holds: false,
            band: None,
            merge_edge: None,
            merge_time: None,
            b_at_merge: None,
            extrapolated_gap: f64::NAN,
            evidence: Vec::new(),
        }
    }
}

pub(crate) fn two_zeros(ode: &PwlOde, x: f64, opts: &FlowOptions) -> Result<Option<GapSample>> {
    let tr = integrate(ode, 0.0, x, TAU, opts)?;
    let ts: Vec<f64> = tr.interior_crossings().map(|c| c.t).collect();
    Ok(match ts[..] {
        [t1, t2] => Some(GapSample { x, t1, t2 }),
        _ => None,
    })
}

/// Value at `s = 0` of `f(s) = α + βs² + γs³ + ηs⁴` through four samples at
/// `s = 2^{3/2}, 2, 2^{1/2}, 1` (in units of the last one).
///
/// On a crossing band `u` is only piecewise smooth in `x`: between the two zeros
/// the sign of `a|x|` flips on an interval of length `O(√δ)`, so gap² carries a
/// `δ^{3/2}` term.
fn extrapolate(f: [f64; 4]) -> f64 {
    let s: [f64; 4] = core::array::from_fn(|i| libm::pow(2.0, 0.5 * (3 - i) as f64));
    let cols = alloc::vec![
        alloc::vec![1.0; 4],
        s.iter().map(|v| v * v).collect(),
        s.iter().map(|v| v * v * v).collect(),
        s.iter().map(|v| v * v * v * v).collect(),
    ];
    least_squares(&cols, &f)[0]
}

struct EdgeResult {
    holds: bool,
    gap: f64,
    merge_time: Option<f64>,
    evidence: Vec<GapSample>,
}

fn probe_edge(
    ode: &PwlOde,
    lo: f64,
    hi: f64,
    edge: Edge,
    opts: &AnalysisOptions,
) -> Result<EdgeResult> {
    let w = hi - lo;
    let n = opts.hypothesis_samples.max(4);
    let mut evidence = Vec::with_capacity(n);
    let mut d = w * opts.hypothesis_start;
    for _ in 0..n {
        let x = match edge {
            Edge::Lower => lo + d,
            Edge::Upper => hi - d,
        };
        match two_zeros(ode, x, &opts.flow)? {
            Some(s) => evidence.push(s),
            None => {
                return Ok(EdgeResult { holds: false, gap: f64::NAN, merge_time: None, evidence })
            }
        }
        d *= 0.5;
    }
    let tail = &evidence[n - 4..];
    let g2 = extrapolate(core::array::from_fn(|i| tail[i].gap() * tail[i].gap()));
    let gap = g2.max(0.0).sqrt();
    let merge = extrapolate(core::array::from_fn(|i| 0.5 * (tail[i].t1 + tail[i].t2)));
    let tail = &tail[1..];
    let decreasing = tail[0].gap() > tail[1].gap() && tail[1].gap() > tail[2].gap();
    let holds = decreasing && gap < opts.merge_gap;
    Ok(EdgeResult { holds, gap, merge_time: holds.then_some(merge), evidence })
}

/// Looks for a two-zero band whose zeros coalesce at one of its edges.
///
/// Each edge of each finite two-zero band is approached along `δ = w·s·2^{-j}`,
/// `w` the band width and `s` [`AnalysisOptions::hypothesis_start`]. The gap at
/// the edge is extrapolated from the last four samples. Fails with
/// [`Error::NoTwoZeroBand`] when there is nothing to probe.
pub fn hypothesis_check(
    ode: &PwlOde,
    bands: &BandStructure,
    opts: &AnalysisOptions,
) -> Result<HypothesisReport> {
    let mut first: Option<HypothesisReport> = None;
    for band in bands.bands.iter().filter(|b| b.is_finite() && b.zero_count == 2) {
        for edge in [Edge::Lower, Edge::Upper] {
            let r = probe_edge(ode, band.lo, band.hi, edge, opts)?;
            let report = HypothesisReport {
                holds: r.holds,
                band: Some((band.lo, band.hi)),
                merge_edge: r.holds.then_some(edge),
                merge_time: r.merge_time,
                b_at_merge: r.merge_time.map(|t| ode.b().eval(t)),
                extrapolated_gap: r.gap,
                evidence: r.evidence,
            };
            if report.holds {
                return Ok(report);
            }
            first.get_or_insert(report);
        }
    }
    first.ok_or(Error::NoTwoZeroBand)
}

pub(crate) fn absent_report() -> HypothesisReport {
    HypothesisReport::absent()
}
