use alloc::vec::Vec;

use super::bands::{band_structure, BandStructure};
use super::hypothesis::{absent_report, hypothesis_check, HypothesisReport};
use super::invariants::{cycle_invariants, CycleInvariantReport};
use super::AnalysisOptions;
use crate::decompose::{find_common_witness, DecompositionOutcome};
use crate::error::{Error, Result};
use crate::flow::{displacement, outer_band_displacement, PwlOde};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    GlobalCenter,
    NotGlobalCenter,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tolerances {
    pub quad: f64,
    pub crossing: f64,
    pub grid_per_period: usize,
    pub center: f64,
    pub nonzero: f64,
    pub isolation: f64,
    pub outer_band: f64,
}

/// Return map `x ↦ slope · x + offset` on each sign-definite band.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OuterBands {
    pub positive: (f64, f64),
    pub negative: (f64, f64),
    pub ok: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DisplacementSample {
    pub x: f64,
    pub delta: f64,
    pub band: usize,
}

/// An isolated zero of `Δ` at which it changes sign.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LimitCycle {
    pub x: f64,
    /// Sign-changing bracket of width below the isolation tolerance.
    pub bracket: (f64, f64),
    pub band: usize,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NumericEvidence {
    pub max_abs_displacement: f64,
    pub samples: Vec<DisplacementSample>,
    pub limit_cycles: Vec<LimitCycle>,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassificationReport {
    pub verdict: Verdict,
    /// Time translation that puts a zero of `b` at `t = 0`; all times below use it.
    pub tau0: f64,
    pub tolerances: Tolerances,
    pub outer: OuterBands,
    pub bands: BandStructure,
    pub hypothesis: HypothesisReport,
    pub invariants: Option<CycleInvariantReport>,
    /// Witness search on the coefficients as given, before the translation.
    pub witness: DecompositionOutcome,
    pub numeric: NumericEvidence,
    /// Numeric center evidence agrees with the outcome of the witness search.
    pub consistency: bool,
}

fn scan_points(bands: &BandStructure, opts: &AnalysisOptions) -> Vec<(f64, usize)> {
    let edges = &bands.edges;
    let mut pts = Vec::new();
    let (Some(&first), Some(&last)) = (edges.first(), edges.last()) else {
        let (lo, hi) = opts.x_range.unwrap_or((-1.0, 1.0));
        let n = opts.band_points.max(2);
        for i in 0..n {
            pts.push((lo + i as f64 / (n - 1) as f64 * (hi - lo), 0));
        }
        return pts;
    };
    let span = bands.span();
    let (xlo, xhi) = opts.x_range.unwrap_or((first - span, last + span));
    let side = (opts.outer_points / 2).max(1);
    if xlo < first {
        for i in (0..side).rev() {
            pts.push((first - (first - xlo) * (i + 1) as f64 / side as f64, 0));
        }
    }
    let n = opts.band_points;
    for (k, w) in edges.windows(2).enumerate() {
        for i in 0..n {
            pts.push((w[0] + (i + 1) as f64 / (n + 1) as f64 * (w[1] - w[0]), k + 1));
        }
    }
    if xhi > last {
        for i in 0..side {
            pts.push((last + (xhi - last) * (i + 1) as f64 / side as f64, edges.len()));
        }
    }
    pts
}

fn locate_cycles(
    ode: &PwlOde,
    samples: &[DisplacementSample],
    opts: &AnalysisOptions,
) -> Result<Vec<LimitCycle>> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < samples.len() {
        let band = samples[start].band;
        let end = start + samples[start..].iter().take_while(|s| s.band == band).count();
        let run = &samples[start..end];
        let peak = run.iter().map(|s| s.delta.abs()).fold(0.0, f64::max);
        if peak > opts.nonzero_tol {
            for w in run.windows(2) {
                if w[0].delta == 0.0 || w[0].delta.signum() == w[1].delta.signum() {
                    continue;
                }
                let mut err = None;
                let mut f = |x: f64| match displacement(ode, x, &opts.flow) {
                    Ok(d) => d,
                    Err(e) => {
                        err.get_or_insert(e);
                        0.0
                    }
                };
                let mut lo = w[0].x;
                let mut hi = w[1].x;
                let mut flo = w[0].delta;
                let mut bracket = None;
                while hi - lo > 1e-10 {
                    if bracket.is_none() && hi - lo < opts.isolation_bracket {
                        bracket = Some((lo, hi));
                    }
                    let mid = 0.5 * (lo + hi);
                    let fm = f(mid);
                    if fm == 0.0 {
                        lo = mid;
                        hi = mid;
                        break;
                    }
                    if fm.signum() == flo.signum() {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                if let Some(e) = err {
                    return Err(e);
                }
                let x = 0.5 * (lo + hi);
                out.push(LimitCycle { x, bracket: bracket.unwrap_or((lo, hi)), band });
            }
        }
        start = end;
    }
    Ok(out)
}

/// Runs the full pipeline on `x' = a(t)|x| + b(t)` and decides whether every
/// solution is periodic.
///
/// `global_center` needs numeric evidence (`max |Δ|` below the center tolerance
/// and identity maps on both outer bands), a composition witness, and a merging
/// two-zero band. `not_global_center` needs a displacement above the nonzero
/// tolerance or a non-identity outer band. Anything else is `inconclusive`.
pub fn center_classify(ode: &PwlOde, opts: &AnalysisOptions) -> Result<ClassificationReport> {
    let zeros = ode.b().zeros()?;
    if let Some(t) = zeros.first_non_simple() {
        return Err(Error::NonSimpleB { t });
    }
    let canon = ode.canonical()?;
    let tau0 = canon.shift() - ode.shift();

    let qt = opts.flow.quad_tol;
    let positive = outer_band_displacement(&canon, 1.0, qt);
    let negative = outer_band_displacement(&canon, -1.0, qt);
    let identity = |(s, o): (f64, f64)| {
        (s - 1.0).abs() <= opts.outer_band_tol && o.abs() <= opts.outer_band_tol
    };
    let outer = OuterBands { positive, negative, ok: identity(positive) && identity(negative) };

    let bands = band_structure(&canon, &opts.flow)?;
    let hypothesis = match hypothesis_check(&canon, &bands, opts) {
        Ok(h) => h,
        Err(Error::NoTwoZeroBand) => absent_report(),
        Err(e) => return Err(e),
    };
    let invariants = match hypothesis.band {
        Some(band) => Some(cycle_invariants(&canon, band, opts.invariant_grid, &opts.flow)?),
        None => None,
    };

    let mut samples = Vec::new();
    for (x, band) in scan_points(&bands, opts) {
        samples.push(DisplacementSample { x, delta: displacement(&canon, x, &opts.flow)?, band });
    }
    let max_abs_displacement = samples.iter().map(|s| s.delta.abs()).fold(0.0, f64::max);
    let limit_cycles = locate_cycles(&canon, &samples, opts)?;

    let witness = find_common_witness(ode.a(), ode.b())?;
    let found = witness.witness().is_some();
    let numeric_center = outer.ok && max_abs_displacement < opts.center_tol;
    let nonzero = !outer.ok || max_abs_displacement > opts.nonzero_tol;
    let verdict = if nonzero {
        Verdict::NotGlobalCenter
    } else if numeric_center && found && hypothesis.holds {
        Verdict::GlobalCenter
    } else {
        Verdict::Inconclusive
    };

    Ok(ClassificationReport {
        verdict,
        tau0,
        tolerances: Tolerances {
            quad: qt,
            crossing: opts.flow.crossing_tol,
            grid_per_period: opts.flow.grid_per_period,
            center: opts.center_tol,
            nonzero: opts.nonzero_tol,
            isolation: opts.isolation_bracket,
            outer_band: opts.outer_band_tol,
        },
        outer,
        bands,
        hypothesis,
        invariants,
        witness,
        numeric: NumericEvidence { max_abs_displacement, samples, limit_cycles },
        consistency: numeric_center == found,
    })
}
