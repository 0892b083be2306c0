//! From numerics to a verdict.
//!
//! [`band_structure`] splits the initial values `x = u(0)` into bands on which
//! the number of zeros of `u(·, x)` is constant. The edges are the values at
//! `t = 0` of the solutions through `(τ, 0)` for each zero `τ` of `b`.
//! [`hypothesis_check`] looks for a two-zero band whose zeros merge at one of its
//! edges, [`cycle_invariants`] evaluates the crossing-time identities on such a
//! band, and [`center_classify`] runs the whole pipeline and cross-checks the
//! displacement scan against the composition witness search.

mod bands;
mod classify;
mod hypothesis;
mod invariants;

pub use bands::{band_candidates, band_structure, Band, BandStructure, SignProfile};
pub use classify::{
    center_classify, ClassificationReport, DisplacementSample, LimitCycle, NumericEvidence,
    OuterBands, Tolerances, Verdict,
};
pub use hypothesis::{hypothesis_check, Edge, GapSample, HypothesisReport};
pub use invariants::{abelian_cycle_integral, cycle_invariants, CycleInvariantReport, CycleSample};

use crate::flow::FlowOptions;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AnalysisOptions {
    pub flow: FlowOptions,
    /// `max |Δ|` below this is numeric center evidence.
    pub center_tol: f64,
    /// `|Δ|` above this somewhere is a certified nonzero return.
    pub nonzero_tol: f64,
    pub isolation_bracket: f64,
    pub outer_band_tol: f64,
    /// Displacement samples per finite band.
    pub band_points: usize,
    /// Displacement samples on the two outer bands together.
    pub outer_points: usize,
    /// Extent of the outer scan; defaults to one band-span beyond the outer edges.
    pub x_range: Option<(f64, f64)>,
    /// Samples on the geometric grid towards a band edge.
    pub hypothesis_samples: usize,
    /// First sample distance from the edge, as a fraction of the band width.
    pub hypothesis_start: f64,
    pub merge_gap: f64,
    /// Grid size for the cycle invariants of a classified two-zero band.
    pub invariant_grid: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            flow: FlowOptions::default(),
            center_tol: tol::CENTER,
            nonzero_tol: tol::NONZERO_DISPLACEMENT,
            isolation_bracket: tol::ISOLATION_BRACKET,
            outer_band_tol: tol::OUTER_BAND,
            band_points: 41,
            outer_points: 10,
            x_range: None,
            hypothesis_samples: 8,
            hypothesis_start: 1.0 / 512.0,
            merge_gap: tol::MERGE_GAP,
            invariant_grid: 9,
        }
    }
}

#[cfg(test)]
mod tests;
