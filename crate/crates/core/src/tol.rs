//! Default tolerances shared across the crate.
//!
//! Everything here is absolute unless stated otherwise. Reports echo the values
//! actually used so a run can be reproduced.

/// Trailing coefficients below this are trimmed from the stored degree.
pub const COEFF: f64 = 1e-12;
/// Residual allowed in `|p(t)|` at a reported root.
pub const ROOT: f64 = 1e-10;
/// A root is simple when `|p'(t)|` exceeds this.
pub const SIMPLE_ROOT: f64 = 1e-8;
/// Distance from the unit circle at which a complex root still counts as real `t`.
pub const UNIT_CIRCLE: f64 = 1e-8;
/// Complex roots closer than this are merged into one multiple root.
pub const CLUSTER_RADIUS: f64 = 1e-7;
/// A root of multiplicity `m` is computed as a cluster of radius about `ε^{1/m}`;
/// roots this close are examined together as a possible multiple root.
pub const MULTIPLE_ROOT_RADIUS: f64 = 1e-4;
/// Harmonics with coefficient magnitude above this are part of the Fourier support.
pub const SUPPORT: f64 = 1e-10;
/// Conjugate-symmetry defect accepted for membership in the real subring.
pub const A_MEMBERSHIP: f64 = 1e-10;
/// Conjugate-symmetry defect accepted for a peeled inner factor.
pub const PEEL_SYMMETRY: f64 = 1e-8;
/// Least-squares residual below which `F = P(H)` is accepted.
pub const OUTER_SOLVE: f64 = 1e-9;
/// Recomposition residual below which a witness is accepted.
pub const WITNESS: f64 = 1e-9;
/// Largest linear drift of an antiderivative still treated as periodic.
pub const DRIFT: f64 = 1e-10;
/// Absolute tolerance of the adaptive quadrature in the flow kernel.
pub const QUAD: f64 = 1e-11;
/// Crossing times are located to this accuracy.
pub const CROSSING_TIME: f64 = 1e-12;
/// `|b(t)|` and `|b'(t)|` below this at a crossing mark a tangency.
pub const TANGENCY: f64 = 1e-9;
/// A zero of the solution this close in time to a zero of `b` is a tangency;
/// double roots are only located to about `√ε`.
pub const TANGENCY_WINDOW: f64 = 1e-7;
/// Crossing-bracketing steps per period.
pub const GRID_PER_PERIOD: usize = 512;
/// Displacements below this over a whole scan count as numeric center evidence.
pub const CENTER: f64 = 1e-6;
/// Displacements above this are a certified nonzero return.
pub const NONZERO_DISPLACEMENT: f64 = 1e-5;
/// Width of the bracket that certifies an isolated sign change of the displacement.
pub const ISOLATION_BRACKET: f64 = 1e-3;
/// Slope and offset tolerance of the closed-form outer-band map.
pub const OUTER_BAND: f64 = 1e-8;
/// Band-edge candidates closer than this are merged.
pub const EDGE_DEDUP: f64 = 1e-8;
/// Extrapolated gap below which two crossings are considered merged.
pub const MERGE_GAP: f64 = 1e-3;
