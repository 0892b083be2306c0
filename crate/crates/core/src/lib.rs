//! Analysis of the scalar piecewise-linear periodic equation
//!
//! ```text
//! x' = a(t)|x| + b(t)
//! ```
//!
//! where `a` and `b` are real trigonometric polynomials of period 2π.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! * [`trigpoly`]: exact arithmetic and root isolation for trigonometric polynomials,
//! * [`laurent`]: the correspondence with Laurent polynomials and roots on the unit circle,
//! * [`decompose`]: the composition condition `a = p(h)h'`, `b = q(h)h'`,
//! * [`flow`]: event-driven integration with exact zero crossings and the return map,
//! * [`analysis`]: band structure, the two-zero hypothesis, cycle invariants and
//!   the center classifier that ties numerics to the algebra.
#![no_std]
#![forbid(unsafe_code)]
#![cfg_attr(test, allow(unused_imports))]

extern crate alloc;

pub mod analysis;
pub mod decompose;
pub mod error;
pub mod flow;
pub mod laurent;
mod linalg;
pub mod quad;
pub mod roots;
pub mod tol;
pub mod trigpoly;

pub use error::{Error, Result};
pub use trigpoly::{DriftTrigPoly, RealPoly, TrigPoly, Zero, ZeroList};
