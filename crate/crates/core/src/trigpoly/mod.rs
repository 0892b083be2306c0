//! Real trigonometric polynomials on the period `[0, 2π)`.
//!
//! A [`TrigPoly`] stores `a0 + Σ_{k=1..n} a_k cos(kt) + b_k sin(kt)`. Products are
//! expanded with the product-to-sum identities, so every operation here is exact
//! up to floating point rounding.

mod real;

pub use real::RealPoly;

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::ops::{Add, Mul, Neg, Sub};
#[allow(unused_imports)] // inherent f64 math shadows it when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::tol;

/// `a0 + Σ a_k cos(kt) + b_k sin(kt)`.
///
/// The cosine and sine coefficient vectors always have the same length, which is
/// the degree. Trailing harmonics whose coefficients are both below
/// [`tol::COEFF`] are trimmed on construction.
#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(from = "TrigRepr"))]
pub struct TrigPoly {
    a0: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

/// Interchange form: `{"a0": r, "cos": [..], "sin": [..]}`, arrays indexed from `k = 1`.
#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct TrigRepr {
    #[serde(default)]
    a0: f64,
    #[serde(default)]
    cos: Vec<f64>,
    #[serde(default)]
    sin: Vec<f64>,
}

#[cfg(feature = "serde")]
impl From<TrigRepr> for TrigPoly {
    fn from(r: TrigRepr) -> Self {
        TrigPoly::new(r.a0, r.cos, r.sin)
    }
}

impl TrigPoly {
    pub fn new(a0: f64, mut cos: Vec<f64>, mut sin: Vec<f64>) -> Self {
        let n = cos.len().max(sin.len());
        cos.resize(n, 0.0);
        sin.resize(n, 0.0);
        let mut p = TrigPoly { a0, cos, sin };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        TrigPoly { a0: c, cos: Vec::new(), sin: Vec::new() }
    }

    /// `amp · cos(k t)`.
    pub fn cosine(k: usize, amp: f64) -> Self {
        if k == 0 {
            return Self::constant(amp);
        }
        let mut cos = vec![0.0; k];
        cos[k - 1] = amp;
        Self::new(0.0, cos, Vec::new())
    }

    /// `amp · sin(k t)`.
    pub fn sine(k: usize, amp: f64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let mut sin = vec![0.0; k];
        sin[k - 1] = amp;
        Self::new(0.0, Vec::new(), sin)
    }

    fn trim(&mut self) {
        while let (Some(c), Some(s)) = (self.cos.last(), self.sin.last()) {
            if c.abs() < tol::COEFF && s.abs() < tol::COEFF {
                self.cos.pop();
                self.sin.pop();
            } else {
                break;
            }
        }
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    /// Coefficient of `cos(kt)`; `k = 0` gives the constant term.
    pub fn cos_coeff(&self, k: usize) -> f64 {
        match k {
            0 => self.a0,
            _ => self.cos.get(k - 1).copied().unwrap_or(0.0),
        }
    }

    pub fn sin_coeff(&self, k: usize) -> f64 {
        match k {
            0 => 0.0,
            _ => self.sin.get(k - 1).copied().unwrap_or(0.0),
        }
    }

    pub fn degree(&self) -> usize {
        self.cos.len()
    }

    pub fn is_constant(&self) -> bool {
        self.cos.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant() && self.a0.abs() < tol::COEFF
    }

    /// Mean value over one period.
    pub fn mean(&self) -> f64 {
        self.a0
    }

    pub fn eval(&self, t: f64) -> f64 {
        let (s1, c1) = t.sin_cos();
        let (mut ck, mut sk) = (c1, s1);
        let mut acc = self.a0;
        for (a, b) in self.cos.iter().zip(&self.sin) {
            acc += a * ck + b * sk;
            let next_c = ck * c1 - sk * s1;
            sk = sk * c1 + ck * s1;
            ck = next_c;
        }
        acc
    }

    /// Largest coefficient magnitude.
    pub fn norm_inf(&self) -> f64 {
        self.cos.iter().chain(&self.sin).fold(self.a0.abs(), |m, c| m.max(c.abs()))
    }

    /// Largest coefficient-wise deviation from `other`.
    pub fn max_coeff_diff(&self, other: &TrigPoly) -> f64 {
        (self - other).norm_inf()
    }

    pub fn scale(&self, s: f64) -> TrigPoly {
        TrigPoly::new(
            self.a0 * s,
            self.cos.iter().map(|c| c * s).collect(),
            self.sin.iter().map(|c| c * s).collect(),
        )
    }

    pub fn derivative(&self) -> TrigPoly {
        let (cos, sin) = (1..=self.degree())
            .map(|k| {
                let kf = k as f64;
                (kf * self.sin[k - 1], -kf * self.cos[k - 1])
            })
            .unzip();
        TrigPoly::new(0.0, cos, sin)
    }

    /// `∫_0^t p(s) ds`, split into the linear drift `a0 · t` and a periodic part.
    pub fn antiderivative(&self) -> DriftTrigPoly {
        let mut constant = 0.0;
        let mut cos = Vec::with_capacity(self.degree());
        let mut sin = Vec::with_capacity(self.degree());
        for k in 1..=self.degree() {
            let kf = k as f64;
            let (a, b) = (self.cos[k - 1], self.sin[k - 1]);
            constant += b / kf;
            cos.push(-b / kf);
            sin.push(a / kf);
        }
        DriftTrigPoly { drift: self.a0, trig: TrigPoly::new(constant, cos, sin) }
    }

    /// `t ↦ p(t + τ)`.
    pub fn time_shift(&self, tau: f64) -> TrigPoly {
        let (cos, sin) = (1..=self.degree())
            .map(|k| {
                let (s, c) = (k as f64 * tau).sin_cos();
                let (a, b) = (self.cos[k - 1], self.sin[k - 1]);
                (a * c + b * s, b * c - a * s)
            })
            .unzip();
        TrigPoly::new(self.a0, cos, sin)
    }

    /// `t ↦ p(-t)`.
    pub fn reversed(&self) -> TrigPoly {
        TrigPoly::new(self.a0, self.cos.clone(), self.sin.iter().map(|s| -s).collect())
    }

    /// `t ↦ p(k t)`.
    pub fn expand(&self, k: usize) -> TrigPoly {
        assert!(k >= 1, "frequency factor must be positive");
        let n = self.degree() * k;
        let mut cos = vec![0.0; n];
        let mut sin = vec![0.0; n];
        for j in 1..=self.degree() {
            cos[j * k - 1] = self.cos[j - 1];
            sin[j * k - 1] = self.sin[j - 1];
        }
        TrigPoly::new(self.a0, cos, sin)
    }

    /// Inverse of [`expand`](Self::expand): `q` with `q(k t) = p(t)`.
    ///
    /// Harmonics whose index is not a multiple of `k` are dropped; callers check
    /// the support with [`fourier_support_gcd`] first.
    pub fn compress(&self, k: usize) -> TrigPoly {
        assert!(k >= 1, "frequency factor must be positive");
        let n = self.degree() / k;
        let cos = (1..=n).map(|j| self.cos[j * k - 1]).collect();
        let sin = (1..=n).map(|j| self.sin[j * k - 1]).collect();
        TrigPoly::new(self.a0, cos, sin)
    }

    /// Zeros on `[0, 2π)` with simplicity flags.
    pub fn zeros(&self) -> Result<ZeroList> {
        zeros_on_period(self)
    }

    fn full_coeffs(&self) -> (Vec<f64>, Vec<f64>) {
        let mut c = Vec::with_capacity(self.degree() + 1);
        c.push(self.a0);
        c.extend_from_slice(&self.cos);
        let mut s = Vec::with_capacity(self.degree() + 1);
        s.push(0.0);
        s.extend_from_slice(&self.sin);
        (c, s)
    }

    fn from_full(mut c: Vec<f64>, mut s: Vec<f64>) -> TrigPoly {
        let a0 = c.remove(0);
        s.remove(0);
        TrigPoly::new(a0, c, s)
    }
}

/// Adds `cc · cos(m t) + ss · sin(m t)` for a possibly negative harmonic `m`.
fn accumulate(c: &mut [f64], s: &mut [f64], m: isize, cc: f64, ss: f64) {
    let idx = m.unsigned_abs();
    c[idx] += cc;
    if m >= 0 {
        s[idx] += ss;
    } else {
        s[idx] -= ss;
    }
}

impl Mul for &TrigPoly {
    type Output = TrigPoly;

    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        let (pc, ps) = self.full_coeffs();
        let (qc, qs) = rhs.full_coeffs();
        let n = self.degree() + rhs.degree();
        let mut c = vec![0.0; n + 1];
        let mut s = vec![0.0; n + 1];
        for (j, (&aj, &bj)) in pc.iter().zip(&ps).enumerate() {
            for (k, (&ak, &bk)) in qc.iter().zip(&qs).enumerate() {
                let (sum, diff) = ((j + k) as isize, j as isize - k as isize);
                // cos j cos k, sin j sin k, sin j cos k, cos j sin k
                let cc = 0.5 * aj * ak;
                let ssn = 0.5 * bj * bk;
                let sc = 0.5 * bj * ak;
                let cs = 0.5 * aj * bk;
                accumulate(&mut c, &mut s, sum, cc - ssn, sc + cs);
                accumulate(&mut c, &mut s, diff, cc + ssn, sc - cs);
            }
        }
        // sin(0·t) terms are identically zero.
        s[0] = 0.0;
        TrigPoly::from_full(c, s)
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;

    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let n = self.degree().max(rhs.degree());
        let cos = (1..=n).map(|k| self.cos_coeff(k) + rhs.cos_coeff(k)).collect();
        let sin = (1..=n).map(|k| self.sin_coeff(k) + rhs.sin_coeff(k)).collect();
        TrigPoly::new(self.a0 + rhs.a0, cos, sin)
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;

    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        self + &(-rhs)
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;

    fn neg(self) -> TrigPoly {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for TrigPoly {
            type Output = TrigPoly;
            fn $method(self, rhs: TrigPoly) -> TrigPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&TrigPoly> for TrigPoly {
            type Output = TrigPoly;
            fn $method(self, rhs: &TrigPoly) -> TrigPoly {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for TrigPoly {
    type Output = TrigPoly;

    fn neg(self) -> TrigPoly {
        -&self
    }
}

/// `drift · t + trig(t)`: antiderivatives of trigonometric polynomials.
#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DriftTrigPoly {
    pub drift: f64,
    pub trig: TrigPoly,
}

impl DriftTrigPoly {
    pub fn eval(&self, t: f64) -> f64 {
        self.drift * t + self.trig.eval(t)
    }

    pub fn derivative(&self) -> TrigPoly {
        &self.trig.derivative() + &TrigPoly::constant(self.drift)
    }

    /// Whether the drift vanishes within `tol`, i.e. the value is a trigonometric polynomial.
    pub fn is_periodic(&self, tol: f64) -> bool {
        self.drift.abs() <= tol
    }
}

/// `P ∘ h`, evaluated by Horner's scheme in the ring of trigonometric polynomials.
pub fn compose_poly(p: &RealPoly, h: &TrigPoly) -> TrigPoly {
    let mut acc = TrigPoly::zero();
    for &c in p.coeffs().iter().rev() {
        acc = &(&acc * h) + &TrigPoly::constant(c);
    }
    acc
}

/// Gcd of the harmonic indices present in any of `ps`.
///
/// A result `k` means every input is `2π/k`-periodic.
pub fn fourier_support_gcd(ps: &[TrigPoly]) -> Result<usize> {
    let g = ps
        .iter()
        .flat_map(|p| {
            (1..=p.degree()).filter(move |&k| {
                p.cos_coeff(k).abs() > tol::SUPPORT || p.sin_coeff(k).abs() > tol::SUPPORT
            })
        })
        .fold(0, gcd);
    if g == 0 {
        Err(Error::AllConstant)
    } else {
        Ok(g)
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One zero of a trigonometric polynomial.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Zero {
    pub t: f64,
    pub simple: bool,
}

/// Zeros on `[0, 2π)`, strictly increasing in `t`.
#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ZeroList {
    pub zeros: Vec<Zero>,
}

impl ZeroList {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Zero> {
        self.zeros.iter()
    }

    pub fn times(&self) -> Vec<f64> {
        self.zeros.iter().map(|z| z.t).collect()
    }

    pub fn all_simple(&self) -> bool {
        self.zeros.iter().all(|z| z.simple)
    }

    pub fn first_non_simple(&self) -> Option<f64> {
        self.zeros.iter().find(|z| !z.simple).map(|z| z.t)
    }
}

/// All zeros of `p` in `[0, 2π)`.
///
/// Roots are isolated on the unit circle through the Laurent form of `p`, then
/// polished on the real line. A zero is simple when it is not part of a root
/// cluster and `|p'(t)|` exceeds [`tol::SIMPLE_ROOT`].
pub fn zeros_on_period(p: &TrigPoly) -> Result<ZeroList> {
    if p.is_constant() {
        return if p.is_zero() { Err(Error::IdenticallyZero) } else { Ok(ZeroList::default()) };
    }
    let raw = LaurentPoly::from_trig(p).unit_circle_roots()?;
    let dp = p.derivative();
    let zeros = raw
        .zeros
        .into_iter()
        .map(|z| {
            let mut t = z.t;
            if z.simple {
                t = polish(p, &dp, t);
            }
            let simple = z.simple && dp.eval(t).abs() > tol::SIMPLE_ROOT;
            Zero { t: wrap_period(t), simple }
        })
        .collect::<Vec<_>>();
    let mut zeros = zeros;
    zeros.sort_by(|a, b| a.t.total_cmp(&b.t));
    zeros.dedup_by(|a, b| (a.t - b.t).abs() < tol::CLUSTER_RADIUS);
    Ok(ZeroList { zeros })
}

fn polish(p: &TrigPoly, dp: &TrigPoly, t0: f64) -> f64 {
    let mut t = t0;
    for _ in 0..4 {
        let d = dp.eval(t);
        if d == 0.0 {
            break;
        }
        let step = p.eval(t) / d;
        if !step.is_finite() || (t - step - t0).abs() > 1e-6 {
            return t;
        }
        t -= step;
    }
    t
}

/// Maps `t` into `[0, 2π)`; values within rounding of `2π` map to `0`.
pub fn wrap_period(t: f64) -> f64 {
    let mut w = t - TAU * (t / TAU).floor();
    if w >= TAU - 1e-12 {
        w = 0.0;
    }
    w
}
