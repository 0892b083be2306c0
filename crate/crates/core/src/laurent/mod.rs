//! Complex Laurent polynomials `Σ_{k=-n..n} ω_k z^k`.
//!
//! Under `z = e^{it}` a real trigonometric polynomial of degree `n` corresponds to a
//! conjugate-symmetric Laurent polynomial (`ω_{-k} = conj(ω_k)`) of the same degree,
//! and back. Zeros in `t` become roots on the unit circle of `z^n p(z)`.

mod aberth;

pub use aberth::aberth_roots;

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;
use num_complex::Complex64;
use num_traits::Zero as _;

use crate::error::{Error, Result};
use crate::tol;
use crate::trigpoly::{wrap_period, TrigPoly, Zero, ZeroList};

/// Laurent polynomial of degree `n`, stored as `ω_{-n}, .., ω_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    n: usize,
    coeffs: Vec<Complex64>,
}

/// Result of a conjugate-symmetry check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AMembership {
    pub in_a: bool,
    /// `max_k |ω_{-k} - conj(ω_k)|` over `k ≥ 1`; the imaginary part of `ω_0` is ignored.
    pub max_asymmetry: f64,
}

impl LaurentPoly {
    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, Complex64)>>(terms: I) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        let n = terms.iter().map(|(k, _)| k.unsigned_abs() as usize).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::zero(); 2 * n + 1];
        for (k, c) in terms {
            coeffs[(k + n as i32) as usize] += c;
        }
        let mut p = LaurentPoly { n, coeffs };
        p.trim();
        p
    }

    pub fn from_trig(p: &TrigPoly) -> Self {
        let n = p.degree();
        let mut coeffs = vec![Complex64::zero(); 2 * n + 1];
        coeffs[n] = Complex64::new(p.a0(), 0.0);
        for k in 1..=n {
            let (a, b) = (p.cos_coeff(k), p.sin_coeff(k));
            coeffs[n + k] = Complex64::new(a / 2.0, -b / 2.0);
            coeffs[n - k] = Complex64::new(a / 2.0, b / 2.0);
        }
        LaurentPoly { n, coeffs }
    }

    fn trim(&mut self) {
        while self.n > 0
            && self.coeffs[0].norm() < tol::COEFF
            && self.coeffs[2 * self.n].norm() < tol::COEFF
        {
            self.coeffs.pop();
            self.coeffs.remove(0);
            self.n -= 1;
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Coefficient of `z^k`; zero outside `[-n, n]`.
    pub fn coeff(&self, k: i32) -> Complex64 {
        let idx = k + self.n as i32;
        if idx < 0 {
            return Complex64::zero();
        }
        self.coeffs.get(idx as usize).copied().unwrap_or_else(Complex64::zero)
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficients, for debug dumps.
    pub fn terms(&self) -> impl Iterator<Item = (i32, Complex64)> + '_ {
        let n = self.n as i32;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, &c)| (i as i32 - n, c))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zinv = z.inv();
        let mut acc = Complex64::zero();
        let mut zk = Complex64::new(1.0, 0.0);
        let mut zik = Complex64::new(1.0, 0.0);
        acc += self.coeffs[self.n];
        for k in 1..=self.n {
            zk *= z;
            zik *= zinv;
            acc += self.coeffs[self.n + k] * zk + self.coeffs[self.n - k] * zik;
        }
        acc
    }

    pub fn check_membership(&self) -> AMembership {
        let max_asymmetry = (1..=self.n as i32)
            .map(|k| (self.coeff(-k) - self.coeff(k).conj()).norm())
            .fold(0.0, f64::max);
        AMembership { in_a: max_asymmetry < tol::A_MEMBERSHIP, max_asymmetry }
    }

    /// Inverse of [`from_trig`](Self::from_trig).
    pub fn to_trig(&self) -> Result<TrigPoly> {
        let m = self.check_membership();
        if !m.in_a {
            return Err(Error::NotInA { asymmetry: m.max_asymmetry });
        }
        // Average the two symmetric halves so rounding noise does not favour a side.
        let (cos, sin) = (1..=self.n as i32)
            .map(|k| {
                let (hi, lo) = (self.coeff(k), self.coeff(-k));
                (hi.re + lo.re, lo.im - hi.im)
            })
            .unzip();
        Ok(TrigPoly::new(self.coeffs[self.n].re, cos, sin))
    }

    /// Roots on the unit circle, reported as `t = arg z ∈ [0, 2π)`.
    ///
    /// `z^n p(z)` is solved for all its roots at once; roots closer than
    /// [`tol::CLUSTER_RADIUS`] are merged and flagged non-simple.
    pub fn unit_circle_roots(&self) -> Result<ZeroList> {
        let scale = self.coeffs.iter().fold(0.0, |m: f64, c| m.max(c.norm()));
        if scale < tol::COEFF {
            return Err(Error::IdenticallyZero);
        }
        // Ascending coefficients of z^n p(z), without the factor z^j of roots at 0.
        let low = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let high = self.coeffs.iter().rev().take_while(|c| c.is_zero()).count();
        let poly = &self.coeffs[low..self.coeffs.len() - high];
        if poly.len() < 2 {
            return Ok(ZeroList::default());
        }
        let roots = aberth_roots(poly);
        let on_circle = |z: Complex64| (z.norm() - 1.0).abs() < tol::UNIT_CIRCLE;
        let push = |zeros: &mut Vec<Zero>, z: Complex64, simple: bool| {
            zeros.push(Zero { t: wrap_period(z.arg().rem_euclid_tau()), simple });
        };

        // Single-linkage groups of nearby roots.
        let mut group = vec![usize::MAX; roots.len()];
        for i in 0..roots.len() {
            if group[i] != usize::MAX {
                continue;
            }
            group[i] = i;
            let mut stack = vec![i];
            while let Some(k) = stack.pop() {
                for j in 0..roots.len() {
                    if group[j] == usize::MAX
                        && (roots[j] - roots[k]).norm() < tol::MULTIPLE_ROOT_RADIUS
                    {
                        group[j] = i;
                        stack.push(j);
                    }
                }
            }
        }

        let mut zeros = Vec::new();
        for g in 0..roots.len() {
            let members: Vec<Complex64> =
                (0..roots.len()).filter(|&j| group[j] == g).map(|j| roots[j]).collect();
            if members.is_empty() {
                continue;
            }
            if members.iter().all(|&z| on_circle(z)) {
                // Nearby roots on the circle: merge only those that coincide.
                let mut used = vec![false; members.len()];
                for i in 0..members.len() {
                    if used[i] {
                        continue;
                    }
                    let mut sum = Complex64::zero();
                    let mut count = 0usize;
                    for j in i..members.len() {
                        if !used[j] && (members[j] - members[i]).norm() < tol::CLUSTER_RADIUS {
                            used[j] = true;
                            sum += members[j];
                            count += 1;
                        }
                    }
                    push(&mut zeros, sum / count as f64, count == 1);
                }
                continue;
            }
            if members.len() < 2 {
                continue;
            }
            // A split multiple root: its centre is near the circle and the polynomial vanishes there.
            let centre = members.iter().sum::<Complex64>() / members.len() as f64;
            let w = centre / centre.norm();
            let near = (centre.norm() - 1.0).abs() < tol::MULTIPLE_ROOT_RADIUS;
            if near && self.eval(w).norm() <= tol::ROOT * scale {
                push(&mut zeros, w, false);
            }
        }
        zeros.sort_by(|a, b| a.t.total_cmp(&b.t));
        Ok(ZeroList { zeros })
    }
}

trait RemTau {
    fn rem_euclid_tau(self) -> f64;
}

impl RemTau for f64 {
    fn rem_euclid_tau(self) -> f64 {
        if self < 0.0 {
            self + TAU
        } else {
            self
        }
    }
}

/// Free-function form of [`LaurentPoly::from_trig`].
pub fn trig_to_laurent(p: &TrigPoly) -> LaurentPoly {
    LaurentPoly::from_trig(p)
}

/// Free-function form of [`LaurentPoly::to_trig`].
pub fn laurent_to_trig(p: &LaurentPoly) -> Result<TrigPoly> {
    p.to_trig()
}
