//! The composition condition `a = p(h) h'`, `b = q(h) h'`.
//!
//! Forward: build `(a, b)` from a witness `(p, q, h)`. Backward: given `(a, b)`,
//! integrate to `A`, `B` and look for a common inner factor `H` with `A = P(H)`,
//! `B = Q(H)`. Candidates for `H` come from peeling the top Laurent coefficients
//! of `A`, normalised so that `H` has no constant term and `P` has leading
//! coefficient `±1`.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] // inherent f64 math shadows it when std is linked
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg::least_squares;
use crate::tol;
use crate::trigpoly::{compose_poly, fourier_support_gcd, RealPoly, TrigPoly};

/// `(p, q, h)` with `a = p(h) h'` and `b = q(h) h'`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CompositionWitness {
    pub p: RealPoly,
    pub q: RealPoly,
    pub h: TrigPoly,
    /// Integrated outer polynomials `(P, Q)` with `A = P∘h`, `B = Q∘h`, when known.
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub integrated: Option<(RealPoly, RealPoly)>,
}

impl CompositionWitness {
    pub fn new(p: RealPoly, q: RealPoly, h: TrigPoly) -> Self {
        CompositionWitness { p, q, h, integrated: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum OutcomeKind {
    Witness {
        witness: CompositionWitness,
    },
    /// `a` and `b` are both `2π/k`-periodic and no polynomial witness was found.
    FrequencyFactor {
        k: usize,
    },
    None,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DecompositionOutcome {
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub kind: OutcomeKind,
    /// Recomposition residual of the witness, or the best residual seen otherwise.
    pub residual: f64,
    /// Gcd of the harmonic support of `(a, b)`; 1 when there is no common factor.
    pub frequency_factor: usize,
}

impl DecompositionOutcome {
    pub fn witness(&self) -> Option<&CompositionWitness> {
        match &self.kind {
            OutcomeKind::Witness { witness } => Some(witness),
            _ => None,
        }
    }
}

/// `(a, b) = (p(h) h', q(h) h')`.
pub fn construct_from_witness(
    p: &RealPoly,
    q: &RealPoly,
    h: &TrigPoly,
) -> Result<(TrigPoly, TrigPoly)> {
    if h.is_constant() {
        return Err(Error::ConstantInner);
    }
    let dh = h.derivative();
    Ok((&compose_poly(p, h) * &dh, &compose_poly(q, h) * &dh))
}

/// Largest coefficient deviation of `a - p(h)h'` and `b - q(h)h'`.
pub fn verify_witness(a: &TrigPoly, b: &TrigPoly, w: &CompositionWitness) -> f64 {
    let dh = w.h.derivative();
    let ra = a.max_coeff_diff(&(&compose_poly(&w.p, &w.h) * &dh));
    let rb = b.max_coeff_diff(&(&compose_poly(&w.q, &w.h) * &dh));
    ra.max(rb)
}

/// Real `P` with `F = P ∘ H`, by least squares on the Fourier coefficients.
///
/// The degree of `P` is `deg F / deg H`. Fails with the residual attached when
/// the coefficient mismatch exceeds [`tol::OUTER_SOLVE`].
pub fn solve_outer_poly(f: &TrigPoly, h: &TrigPoly) -> Result<RealPoly> {
    solve_outer_with_residual(f, h).and_then(|(p, r)| {
        if r < tol::OUTER_SOLVE {
            Ok(p)
        } else {
            Err(Error::NoSolution { residual: r })
        }
    })
}

fn solve_outer_with_residual(f: &TrigPoly, h: &TrigPoly) -> Result<(RealPoly, f64)> {
    if h.is_constant() {
        return Err(Error::ConstantInner);
    }
    let m = f.degree() / h.degree();
    let rows = 2 * f.degree().max(m * h.degree()) + 1;
    let flatten = |p: &TrigPoly| -> Vec<f64> {
        let n = (rows - 1) / 2;
        let mut v = Vec::with_capacity(rows);
        v.push(p.a0());
        v.extend((1..=n).map(|k| p.cos_coeff(k)));
        v.extend((1..=n).map(|k| p.sin_coeff(k)));
        v
    };
    // Solve in terms of h / s with s = |h|_∞ so that the powers stay O(1).
    let s = h.norm_inf();
    let hs = h.scale(1.0 / s);
    let mut columns = Vec::with_capacity(m + 1);
    let mut power = TrigPoly::constant(1.0);
    for _ in 0..=m {
        columns.push(flatten(&power));
        power = &power * &hs;
    }
    let scaled = RealPoly::new(least_squares(&columns, &flatten(f)));
    let residual = f.max_coeff_diff(&compose_poly(&scaled, &hs));
    let mut sk = 1.0;
    let coeffs = scaled
        .coeffs()
        .iter()
        .map(|c| {
            let v = c / sk;
            sk *= s;
            v
        })
        .collect();
    Ok((RealPoly::new(coeffs), residual))
}

/// Candidate inner factors `H` of degree `d` with `A = P ∘ H`.
///
/// Normalisation: `H` has zero constant term and `P` has leading coefficient `±1`.
/// With `n = deg A` and `m = n / d`, the top Laurent coefficient gives
/// `η_d^m = ±α_n` (every root is tried) and the coefficients of `z^{n-j}`,
/// `j < d`, are linear in `η_{d-j}` once the higher ones are known. The same
/// peel from the bottom must reproduce the conjugates; candidates that do not
/// are dropped, as are those for which `solve_outer_poly(A, H)` fails.
pub fn peel_candidates(a: &TrigPoly, d: usize) -> Vec<TrigPoly> {
    peel_with_outer(a, d).into_iter().map(|(h, _)| h).collect()
}

fn peel_with_outer(a: &TrigPoly, d: usize) -> Vec<(TrigPoly, RealPoly)> {
    let n = a.degree();
    if d == 0 || n == 0 || !n.is_multiple_of(d) {
        return Vec::new();
    }
    let m = n / d;
    let la = LaurentPoly::from_trig(a);
    let top: Vec<Complex64> = (0..d).map(|j| la.coeff((n - j) as i32)).collect();
    let bottom: Vec<Complex64> = (0..d).map(|j| la.coeff(-((n - j) as i32))).collect();

    let mut out: Vec<(TrigPoly, RealPoly)> = Vec::new();
    // For odd m the sign of P's leading coefficient is absorbed by H -> -H.
    let signs: &[f64] = if m.is_multiple_of(2) { &[1.0, -1.0] } else { &[1.0] };
    for &sign in signs {
        let lead = top[0] * sign;
        for r in 0..m {
            let eta_top = match peel_side(&top, sign, d, m, nth_root(lead, m, r)) {
                Some(e) => e,
                None => continue,
            };
            let eta_bottom = match peel_side(&bottom, sign, d, m, eta_top[0].conj()) {
                Some(e) => e,
                None => continue,
            };
            let asym = eta_top
                .iter()
                .zip(&eta_bottom)
                .map(|(t, b)| (b - t.conj()).norm())
                .fold(0.0, f64::max);
            let lead_defect = (eta_bottom[0].powu(m as u32) - bottom[0] * sign).norm();
            if asym > tol::PEEL_SYMMETRY
                || lead_defect > tol::PEEL_SYMMETRY * (1.0 + bottom[0].norm())
            {
                continue;
            }
            // eta_top[j] is the coefficient of z^{d-j}.
            let h = LaurentPoly::from_terms(eta_top.iter().enumerate().flat_map(|(j, &e)| {
                let k = (d - j) as i32;
                [(k, e), (-k, e.conj())]
            }));
            let Ok(h) = h.to_trig() else { continue };
            if h.is_constant() {
                continue;
            }
            if let Ok(p) = solve_outer_poly(a, &h) {
                if !out.iter().any(|(g, _)| g.max_coeff_diff(&h) < 1e-9) {
                    out.push((h, p));
                }
            }
        }
    }
    out
}

/// Solves for `η_d, .., η_1` from the `d` outermost coefficients on one side.
///
/// `coeffs[j]` is the coefficient of `z^{±(n-j)}`; `lead` is the chosen root of
/// `η_d^m = sign · coeffs[0]`. Returns `η_d, .., η_1` in that order.
fn peel_side(
    coeffs: &[Complex64],
    sign: f64,
    d: usize,
    m: usize,
    lead: Complex64,
) -> Option<Vec<Complex64>> {
    let mut eta = vec![Complex64::zero(); d];
    eta[0] = lead;
    let denom = lead.powu(m as u32 - 1) * m as f64;
    if denom.norm() == 0.0 {
        return None;
    }
    for j in 1..d {
        // Coefficient of the (j)-th sub-leading term of (Σ η_i w^{d-i})^m with η_j = 0.
        let known = power_coeff(&eta, m, j);
        eta[j] = (coeffs[j] * sign - known) / denom;
    }
    Some(eta)
}

/// Coefficient of `w^{m d - j}` in `(Σ_{i<d} η_i w^{d-i})^m`, for `j < d`.
fn power_coeff(eta: &[Complex64], m: usize, j: usize) -> Complex64 {
    // Work in the deficit variable: η_i contributes deficit i. Only deficits ≤ j matter.
    let mut acc = vec![Complex64::zero(); j + 1];
    acc[0] = Complex64::new(1.0, 0.0);
    for _ in 0..m {
        let mut next = vec![Complex64::zero(); j + 1];
        for (s, &v) in acc.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for (i, &e) in eta.iter().enumerate().take(j + 1 - s) {
                next[s + i] += v * e;
            }
        }
        acc = next;
    }
    acc[j]
}

fn nth_root(z: Complex64, m: usize, r: usize) -> Complex64 {
    let modulus = z.norm().powf(1.0 / m as f64);
    let angle = (z.arg() + core::f64::consts::TAU * r as f64) / m as f64;
    Complex64::from_polar(modulus, angle)
}

/// Searches for `(p, q, h)` with `a = p(h)h'`, `b = q(h)h'`.
///
/// Steps: integrate to `A`, `B` (a nonzero mean rules out any witness); record
/// the common frequency factor `k` and continue on the index-compressed
/// polynomials; handle `a ≡ 0` or `b ≡ 0` directly; otherwise scan the divisors
/// `d` of `gcd(deg A, deg B)` in descending order, peel `A` at degree `d`, and
/// accept the first candidate for which `B` is a polynomial in it.
pub fn find_common_witness(a: &TrigPoly, b: &TrigPoly) -> Result<DecompositionOutcome> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let big_a = a.antiderivative();
    let big_b = b.antiderivative();
    let k = fourier_support_gcd(&[a.clone(), b.clone()]).unwrap_or(1);
    let drift = big_a.drift.abs().max(big_b.drift.abs());
    if drift > tol::DRIFT {
        return Ok(DecompositionOutcome {
            kind: OutcomeKind::None,
            residual: drift,
            frequency_factor: k,
        });
    }

    let ca = big_a.trig.compress(k);
    let cb = big_b.trig.compress(k);
    let found = search_compressed(&ca, &cb);

    let (kind, residual) = match found {
        Ok((p_int, q_int, h)) => {
            let h = h.expand(k);
            let mut w = CompositionWitness::new(p_int.derivative(), q_int.derivative(), h);
            w.integrated = Some((p_int, q_int));
            let residual = verify_witness(a, b, &w);
            if residual < tol::WITNESS {
                (OutcomeKind::Witness { witness: w }, residual)
            } else if k > 1 {
                (OutcomeKind::FrequencyFactor { k }, residual)
            } else {
                (OutcomeKind::None, residual)
            }
        }
        Err(best) if k > 1 => (OutcomeKind::FrequencyFactor { k }, best),
        Err(best) => (OutcomeKind::None, best),
    };
    Ok(DecompositionOutcome { kind, residual, frequency_factor: k })
}

/// On success returns `(P, Q, H)` for the compressed antiderivatives; on failure the best residual.
fn search_compressed(
    big_a: &TrigPoly,
    big_b: &TrigPoly,
) -> core::result::Result<(RealPoly, RealPoly, TrigPoly), f64> {
    let strip = |p: &TrigPoly| p - &TrigPoly::constant(p.a0());
    if big_a.is_constant() {
        let h = strip(big_b);
        return Ok((RealPoly::constant(big_a.a0()), RealPoly::new(vec![big_b.a0(), 1.0]), h));
    }
    if big_b.is_constant() {
        let h = strip(big_a);
        return Ok((RealPoly::new(vec![big_a.a0(), 1.0]), RealPoly::constant(big_b.a0()), h));
    }
    let g = crate::trigpoly::gcd(big_a.degree(), big_b.degree());
    let mut best = f64::INFINITY;
    for d in (1..=g).rev().filter(|d| g.is_multiple_of(*d)) {
        for (h, p) in peel_with_outer(big_a, d) {
            match solve_outer_with_residual(big_b, &h) {
                Ok((q, r)) if r < tol::OUTER_SOLVE => return Ok((p, q, h)),
                Ok((_, r)) => best = best.min(r),
                Err(_) => {}
            }
        }
    }
    Err(best)
}

#[cfg(test)]
mod tests;
