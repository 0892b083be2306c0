//! Simultaneous root finding (Aberth–Ehrlich) for complex polynomials.

use alloc::vec::Vec;
use core::f64::consts::TAU;
use num_complex::Complex64;
#[allow(unused_imports)] // inherent f64 math shadows it when std is linked
use num_traits::Float;
use num_traits::Zero;

const MAX_ITER: usize = 200;
const MAX_RESTARTS: usize = 4;

/// All roots of `Σ coeffs[j] z^j`. The leading and constant coefficients must be nonzero.
pub fn aberth_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return alloc::vec![-monic[0]];
    }
    let abs_coeffs: Vec<f64> = monic.iter().map(|c| c.norm()).collect();

    // Geometric mean of the root moduli.
    let radius = {
        let r = abs_coeffs[0].powf(1.0 / n as f64);
        if r.is_finite() && r > 0.0 {
            r
        } else {
            1.0
        }
    };
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4)).collect();

    let mut rng = Lcg(0x9e37_79b9_7f4a_7c15);
    for _ in 0..MAX_RESTARTS {
        for _ in 0..MAX_ITER {
            let mut converged = true;
            for i in 0..n {
                let (p, dp) = horner(&monic, z[i]);
                if !small_residual(p, &abs_coeffs, z[i]) {
                    converged = false;
                }
                if p.is_zero() {
                    continue;
                }
                let ratio = p / dp;
                let repulsion: Complex64 =
                    (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
                let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                if w.is_finite() {
                    z[i] -= w;
                }
            }
            if converged {
                return z;
            }
        }
        // Stagnation: shake the iterates and start over from the perturbed set.
        for zi in z.iter_mut() {
            let angle = 1e-2 * (rng.next() - 0.5);
            let scale = 1.0 + 1e-2 * (rng.next() - 0.5);
            *zi *= Complex64::from_polar(scale, angle);
        }
    }
    z
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &ci in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ci;
    }
    (p, dp)
}

/// Backward-error test: `|p(z)|` within a few ulps of `Σ |c_j| |z|^j`.
fn small_residual(p: Complex64, abs_coeffs: &[f64], z: Complex64) -> bool {
    let r = z.norm();
    let bound = abs_coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c);
    p.norm() <= 64.0 * f64::EPSILON * bound
}

struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}
