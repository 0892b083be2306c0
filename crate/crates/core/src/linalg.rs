//! Dense least squares for the small systems of the outer-polynomial solve.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // inherent f64 math shadows it when std is linked
use num_traits::Float;

/// Minimises `|M x - rhs|_2` where `columns[j]` is the j-th column of `M`.
///
/// Columns are scaled to unit norm before a Householder QR, which keeps the
/// solve stable when the columns are powers of one polynomial. Columns that
/// are numerically dependent on earlier ones get coefficient 0.
pub fn least_squares(columns: &[Vec<f64>], rhs: &[f64]) -> Vec<f64> {
    let ncols = columns.len();
    let nrows = rhs.len();
    let scales: Vec<f64> = columns
        .iter()
        .map(|c| {
            let n = c.iter().map(|v| v * v).sum::<f64>().sqrt();
            if n > 0.0 {
                n
            } else {
                1.0
            }
        })
        .collect();
    // Row-major working copy.
    let mut m: Vec<Vec<f64>> =
        (0..nrows).map(|i| (0..ncols).map(|j| columns[j][i] / scales[j]).collect()).collect();
    let mut y = rhs.to_vec();
    let mut diag = vec![0.0; ncols];

    for k in 0..ncols.min(nrows) {
        let norm = (k..nrows).map(|i| m[i][k] * m[i][k]).sum::<f64>().sqrt();
        if norm < 1e-13 {
            diag[k] = 0.0;
            continue;
        }
        let alpha = if m[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..nrows).map(|i| m[i][k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            diag[k] = alpha;
            continue;
        }
        #[allow(clippy::needless_range_loop)] // column access across rows
        for j in k..ncols {
            let dot: f64 = (k..nrows).map(|i| v[i - k] * m[i][j]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in k..nrows {
                m[i][j] -= f * v[i - k];
            }
        }
        let dot: f64 = (k..nrows).map(|i| v[i - k] * y[i]).sum();
        let f = 2.0 * dot / vnorm2;
        for i in k..nrows {
            y[i] -= f * v[i - k];
        }
        diag[k] = m[k][k];
    }

    let mut x = vec![0.0; ncols];
    for k in (0..ncols.min(nrows)).rev() {
        if diag[k].abs() < 1e-13 {
            continue;
        }
        let s: f64 = (k + 1..ncols).map(|j| m[k][j] * x[j]).sum();
        x[k] = (y[k] - s) / m[k][k];
    }
    x.iter().zip(&scales).map(|(v, s)| v / s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_system() {
        // x + y = 3, x - y = 1, 2x = 4
        let cols = vec![vec![1.0, 1.0, 2.0], vec![1.0, -1.0, 0.0]];
        let x = least_squares(&cols, &[3.0, 1.0, 4.0]);
        assert!((x[0] - 2.0).abs() < 1e-14 && (x[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn overdetermined_fit() {
        // Fit y = a + b t through (0,0), (1,1), (2,1).
        let cols = vec![vec![1.0, 1.0, 1.0], vec![0.0, 1.0, 2.0]];
        let x = least_squares(&cols, &[0.0, 1.0, 1.0]);
        assert!((x[0] - 1.0 / 6.0).abs() < 1e-14 && (x[1] - 0.5).abs() < 1e-14);
    }
}
