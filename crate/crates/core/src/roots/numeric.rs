//! Floating-point eigen search. Results only guide the exact pipeline.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::linalg::Matrix;
use crate::scalar::{rational_to_f64, Rational};

pub(crate) fn to_f64(m: &Matrix<Rational>) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| rational_to_f64(&m[(i, j)]))
}

pub(crate) fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

/// Eigenvalues of a real square matrix.
pub(crate) fn eigenvalues(a: &DMatrix<f64>) -> Vec<Complex64> {
    a.complex_eigenvalues().iter().copied().collect()
}

/// Eigenvector for the (approximate, simple) eigenvalue `lambda` by a few
/// steps of shifted inverse iteration.
pub(crate) fn eigenvector(a: &DMatrix<f64>, lambda: Complex64) -> Option<DVector<Complex64>> {
    let n = a.nrows();
    let scale = 1.0 + max_abs(a);
    let ac: DMatrix<Complex64> = a.map(|x| Complex64::new(x, 0.0));
    let mut v = DVector::from_fn(n, |j, _| Complex64::new(1.0, ((j + 1) as f64 * 0.618).sin()));
    for shift_exp in [-10, -8, -6] {
        let shift = lambda + Complex64::new(1.0, 0.5) * scale * 10f64.powi(shift_exp);
        let lu = (&ac - DMatrix::from_diagonal_element(n, n, shift)).lu();
        let mut ok = true;
        for _ in 0..4 {
            match lu.solve(&v) {
                Some(w) => {
                    let norm = w.norm();
                    if !norm.is_finite() || norm == 0.0 {
                        ok = false;
                        break;
                    }
                    v = w / Complex64::new(norm, 0.0);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Some(v);
        }
    }
    None
}

/// `‖A v − λ v‖ / (‖A‖ ‖v‖)`.
pub(crate) fn relative_residual(a: &DMatrix<f64>, lambda: Complex64, v: &DVector<Complex64>) -> f64 {
    let ac: DMatrix<Complex64> = a.map(|x| Complex64::new(x, 0.0));
    let r = &ac * v - v * lambda;
    r.norm() / ((1.0 + max_abs(a)) * v.norm())
}

/// Rayleigh quotient `v* A v / v* v`.
pub(crate) fn rayleigh(a: &DMatrix<f64>, v: &DVector<Complex64>) -> Complex64 {
    let ac: DMatrix<Complex64> = a.map(|x| Complex64::new(x, 0.0));
    let av = &ac * v;
    v.dotc(&av) / v.dotc(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_generator() {
        // ad_{e1} on so(3): eigenvalues 0, ±i.
        let a = DMatrix::from_row_slice(3, 3, &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, -1.0, 0.0]);
        let mut ev = eigenvalues(&a);
        ev.sort_by(|x, y| x.im.partial_cmp(&y.im).unwrap());
        assert!((ev[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!(ev[1].norm() < 1e-12);
        let lambda = Complex64::new(0.0, 1.0);
        let v = eigenvector(&a, lambda).unwrap();
        assert!(relative_residual(&a, lambda, &v) < 1e-9);
        assert!((rayleigh(&a, &v) - lambda).norm() < 1e-9);
    }
}
