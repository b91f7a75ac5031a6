//! Cyclic Jacobi rotations for dense real symmetric matrices.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Default sweep budget. Cyclic Jacobi converges quadratically, so this is
/// rarely approached even for a few hundred nodes.
pub const MAX_SWEEPS: usize = 100;

/// Diagonalizes a symmetric matrix.
///
/// Returns the eigenvalues in the order the rotations leave them on the
/// diagonal and the matching orthonormal eigenvectors as columns.
pub fn jacobi_eigen(a: &DMatrix<f64>, max_sweeps: usize) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix must be square");
    // Row-major scratch copy; rotations touch rows and columns p, q.
    let mut m: Vec<f64> = (0..n * n).map(|idx| a[(idx / n, idx % n)]).collect();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale = m.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);

    let off = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += m[i * n + j] * m[i * n + j];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off_norm = off(&m);
        if off_norm <= 1e-14 * scale {
            break;
        }
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence { sweeps, residual: off_norm });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                // Skip entries already negligible relative to both diagonals.
                if sweeps > 3 && apq.abs() * 1e18 < app.abs().max(aqq.abs()) {
                    m[p * n + q] = 0.0;
                    m[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = m[r * n + p];
                    let arq = m[r * n + q];
                    let new_rp = arp - s * (arq + tau * arp);
                    let new_rq = arq + s * (arp - tau * arq);
                    m[r * n + p] = new_rp;
                    m[p * n + r] = new_rp;
                    m[r * n + q] = new_rq;
                    m[q * n + r] = new_rq;
                }
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = vrp - s * (vrq + tau * vrp);
                    v[r * n + q] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }
    let values = DVector::from_fn(n, |i, _| m[i * n + i]);
    let vectors = DMatrix::from_fn(n, n, |i, j| v[i * n + j]);
    Ok((values, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let (vals, vecs) = jacobi_eigen(&a, MAX_SWEEPS).unwrap();
        let mut sorted: Vec<f64> = vals.iter().copied().collect();
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!((sorted[0] - 1.0).abs() < 1e-15 && (sorted[1] + 1.0).abs() < 1e-15);
        let r = &a * &vecs - &vecs * DMatrix::from_diagonal(&vals);
        assert!(r.amax() < 1e-14);
    }

    #[test]
    fn diagonal_input_is_fixed_point() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, -1.0, 2.0]));
        let (vals, vecs) = jacobi_eigen(&a, MAX_SWEEPS).unwrap();
        assert_eq!(vals.as_slice(), &[3.0, -1.0, 2.0]);
        assert_eq!(vecs, DMatrix::identity(3, 3));
    }

    #[test]
    fn zero_budget_reports_residual() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        match jacobi_eigen(&a, 0) {
            Err(Error::NoConvergence { sweeps: 0, residual }) => assert!(residual > 1.0),
            other => panic!("unexpected {other:?}"),
        }
    }
}
