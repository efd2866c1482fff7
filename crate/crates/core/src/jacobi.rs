//! Cyclic Jacobi eigensolver for dense real symmetric matrices.
//!
//! Each sweep visits every off-diagonal pair `(p, q)` once and applies the plane
//! rotation that annihilates `a[p][q]`. The accumulated rotations form the
//! eigenvector matrix. Iteration stops once the off-diagonal Frobenius norm drops
//! below `rel_tol * ‖A‖_F`.

use crate::error::{Error, Result};

/// Maximum number of sweeps before giving up. Quadratic convergence means a
/// handful of sweeps suffice in practice.
pub const MAX_SWEEPS: usize = 100;

/// Output of [`jacobi_eigen`]: unsorted eigenvalues and the matching eigenvectors
/// stored column-wise in a row-major `n × n` buffer.
#[derive(Debug, Clone)]
pub struct JacobiOutput {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<f64>,
    pub sweeps: usize,
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j] * a[i * n + j];
            }
        }
    }
    sum.sqrt()
}

/// Diagonalizes the symmetric row-major matrix `matrix` of order `n`.
pub fn jacobi_eigen(matrix: &[f64], n: usize, rel_tol: f64) -> Result<JacobiOutput> {
    assert_eq!(matrix.len(), n * n, "matrix buffer must be n*n");
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = rel_tol * frob;

    let mut sweeps = 0;
    loop {
        if off_diagonal_norm(&a, n) <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(sweeps));
        }
        sweeps += 1;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // A <- A J
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                // A <- J^T A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                // V <- V J
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let eigenvalues = (0..n).map(|i| a[i * n + i]).collect();
    Ok(JacobiOutput {
        eigenvalues,
        eigenvectors: v,
        sweeps,
    })
}
