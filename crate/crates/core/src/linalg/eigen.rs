//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation annihilates one off-diagonal entry with a phased plane
//! rotation; sweeps repeat until the off-diagonal Frobenius mass drops below
//! the requested tolerance. Matrices in this crate stay below ~500x500, where
//! Jacobi is plenty fast and fully reproducible.

use super::{Complex, ComplexMatrix, HERMITIAN_INPUT_TOL};
use crate::{Error, Result};

/// Default off-diagonal tolerance is `DEFAULT_EIGEN_TOL_PER_DIM * n`.
pub const DEFAULT_EIGEN_TOL_PER_DIM: f64 = 1e-12;

pub const MAX_JACOBI_SWEEPS: usize = 100;

/// Complete spectrum of a Hermitian matrix.
///
/// Eigenvalues are sorted descending (ties keep the pre-sort order); column
/// `j` of `eigenvectors` pairs with `eigenvalues[j]`. `residual` is
/// `max_j ||M v_j - lambda_j v_j||_2` measured against the input matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
    pub residual: f64,
}

impl ComplexMatrix {
    /// Full eigendecomposition via cyclic Jacobi; `tol` bounds the final
    /// off-diagonal Frobenius mass.
    pub fn hermitian_eigen(&self, tol: f64) -> Result<EigenDecomposition> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                left_rows: self.rows(),
                left_cols: self.cols(),
                right_rows: self.rows(),
                right_cols: self.rows(),
            });
        }
        let asym = self.hermitian_residual();
        if asym > HERMITIAN_INPUT_TOL {
            return Err(Error::NotHermitian { max_asymmetry: asym });
        }
        let n = self.rows();

        // Work on the exactly-Hermitian average so rotations preserve symmetry.
        let mut a = ComplexMatrix::from_fn(n, n, |i, j| {
            0.5 * (self.get(i, j) + self.get(j, i).conj())
        });
        let mut v = ComplexMatrix::identity(n);

        let mut converged = n <= 1;
        let mut last_off = 0.0;
        for _sweep in 0..MAX_JACOBI_SWEEPS {
            let off = off_diagonal_mass(&a);
            last_off = off;
            if off < tol {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
        if !converged && off_diagonal_mass(&a) >= tol {
            return Err(Error::EigenNoConvergence {
                residual: last_off,
                sweeps: MAX_JACOBI_SWEEPS,
            });
        }

        // Stable descending sort; ties keep the diagonal order.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            a.get(j, j)
                .re
                .partial_cmp(&a.get(i, i).re)
                .expect("finite eigenvalues")
        });
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
        let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));

        let mut residual = 0.0f64;
        for j in 0..n {
            let col = eigenvectors.col(j);
            let mv = self.apply(&col).expect("square apply");
            let scaled = col.scale(Complex::new(eigenvalues[j], 0.0));
            residual = residual.max(mv.sub(&scaled).expect("same length").norm());
        }

        Ok(EigenDecomposition {
            eigenvalues,
            eigenvectors,
            residual,
        })
    }

    /// `hermitian_eigen` with the default tolerance `1e-12 * n`.
    pub fn hermitian_eigen_default(&self) -> Result<EigenDecomposition> {
        self.hermitian_eigen(DEFAULT_EIGEN_TOL_PER_DIM * self.rows() as f64)
    }
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One phased Jacobi rotation annihilating the (p,q) entry: `A <- J* A J`,
/// `V <- V J`, with `J` the identity outside the (p,q) plane and
/// `[[c, s e^{i phi}], [-s e^{-i phi}, c e^{... }]]`-type block chosen so the
/// transformed block is diagonal.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let phase = apq / b; // e^{i phi}
    let tau = (a.get(q, q).re - a.get(p, p).re) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Column update A <- A J with J[p][p] = c, J[p][q] = s*phase,
    // J[q][p] = -s*conj(phase), J[q][q] = c*conj(phase).
    let n = a.rows();
    for i in 0..n {
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        a.set(i, p, c * aip - s * phase.conj() * aiq);
        a.set(i, q, s * aip + c * phase.conj() * aiq);
    }
    // Row update A <- J* A.
    for j in 0..n {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, c * apj - s * phase * aqj);
        a.set(q, j, s * apj + c * phase * aqj);
    }
    // Re-symmetrize the treated entries against rounding drift.
    let mean = 0.5 * (a.get(p, q) + a.get(q, p).conj());
    a.set(p, q, mean);
    a.set(q, p, mean.conj());
    // Accumulate V <- V J.
    for i in 0..n {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, c * vip - s * phase.conj() * viq);
        v.set(i, q, s * vip + c * phase.conj() * viq);
    }
}
