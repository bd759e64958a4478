//! Dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Singular values of `m`, descending.
pub fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut s: Vec<f64> = SVD::new(m.clone(), false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Least-squares solution of `m c ≈ y` by Householder QR.
///
/// Fails with `RankDeficient` when `m` has more columns than rows or its
/// smallest singular value is below `rank_tol`.
pub fn qr_least_squares(
    m: &DMatrix<Complex64>,
    y: &DVector<Complex64>,
    rank_tol: f64,
) -> Result<DVector<Complex64>> {
    let (rows, cols) = m.shape();
    if cols > rows {
        return Err(Error::RankDeficient { sigma_min: 0.0 });
    }
    let sigma_min = singular_values(m).last().copied().unwrap_or(0.0);
    if sigma_min < rank_tol {
        return Err(Error::RankDeficient { sigma_min });
    }
    let qr = m.clone().qr();
    let qhy = qr.q().ad_mul(y);
    qr.r()
        .solve_upper_triangular(&qhy)
        .ok_or(Error::RankDeficient { sigma_min })
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn hermitian_min_eigenvalue(m: &DMatrix<Complex64>) -> f64 {
    SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Orthonormal basis (as columns) of the kernel of `m`.
///
/// Singular values below `rel_tol` times the largest count as zero. The
/// matrix is padded with zero rows to be at least square so the SVD
/// returns a full set of right singular vectors.
pub fn nullspace(m: &DMatrix<Complex64>, rel_tol: f64) -> DMatrix<Complex64> {
    let (rows, cols) = m.shape();
    let padded = if rows < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.rows_mut(0, rows).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let largest = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = rel_tol * largest;
    let kernel: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| largest == 0.0 || s <= cutoff)
        .map(|(i, _)| i)
        .collect();
    let mut basis = DMatrix::zeros(cols, kernel.len());
    for (j, &i) in kernel.iter().enumerate() {
        // Row i of V^H conjugated is the i-th right singular vector.
        for r in 0..cols {
            basis[(r, j)] = v_t[(i, r)].conj();
        }
    }
    basis
}
