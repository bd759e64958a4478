//! Dictionaries: complex matrices with unit-norm columns.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::signal::{Signal, SupportSet};

/// Maximum allowed deviation of a column norm from one.
pub const COLUMN_NORM_TOL: f64 = 1e-8;

/// Columns with norm below this are treated as zero when normalizing.
pub const ZERO_COLUMN_TOL: f64 = 1e-12;

/// An M×N complex matrix whose columns (atoms) have unit ℓ2 norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Dictionary {
    matrix: DMatrix<Complex64>,
}

impl Dictionary {
    /// Validates `matrix`, normalizing its columns first when `normalize`
    /// is set.
    pub fn new(mut matrix: DMatrix<Complex64>, normalize: bool) -> Result<Self> {
        if matrix.nrows() == 0 || matrix.ncols() == 0 {
            return Err(Error::Empty);
        }
        if let Some(pos) = matrix.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        for (col, mut c) in matrix.column_iter_mut().enumerate() {
            let norm = c.norm();
            if normalize {
                if norm < ZERO_COLUMN_TOL {
                    return Err(Error::ZeroColumn { col, norm });
                }
                c.unscale_mut(norm);
            } else if (norm - 1.0).abs() > COLUMN_NORM_TOL {
                return Err(Error::NotNormalized { col, deviation: (norm - 1.0).abs() });
            }
        }
        Ok(Self { matrix })
    }

    pub fn from_real(rows: usize, cols: usize, row_major: &[f64], normalize: bool) -> Result<Self> {
        if row_major.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: row_major.len() });
        }
        let m = DMatrix::from_row_iterator(
            rows,
            cols,
            row_major.iter().map(|&v| Complex64::new(v, 0.0)),
        );
        Self::new(m, normalize)
    }

    pub fn identity(m: usize) -> Result<Self> {
        Self::new(DMatrix::identity(m, m), false)
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn column(&self, i: usize) -> DVector<Complex64> {
        self.matrix.column(i).into_owned()
    }

    /// The sub-matrix `A_S` with columns in the order of `support`.
    pub fn select(&self, support: &SupportSet) -> DMatrix<Complex64> {
        self.matrix.select_columns(support.indices())
    }

    /// `A x`.
    pub fn apply(&self, x: &Signal) -> Result<DVector<Complex64>> {
        if x.dim() != self.cols() {
            return Err(Error::DimensionMismatch { expected: self.cols(), found: x.dim() });
        }
        Ok(&self.matrix * x.to_dvector())
    }

    /// `A^H v`.
    pub fn adjoint_apply(&self, v: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if v.len() != self.rows() {
            return Err(Error::DimensionMismatch { expected: self.rows(), found: v.len() });
        }
        Ok(self.matrix.ad_mul(v))
    }

    /// Gram matrix `A^H A`.
    pub fn gram(&self) -> DMatrix<Complex64> {
        self.matrix.ad_mul(&self.matrix)
    }

    /// Largest deviation of a column norm from one.
    pub fn max_norm_deviation(&self) -> f64 {
        self.matrix.column_iter().map(|c| (c.norm() - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// Builds a dictionary from `matrix`, optionally normalizing its columns.
pub fn make_dictionary(matrix: DMatrix<Complex64>, normalize: bool) -> Result<Dictionary> {
    Dictionary::new(matrix, normalize)
}

/// Sylvester–Hadamard matrix of order `m`, scaled by `1/sqrt(m)`.
pub fn hadamard_dictionary(m: usize) -> Result<Dictionary> {
    if m == 0 || !m.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(m));
    }
    // H[i][j] = (-1)^popcount(i & j) is the Sylvester recursion unrolled.
    let scale = 1.0 / (m as f64).sqrt();
    let h = DMatrix::from_fn(m, m, |i, j| {
        let sign = if (i & j).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        Complex64::new(sign * scale, 0.0)
    });
    Dictionary::new(h, false)
}

/// `[A B]`, with A's columns first.
pub fn concat_dictionaries(a: &Dictionary, b: &Dictionary) -> Result<Dictionary> {
    if a.rows() != b.rows() {
        return Err(Error::RowMismatch { left: a.rows(), right: b.rows() });
    }
    let mut m = DMatrix::zeros(a.rows(), a.cols() + b.cols());
    m.columns_mut(0, a.cols()).copy_from(a.matrix());
    m.columns_mut(a.cols(), b.cols()).copy_from(b.matrix());
    Dictionary::new(m, false)
}

/// The two-basis union `[I_m  H_m]` with coherence `1/sqrt(m)`.
pub fn identity_hadamard(m: usize) -> Result<Dictionary> {
    concat_dictionaries(&Dictionary::identity(m)?, &hadamard_dictionary(m)?)
}

/// I.i.d. standard complex Gaussian entries, columns normalized.
pub fn random_unit_dictionary(m: usize, n: usize, rng: &mut Rng) -> Result<Dictionary> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!("dictionary size {m}x{n}")));
    }
    // Column-major fill so the draw order is column by column.
    let data: Vec<Complex64> = (0..m * n).map(|_| rng.complex_gaussian()).collect();
    Dictionary::new(DMatrix::from_vec(m, n, data), true)
}

/// Haar-distributed unitary `m`×`m` basis from the QR factorization of a
/// complex Gaussian matrix, with the phases of `R`'s diagonal absorbed.
pub fn random_orthonormal_basis(m: usize, rng: &mut Rng) -> Result<Dictionary> {
    if m == 0 {
        return Err(Error::InvalidParameter("basis size 0".into()));
    }
    let data: Vec<Complex64> = (0..m * m).map(|_| rng.complex_gaussian()).collect();
    let qr = DMatrix::from_vec(m, m, data).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..m {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for z in q.column_mut(j).iter_mut() {
            *z *= phase;
        }
    }
    Dictionary::new(q, true)
}
