//! Orthogonal matching pursuit.
//!
//! Starting from `r = y` and an empty support, each iteration picks the
//! remaining atom with the largest `|a_i^H r|` (lowest index on ties), adds
//! it to the support and refits `y` by least squares on the whole support.
//! The least-squares problem is solved from scratch by Householder QR every
//! iteration.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dictionary::Dictionary;
use crate::error::{Error, Result};
use crate::linalg::qr_least_squares;
use crate::signal::{complex_vec, Signal, SupportSet};

/// Correlations at or below this stop the iteration: the residual is
/// numerically orthogonal to every remaining atom.
pub const CORRELATION_FLOOR: f64 = 1e-14;

/// Sub-dictionaries with a smallest singular value below this are rank
/// deficient.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmpTrace {
    /// Selected atoms in selection order.
    pub support: SupportSet,
    /// Least-squares coefficients, aligned with `support`.
    #[serde(with = "complex_vec")]
    pub coefficients: Vec<Complex64>,
    /// ‖r‖₂ after each iteration, starting with ‖y‖₂.
    pub residual_norms: Vec<f64>,
    pub selected: Vec<usize>,
    /// Winning |a_i^H r| of each iteration.
    pub correlations: Vec<f64>,
    /// Largest |a_i^H r| over the support after each iteration.
    pub orthogonality: Vec<f64>,
}

impl OmpTrace {
    pub fn iterations(&self) -> usize {
        self.selected.len()
    }

    pub fn final_residual_norm(&self) -> f64 {
        *self.residual_norms.last().expect("residual_norms starts with ||y||")
    }

    /// The full-length estimate, zero off the support.
    pub fn estimate(&self, n: usize) -> Result<Signal> {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        for (&i, &c) in self.support.indices().iter().zip(&self.coefficients) {
            *e.get_mut(i).ok_or(Error::DimensionMismatch { expected: n, found: i + 1 })? = c;
        }
        Signal::new(e)
    }

    /// Residual norms never increase, up to `tol`.
    pub fn residuals_monotone(&self, tol: f64) -> bool {
        self.residual_norms.windows(2).all(|w| w[1] <= w[0] + tol)
    }

    pub fn max_orthogonality(&self) -> f64 {
        self.orthogonality.iter().copied().fold(0.0, f64::max)
    }
}

/// Picks the index in `remaining` maximizing `|a_i^H r|`, returning it with
/// its correlation. Ties go to the lowest index.
pub fn omp_select(a: &Dictionary, r: &DVector<Complex64>, remaining: &[usize]) -> Result<(usize, f64)> {
    if remaining.is_empty() {
        return Err(Error::EmptyRemaining);
    }
    if r.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: r.len() });
    }
    let mut best: Option<(usize, f64)> = None;
    for &i in remaining {
        if i >= a.cols() {
            return Err(Error::InvalidSupport(format!("index {i} >= {}", a.cols())));
        }
        let c = a.matrix().column(i).dotc(r).norm();
        match best {
            Some((bi, bc)) if c < bc || (c == bc && i > bi) => {}
            _ => best = Some((i, c)),
        }
    }
    Ok(best.expect("remaining is non-empty"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquaresFit {
    pub coefficients: Vec<Complex64>,
    pub residual: DVector<Complex64>,
}

/// Minimizes ‖y − A_S c‖₂ over `c`; the empty support leaves `y` as the
/// residual.
pub fn least_squares_on_support(a: &Dictionary, s: &SupportSet, y: &DVector<Complex64>) -> Result<LeastSquaresFit> {
    if y.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: y.len() });
    }
    if s.is_empty() {
        return Ok(LeastSquaresFit { coefficients: Vec::new(), residual: y.clone() });
    }
    if let Some(&bad) = s.indices().iter().find(|&&i| i >= a.cols()) {
        return Err(Error::InvalidSupport(format!("index {bad} >= {}", a.cols())));
    }
    let sub = a.select(s);
    let c = qr_least_squares(&sub, y, RANK_TOL)?;
    let residual = y - &sub * &c;
    Ok(LeastSquaresFit { coefficients: c.iter().copied().collect(), residual })
}

/// Runs up to `t_max` OMP iterations on `y`.
///
/// Stops early when the best correlation is at most [`CORRELATION_FLOOR`]
/// or, if `residual_tol` is given, once ‖r‖₂ ≤ `residual_tol`.
pub fn omp_run(a: &Dictionary, y: &Signal, t_max: usize, residual_tol: Option<f64>) -> Result<OmpTrace> {
    let max = a.rows().min(a.cols());
    if t_max == 0 || t_max > max {
        return Err(Error::TMaxOutOfRange { t_max, max });
    }
    if y.dim() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: y.dim() });
    }
    if let Some(tol) = residual_tol {
        if !(tol >= 0.0) {
            return Err(Error::InvalidParameter(format!("residual_tol must be >= 0, got {tol}")));
        }
    }
    let y = y.to_dvector();
    let mut support = SupportSet::empty();
    let mut residual = y.clone();
    let mut coefficients = Vec::new();
    let mut trace = OmpTrace {
        support: SupportSet::empty(),
        coefficients: Vec::new(),
        residual_norms: vec![y.norm()],
        selected: Vec::new(),
        correlations: Vec::new(),
        orthogonality: Vec::new(),
    };
    for _ in 0..t_max {
        if residual_tol.is_some_and(|tol| residual.norm() <= tol) {
            break;
        }
        let remaining = support.complement(a.cols());
        let (k, corr) = omp_select(a, &residual, &remaining)?;
        if corr <= CORRELATION_FLOOR {
            break;
        }
        support.push_unchecked(k);
        let fit = least_squares_on_support(a, &support, &y)?;
        residual = fit.residual;
        coefficients = fit.coefficients;
        let orth = support
            .indices()
            .iter()
            .map(|&i| a.matrix().column(i).dotc(&residual).norm())
            .fold(0.0, f64::max);
        trace.selected.push(k);
        trace.correlations.push(corr);
        trace.residual_norms.push(residual.norm());
        trace.orthogonality.push(orth);
    }
    trace.support = support;
    trace.coefficients = coefficients;
    Ok(trace)
}
