//! Coherence measures and the ℓ∞ / Geršgorin bounds built on them.
//!
//! Every inequality contract here holds exactly in exact arithmetic; the
//! checks use [`BOUND_TOL`] only to absorb rounding.

use serde::{Deserialize, Serialize};

use crate::density::delta_density;
use crate::dictionary::Dictionary;
use crate::error::{Error, Result};
use crate::linalg::hermitian_min_eigenvalue;
use crate::signal::{Signal, SupportSet};

/// Absolute slack for floating-point comparisons of exact inequalities.
pub const BOUND_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherenceReport {
    /// max over i != j of |a_i^H a_j|.
    pub mu: f64,
    /// First pair (i < j, row-major) attaining `mu`; `None` for one atom.
    pub argmax_pair: Option<(usize, usize)>,
    /// Set when the dictionary has a single column and `mu` is 0 by convention.
    pub single_atom: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MutualCoherenceReport {
    /// max over all (i, j) of |a_i^H b_j|, diagonal pairs included.
    pub mu_m: f64,
    pub argmax_pair: (usize, usize),
}

/// Coherence of `a` from the full Gram matrix.
pub fn coherence(a: &Dictionary) -> CoherenceReport {
    let n = a.cols();
    if n < 2 {
        return CoherenceReport { mu: 0.0, argmax_pair: None, single_atom: true };
    }
    let g = a.gram();
    let mut best = (0.0, (0, 1));
    for j in 1..n {
        for i in 0..j {
            let v = g[(i, j)].norm();
            if v > best.0 || (v == best.0 && (i, j) < best.1) {
                best = (v, (i, j));
            }
        }
    }
    CoherenceReport { mu: best.0, argmax_pair: Some(best.1), single_atom: false }
}

/// Mutual coherence between `a` and `b`.
///
/// All pairs count, including `i == j`; for `a == b` this is 1.
pub fn mutual_coherence(a: &Dictionary, b: &Dictionary) -> Result<MutualCoherenceReport> {
    if a.rows() != b.rows() {
        return Err(Error::RowMismatch { left: a.rows(), right: b.rows() });
    }
    let cross = a.matrix().ad_mul(b.matrix());
    let mut best = (f64::NEG_INFINITY, (0, 0));
    for i in 0..cross.nrows() {
        for j in 0..cross.ncols() {
            let v = cross[(i, j)].norm();
            if v > best.0 {
                best = (v, (i, j));
            }
        }
    }
    Ok(MutualCoherenceReport { mu_m: best.0, argmax_pair: best.1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinfDensityBounds {
    pub lower: f64,
    pub upper: f64,
    /// ‖A^H A x‖∞ / ‖x‖∞
    pub ratio: f64,
}

impl LinfDensityBounds {
    pub fn holds(&self) -> bool {
        self.lower - BOUND_TOL <= self.ratio && self.ratio <= self.upper + BOUND_TOL
    }
}

/// Sandwich `1 ∓ μ(δ(x) − 1)` around `‖A^H A x‖∞ / ‖x‖∞`.
pub fn linf_density_bounds(a: &Dictionary, x: &Signal) -> Result<LinfDensityBounds> {
    linf_density_bounds_with(a, coherence(a).mu, x)
}

/// As [`linf_density_bounds`] with a precomputed coherence.
pub fn linf_density_bounds_with(a: &Dictionary, mu: f64, x: &Signal) -> Result<LinfDensityBounds> {
    if x.dim() != a.cols() {
        return Err(Error::DimensionMismatch { expected: a.cols(), found: x.dim() });
    }
    if x.is_zero() {
        return Err(Error::ZeroSignal);
    }
    let delta = delta_density(x);
    let gx = a.adjoint_apply(&a.apply(x)?)?;
    let num = gx.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(LinfDensityBounds {
        lower: 1.0 - mu * (delta - 1.0),
        upper: 1.0 + mu * (delta - 1.0),
        ratio: num / x.norm_linf(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossCoherenceBound {
    /// ‖A^H B z‖∞
    pub lhs: f64,
    /// μ_m ‖z‖₁
    pub rhs: f64,
}

impl CrossCoherenceBound {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + BOUND_TOL
    }
}

pub fn cross_coherence_bound(a: &Dictionary, b: &Dictionary, z: &Signal) -> Result<CrossCoherenceBound> {
    let mu_m = mutual_coherence(a, b)?.mu_m;
    let bz = b.apply(z)?;
    let lhs = a.adjoint_apply(&bz)?.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(CrossCoherenceBound { lhs, rhs: mu_m * z.norm_l1() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramConditioningBound {
    /// [1 − μ(|S| − 1)]⁺
    pub bound: f64,
    /// Smallest eigenvalue of A_S^H A_S.
    pub lambda_min: f64,
}

impl GramConditioningBound {
    pub fn holds(&self) -> bool {
        self.lambda_min >= self.bound - BOUND_TOL
    }
}

/// Geršgorin lower bound on the smallest eigenvalue of the support Gram
/// matrix, next to the eigenvalue itself.
pub fn gram_conditioning_bound(a: &Dictionary, s: &SupportSet) -> Result<GramConditioningBound> {
    gram_conditioning_bound_with(a, coherence(a).mu, s)
}

pub fn gram_conditioning_bound_with(a: &Dictionary, mu: f64, s: &SupportSet) -> Result<GramConditioningBound> {
    if s.is_empty() {
        return Err(Error::EmptySupport);
    }
    if let Some(&bad) = s.indices().iter().find(|&&i| i >= a.cols()) {
        return Err(Error::InvalidSupport(format!("index {bad} >= {}", a.cols())));
    }
    let sub = a.select(s);
    let gram = sub.ad_mul(&sub);
    Ok(GramConditioningBound {
        bound: (1.0 - mu * (s.len() as f64 - 1.0)).max(0.0),
        lambda_min: hermitian_min_eigenvalue(&gram),
    })
}
