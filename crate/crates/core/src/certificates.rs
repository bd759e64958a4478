//! Checkable certificates built from δ-density and coherence.
//!
//! * [`kernel_certificate`]: a nonzero `x` with `δ(x) < 1 + 1/μ_a` is not in
//!   the kernel of `A`.
//! * [`uncertainty_check`]: if `Ax = Bz` then
//!   `[1 − μ_a(δ(x)−1)]⁺ [1 − μ_b(δ(z)−1)]⁺ ≤ δ(x) δ(z) μ_m²`.
//! * [`omp_guarantee`]: if `t_max < 1 + 1/μ_a` and, for every `t`, the tail
//!   left after removing the `t − 1` largest entries has
//!   `δ < ½(1 + 1/μ_a − (t − 1))`, OMP picks the largest remaining entry in
//!   every iteration.
//!
//! Certificate-side comparisons are strict and carry no tolerance, so
//! borderline inputs are reported as not certified.

use serde::{Deserialize, Serialize};

use crate::coherence::{coherence, mutual_coherence, BOUND_TOL};
use crate::density::{delta_density, delta_of_moduli, magnitude_order, sparsity};
use crate::dictionary::Dictionary;
use crate::error::{Error, Result};
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelCertificate {
    pub delta: f64,
    /// 1 + 1/μ_a; infinite (serialized as `null`) for zero coherence.
    pub threshold: f64,
    pub certified_nonzero: bool,
    /// ‖x‖₀ < threshold.
    pub classical_certified: bool,
    pub mu: f64,
    pub sparsity: usize,
    /// μ_a = 0: every nonzero signal is outside the kernel of an orthonormal
    /// system, so the certificate holds without the density condition.
    pub trivial_coherence: bool,
}

/// Certifies `Ax ≠ 0` from `δ(x) < 1 + 1/μ_a`.
pub fn kernel_certificate(a: &Dictionary, x: &Signal) -> Result<KernelCertificate> {
    kernel_certificate_with(coherence(a).mu, a, x)
}

pub fn kernel_certificate_with(mu: f64, a: &Dictionary, x: &Signal) -> Result<KernelCertificate> {
    if x.dim() != a.cols() {
        return Err(Error::DimensionMismatch { expected: a.cols(), found: x.dim() });
    }
    if x.is_zero() {
        return Err(Error::ZeroSignal);
    }
    let delta = delta_density(x);
    let k = sparsity(x, 0.0);
    let trivial = mu == 0.0;
    let threshold = if trivial { f64::INFINITY } else { 1.0 + 1.0 / mu };
    Ok(KernelCertificate {
        delta,
        threshold,
        certified_nonzero: delta < threshold,
        classical_certified: (k as f64) < threshold,
        mu,
        sparsity: k,
        trivial_coherence: trivial,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    /// [1 − μ_a(δ(x)−1)]⁺ [1 − μ_b(δ(z)−1)]⁺
    pub lhs: f64,
    /// δ(x) δ(z) μ_m²
    pub rhs: f64,
    pub residual_gap: f64,
    /// ‖Ax − Bz‖₂
    pub constraint_residual: f64,
    pub mu_a: f64,
    pub mu_b: f64,
    pub mu_m: f64,
    pub delta_x: f64,
    pub delta_z: f64,
    /// The pair satisfies `Ax = Bz` up to `1e-9 (‖Ax‖₂ + 1)`.
    pub applicable: bool,
    /// lhs ≤ rhs + 1e-9.
    pub holds: bool,
}

impl UncertaintyReport {
    pub fn certified(&self) -> bool {
        self.applicable && self.holds
    }
}

/// Evaluates both sides of the density uncertainty relation for `(x, z)`.
///
/// The relation is only guaranteed when `Ax = Bz`; `constraint_residual`
/// and `applicable` report how well that holds.
pub fn uncertainty_check(a: &Dictionary, b: &Dictionary, x: &Signal, z: &Signal) -> Result<UncertaintyReport> {
    if a.rows() != b.rows() {
        return Err(Error::RowMismatch { left: a.rows(), right: b.rows() });
    }
    if x.dim() != a.cols() {
        return Err(Error::DimensionMismatch { expected: a.cols(), found: x.dim() });
    }
    if z.dim() != b.cols() {
        return Err(Error::DimensionMismatch { expected: b.cols(), found: z.dim() });
    }
    if x.is_zero() || z.is_zero() {
        return Err(Error::ZeroSignal);
    }
    let (mu_a, mu_b) = (coherence(a).mu, coherence(b).mu);
    let mu_m = mutual_coherence(a, b)?.mu_m;
    let (dx, dz) = (delta_density(x), delta_density(z));
    let lhs = (1.0 - mu_a * (dx - 1.0)).max(0.0) * (1.0 - mu_b * (dz - 1.0)).max(0.0);
    let rhs = dx * dz * mu_m * mu_m;
    let ax = a.apply(x)?;
    let constraint_residual = (&ax - b.apply(z)?).norm();
    Ok(UncertaintyReport {
        lhs,
        rhs,
        residual_gap: rhs - lhs,
        constraint_residual,
        mu_a,
        mu_b,
        mu_m,
        delta_x: dx,
        delta_z: dz,
        applicable: constraint_residual <= 1e-9 * (ax.norm() + 1.0),
        holds: lhs <= rhs + BOUND_TOL,
    })
}

/// Lower bound `1/μ_m²` on `δ(x)δ(z)` for a pair of orthonormal bases.
pub fn onb_uncertainty_bound(mu_m: f64) -> Result<f64> {
    if !(mu_m > 0.0) {
        return Err(Error::NonPositiveMu(mu_m));
    }
    if mu_m > 1.0 + BOUND_TOL {
        return Err(Error::InvalidParameter(format!("mutual coherence {mu_m} exceeds 1")));
    }
    Ok(1.0 / (mu_m * mu_m))
}

/// `½(1 + 1/μ)`: constant-modulus signals with fewer nonzeros are
/// recovered by OMP.
pub fn classical_omp_threshold(mu: f64) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::NonPositiveMu(mu));
    }
    Ok(0.5 * (1.0 + 1.0 / mu))
}

/// `2 + 1/μ − 2/(1 − α)`: iterations certifiable for an α-decaying signal.
/// Negative values mean no iteration can be certified.
pub fn alpha_decay_iteration_bound(alpha: f64, mu: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if !(mu > 0.0) {
        return Err(Error::NonPositiveMu(mu));
    }
    Ok(2.0 + 1.0 / mu - 2.0 / (1.0 - alpha))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationCheck {
    pub t: usize,
    /// δ of x with its t − 1 largest entries removed.
    pub tail_delta: f64,
    /// ½(1 + 1/μ − (t − 1))
    pub threshold_t: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuaranteeReport {
    pub t_max: usize,
    pub mu: f64,
    /// ½(1 + 1/μ); `threshold_t = C − ½(t − 1)`.
    #[serde(rename = "C")]
    pub c: f64,
    pub per_iteration: Vec<IterationCheck>,
    /// t_max < 1 + 1/μ.
    pub iteration_bound_ok: bool,
    pub certified: bool,
    /// ½(1 + 1/μ), the sparsity bound for constant-modulus recovery.
    pub classical_threshold: f64,
    pub sparsity: usize,
    /// ‖x‖₀ < classical_threshold.
    pub classical_certified: bool,
    /// The per-iteration rows assume OMP removes entries in descending
    /// magnitude order. That holds when `certified`; otherwise the rows are
    /// only indicative.
    pub per_iteration_heuristic: bool,
}

/// Static check of the density-based OMP recovery condition for `x`
/// measured through `a` with `t_max` iterations.
///
/// Entries are removed in descending magnitude order (lowest index first on
/// ties). Any member of a tie set is an equally valid pick, and the tail
/// densities do not depend on which one goes first.
pub fn omp_guarantee(a: &Dictionary, x: &Signal, t_max: usize) -> Result<GuaranteeReport> {
    if x.dim() != a.cols() {
        return Err(Error::DimensionMismatch { expected: a.cols(), found: x.dim() });
    }
    omp_guarantee_for_coherence(coherence(a).mu, x, t_max)
}

/// As [`omp_guarantee`] for a dictionary with coherence `mu`.
pub fn omp_guarantee_for_coherence(mu: f64, x: &Signal, t_max: usize) -> Result<GuaranteeReport> {
    if mu == 0.0 {
        return Err(Error::TrivialCoherence);
    }
    if !(mu > 0.0) {
        return Err(Error::NonPositiveMu(mu));
    }
    if t_max == 0 || t_max > x.dim() {
        return Err(Error::TMaxOutOfRange { t_max, max: x.dim() });
    }
    let moduli = x.moduli();
    let order = magnitude_order(x);
    let c = 0.5 * (1.0 + 1.0 / mu);
    let per_iteration: Vec<IterationCheck> = (1..=t_max)
        .map(|t| {
            let tail_delta = delta_of_moduli(order[t - 1..].iter().map(|&i| moduli[i]));
            let threshold_t = 0.5 * (1.0 + 1.0 / mu - (t as f64 - 1.0));
            IterationCheck { t, tail_delta, threshold_t, ok: tail_delta < threshold_t }
        })
        .collect();
    let iteration_bound_ok = (t_max as f64) < 1.0 + 1.0 / mu;
    let certified = iteration_bound_ok && per_iteration.iter().all(|r| r.ok);
    let k = sparsity(x, 0.0);
    Ok(GuaranteeReport {
        t_max,
        mu,
        c,
        per_iteration,
        iteration_bound_ok,
        certified,
        classical_threshold: c,
        sparsity: k,
        classical_certified: (k as f64) < c,
        per_iteration_heuristic: !certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{make_alpha_decaying, truncate_to_largest};
    use crate::dictionary::{hadamard_dictionary, identity_hadamard, random_orthonormal_basis, random_unit_dictionary};
    use crate::linalg::nullspace;
    use crate::rng::Rng;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn three_atoms() -> Dictionary {
        let s = FRAC_1_SQRT_2;
        Dictionary::from_real(2, 3, &[1.0, 0.0, s, 0.0, 1.0, s], false).unwrap()
    }

    fn constant_modulus(n: usize, support: &[usize], rng: &mut Rng) -> Signal {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        for &i in support {
            e[i] = rng.unit_phase();
        }
        Signal::new(e).unwrap()
    }

    #[test]
    fn kernel_tight_example() {
        let a = three_atoms();
        let x = Signal::from_real(&[1.0, 1.0, -SQRT_2]).unwrap();
        let cert = kernel_certificate(&a, &x).unwrap();
        assert!((cert.delta - (1.0 + SQRT_2)).abs() < 1e-14);
        assert!((cert.threshold - (1.0 + SQRT_2)).abs() < 1e-14);
        assert!(!cert.certified_nonzero);
        assert!(a.apply(&x).unwrap().norm() < 1e-15);
    }

    #[test]
    fn kernel_single_atom_and_alpha_decay() {
        let a = three_atoms();
        let cert = kernel_certificate(&a, &Signal::basis(3, 1).unwrap()).unwrap();
        assert!(cert.certified_nonzero && cert.classical_certified);
        assert_eq!(cert.delta, 1.0);

        // mu = 1/8: alpha < 1 - (1 + 8)^-1 = 8/9 certifies dense signals
        let a = identity_hadamard(64).unwrap();
        for alpha in [0.05, 0.5, 0.8, 0.88] {
            let x = make_alpha_decaying(128, alpha).unwrap();
            let cert = kernel_certificate(&a, &x).unwrap();
            assert!(cert.certified_nonzero, "alpha={alpha}");
            assert!(!cert.classical_certified);
            assert_eq!(cert.sparsity, 128);
        }
    }

    #[test]
    fn kernel_errors_and_trivial_case() {
        let a = three_atoms();
        assert!(matches!(kernel_certificate(&a, &Signal::zeros(3).unwrap()), Err(Error::ZeroSignal)));
        assert!(matches!(kernel_certificate(&a, &Signal::zeros(2).unwrap()), Err(Error::DimensionMismatch { .. })));
        let h = hadamard_dictionary(8).unwrap();
        let cert = kernel_certificate(&h, &Signal::from_real(&[1.0; 8]).unwrap()).unwrap();
        assert!(cert.trivial_coherence && cert.certified_nonzero && cert.threshold.is_infinite());
        let json = serde_json::to_value(cert).unwrap();
        assert!(json["threshold"].is_null());
    }

    #[test]
    fn kernel_soundness_random() {
        let mut rng = Rng::new(31);
        let mut certified = 0;
        for _ in 0..1000 {
            let a = random_unit_dictionary(16, 24, &mut rng).unwrap();
            let mu = coherence(&a).mu;
            let k = 1 + rng.below(3);
            let mut e = vec![Complex64::new(0.0, 0.0); 24];
            let decay = rng.uniform_range(0.01, 0.5);
            for (j, i) in rng.distinct_indices(24, k).into_iter().enumerate() {
                e[i] = rng.unit_phase() * decay.powi(j as i32);
            }
            let x = Signal::new(e).unwrap();
            let cert = kernel_certificate_with(mu, &a, &x).unwrap();
            if cert.classical_certified {
                assert!(cert.certified_nonzero);
            }
            if cert.certified_nonzero {
                certified += 1;
                assert!(a.apply(&x).unwrap().norm() > 1e-9 * x.norm_l2());
            }
        }
        assert!(certified > 100);
    }

    #[test]
    fn kernel_vectors_are_dense() {
        // Every kernel vector has delta >= 1 + 1/mu.
        let mut rng = Rng::new(12);
        for _ in 0..50 {
            let a = random_unit_dictionary(5, 8, &mut rng).unwrap();
            let mu = coherence(&a).mu;
            let basis = nullspace(a.matrix(), 1e-10);
            for _ in 0..20 {
                let coeffs = nalgebra::DVector::from_fn(basis.ncols(), |_, _| rng.complex_gaussian());
                let v = Signal::from_dvector(&(&basis * coeffs)).unwrap();
                assert!(delta_density(&v) >= 1.0 + 1.0 / mu - 1e-9);
            }
        }
    }

    #[test]
    fn uncertainty_identity_hadamard_equality() {
        let a = Dictionary::identity(4).unwrap();
        let b = hadamard_dictionary(4).unwrap();
        let z = Signal::basis(4, 0).unwrap();
        let x = Signal::from_dvector(&b.apply(&z).unwrap()).unwrap();
        let r = uncertainty_check(&a, &b, &x, &z).unwrap();
        assert_eq!((r.delta_x, r.delta_z), (4.0, 1.0));
        assert_eq!((r.mu_a, r.mu_b, r.mu_m), (0.0, 0.0, 0.5));
        assert_eq!((r.lhs, r.rhs), (1.0, 1.0));
        assert!(r.certified());
    }

    #[test]
    fn uncertainty_identical_bases() {
        let i = Dictionary::identity(3).unwrap();
        let e = Signal::basis(3, 0).unwrap();
        let r = uncertainty_check(&i, &i, &e, &e).unwrap();
        assert_eq!((r.lhs, r.rhs, r.mu_m), (1.0, 1.0, 1.0));
        assert_eq!(r.constraint_residual, 0.0);
    }

    #[test]
    fn uncertainty_random_onb_pairs() {
        let mut rng = Rng::new(9);
        for _ in 0..500 {
            let a = random_orthonormal_basis(8, &mut rng).unwrap();
            let b = random_orthonormal_basis(8, &mut rng).unwrap();
            let k = 1 + rng.below(8);
            let mut e = vec![Complex64::new(0.0, 0.0); 8];
            for i in rng.distinct_indices(8, k) {
                e[i] = rng.complex_gaussian();
            }
            let z = Signal::new(e).unwrap();
            let x = Signal::from_dvector(&a.adjoint_apply(&b.apply(&z).unwrap()).unwrap()).unwrap();
            let r = uncertainty_check(&a, &b, &x, &z).unwrap();
            assert!(r.applicable);
            assert!(r.lhs <= r.rhs + 1e-9, "{r:?}");
        }
    }

    #[test]
    fn uncertainty_errors() {
        let a = Dictionary::identity(4).unwrap();
        let b = hadamard_dictionary(2).unwrap();
        let x = Signal::basis(4, 0).unwrap();
        let z = Signal::basis(2, 0).unwrap();
        assert!(matches!(uncertainty_check(&a, &b, &x, &z), Err(Error::RowMismatch { .. })));
        let b = hadamard_dictionary(4).unwrap();
        assert!(matches!(uncertainty_check(&a, &b, &x, &z), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(
            uncertainty_check(&a, &b, &Signal::zeros(4).unwrap(), &x),
            Err(Error::ZeroSignal)
        ));
    }

    #[test]
    fn onb_bound_examples() {
        assert_eq!(onb_uncertainty_bound(1.0 / 4f64.sqrt()).unwrap(), 4.0);
        assert_eq!(onb_uncertainty_bound(1.0).unwrap(), 1.0);
        assert_eq!(onb_uncertainty_bound(0.5).unwrap(), 4.0);
        assert!(matches!(onb_uncertainty_bound(0.0), Err(Error::NonPositiveMu(_))));
        assert!(onb_uncertainty_bound(-0.1).is_err());
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(classical_omp_threshold(0.125).unwrap(), 4.5);
        assert_eq!(classical_omp_threshold(1.0).unwrap(), 1.0);
        assert_eq!(classical_omp_threshold(0.5).unwrap(), 1.5);
        assert!(classical_omp_threshold(0.0).is_err());

        let b = alpha_decay_iteration_bound(0.05, 0.125).unwrap();
        assert!((b - (10.0 - 2.0 / 0.95)).abs() < 1e-12);
        assert!((b - 7.8947).abs() < 1e-4);
        assert_eq!(alpha_decay_iteration_bound(0.5, 0.5).unwrap(), 0.0);
        // alpha -> 0 approaches 1/mu
        let b = alpha_decay_iteration_bound(1e-12, 0.125).unwrap();
        assert!((b - 8.0).abs() < 1e-9);
        assert!(alpha_decay_iteration_bound(0.0, 0.5).is_err());
        assert!(alpha_decay_iteration_bound(0.5, 0.0).is_err());
    }

    #[test]
    fn guarantee_constant_modulus_matches_classical() {
        let mut rng = Rng::new(1);
        let a = identity_hadamard(64).unwrap();
        let mu = coherence(&a).mu;
        for k in 1..=8 {
            let x = constant_modulus(128, &rng.distinct_indices(128, k), &mut rng);
            let g = omp_guarantee_for_coherence(mu, &x, k).unwrap();
            for row in &g.per_iteration {
                assert!((row.tail_delta - (k - (row.t - 1)) as f64).abs() < 1e-12);
                assert_eq!(row.threshold_t, g.c - 0.5 * (row.t as f64 - 1.0));
            }
            assert_eq!(g.certified, (k as f64) < 4.5, "k={k}");
            assert_eq!(g.certified, g.classical_certified);
        }
        let x = constant_modulus(128, &[0, 1, 2, 3, 4], &mut rng);
        let g = omp_guarantee(&a, &x, 5).unwrap();
        assert!(!g.certified && !g.per_iteration[0].ok);
        assert_eq!(g.per_iteration[0].tail_delta, 5.0);
        assert_eq!(g.per_iteration[0].threshold_t, 4.5);
    }

    #[test]
    fn guarantee_alpha_decay_beyond_classical() {
        let a = identity_hadamard(64).unwrap();
        let x = truncate_to_largest(&make_alpha_decaying(128, 0.05).unwrap(), 7).unwrap();
        let g = omp_guarantee(&a, &x, 7).unwrap();
        assert_eq!(g.mu, 0.125);
        assert!(g.iteration_bound_ok);
        assert!(g.certified);
        assert!(!g.classical_certified);
        assert!(g.per_iteration.iter().all(|r| r.tail_delta <= 1.0 / 0.95));
        assert_eq!(g.per_iteration[6].threshold_t, 1.5);
        assert!(!g.per_iteration_heuristic);

        let x8 = truncate_to_largest(&make_alpha_decaying(128, 0.05).unwrap(), 8).unwrap();
        assert!(!omp_guarantee(&a, &x8, 8).unwrap().certified);
    }

    #[test]
    fn guarantee_errors() {
        let h = hadamard_dictionary(4).unwrap();
        let x = Signal::basis(4, 0).unwrap();
        assert!(matches!(omp_guarantee(&h, &x, 1), Err(Error::TrivialCoherence)));
        let a = identity_hadamard(4).unwrap();
        let x = Signal::basis(8, 0).unwrap();
        assert!(matches!(omp_guarantee(&a, &x, 0), Err(Error::TMaxOutOfRange { .. })));
        assert!(matches!(omp_guarantee(&a, &x, 9), Err(Error::TMaxOutOfRange { .. })));
        // t_max >= 1 + 1/mu fails the iteration bound
        let x = Signal::from_real(&[1.0, 1e-3, 1e-6, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let g = omp_guarantee(&a, &x, 3).unwrap();
        assert!(!g.iteration_bound_ok && !g.certified);
    }

    #[test]
    fn guarantee_json_field_names() {
        let a = identity_hadamard(4).unwrap();
        let g = omp_guarantee(&a, &Signal::basis(8, 2).unwrap(), 1).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        for key in ["t_max", "mu", "C", "per_iteration", "iteration_bound_ok", "certified", "classical_threshold"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        for key in ["t", "tail_delta", "threshold_t", "ok"] {
            assert!(v["per_iteration"][0].get(key).is_some(), "missing {key}");
        }
    }
}
