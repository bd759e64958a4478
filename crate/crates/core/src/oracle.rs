//! Brute-force checkers for small instances.
//!
//! These do not share code paths with the certificates they validate:
//! kernels come from an SVD, kernel densities from random sampling plus a
//! local search, and sparse recovery from enumerating every support.
//!
//! [`probe_kernel_density`] is a falsifier. It searches for kernel vectors
//! of low density, and finding none below `1 + 1/μ` is evidence, not
//! proof, that none exist.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coherence::coherence;
use crate::dictionary::Dictionary;
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::omp::least_squares_on_support;
use crate::rng::{trial_seed, Rng};
use crate::signal::{complex_vec, Signal, SupportSet};

/// Relative singular-value cutoff for the kernel.
pub const NULLSPACE_REL_TOL: f64 = 1e-10;

/// Maximum number of supports the exhaustive search will evaluate.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000_000;

const PROBE_BATCH: usize = 256;
const DESCENT_MAX_SWEEPS: usize = 60;
const DESCENT_MIN_STEP: f64 = 1e-7;

/// Orthonormal basis of `ker(A)` as matrix columns; empty for full column rank.
pub fn nullspace_basis(a: &Dictionary) -> DMatrix<Complex64> {
    nullspace(a.matrix(), NULLSPACE_REL_TOL)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelProbeResult {
    pub min_delta_found: f64,
    /// Kernel vector attaining `min_delta_found`, scaled to unit ℓ2 norm.
    pub witness: Signal,
    /// 1 + 1/μ_a
    pub threshold: f64,
    pub trials: usize,
    pub kernel_dim: usize,
}

impl KernelProbeResult {
    /// No probed kernel vector beat the threshold by more than `tol`.
    pub fn consistent(&self, tol: f64) -> bool {
        self.min_delta_found >= self.threshold - tol
    }
}

/// Searches `ker(A)` for vectors of small δ-density.
///
/// Each trial draws complex Gaussian coordinates in the kernel basis and
/// then runs a coordinate-wise perturbation descent on δ. Trials run in
/// batches of 256 on the rayon pool; batch `b` uses the seed
/// `s + b` where `s` is drawn from `rng`, and batch minima are merged in
/// batch order, so the result does not depend on thread count.
pub fn probe_kernel_density(a: &Dictionary, trials: usize, rng: &mut Rng) -> Result<KernelProbeResult> {
    let mu = coherence(a).mu;
    if mu == 0.0 {
        return Err(Error::TrivialCoherence);
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let basis = nullspace_basis(a);
    if basis.ncols() == 0 {
        return Err(Error::TrivialKernel);
    }
    let base = rng.next_u64();
    let batches = trials.div_ceil(PROBE_BATCH);
    let best = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = Rng::new(trial_seed(base, b as u64));
            let count = PROBE_BATCH.min(trials - b * PROBE_BATCH);
            let mut best: Option<(f64, DVector<Complex64>)> = None;
            for _ in 0..count {
                let start = DVector::from_fn(basis.ncols(), |_, _| rng.complex_gaussian());
                let (d, v) = descend(&basis, start);
                if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                    best = Some((d, v));
                }
            }
            best.expect("batch has at least one trial")
        })
        .collect::<Vec<_>>()
        .into_iter()
        .reduce(|acc, cur| if cur.0 < acc.0 { cur } else { acc })
        .expect("at least one batch");
    let (min_delta_found, v) = best;
    let norm = v.norm();
    Ok(KernelProbeResult {
        min_delta_found,
        witness: Signal::from_dvector(&v.unscale(norm))?,
        threshold: 1.0 + 1.0 / mu,
        trials,
        kernel_dim: basis.ncols(),
    })
}

fn density_of(v: &DVector<Complex64>) -> f64 {
    let (l1, linf) = v.iter().fold((0.0, 0.0f64), |(s, m), z| {
        let a = z.norm();
        (s + a, m.max(a))
    });
    if linf == 0.0 {
        f64::INFINITY
    } else {
        l1 / linf
    }
}

/// Greedy descent on δ(basis · c) over the coordinates of `c`, stepping in
/// the four directions ±1, ±i per coordinate and halving the step when no
/// move helps.
fn descend(basis: &DMatrix<Complex64>, mut c: DVector<Complex64>) -> (f64, DVector<Complex64>) {
    let mut v = basis * &c;
    let mut best = density_of(&v);
    let dirs = [
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
    ];
    let mut step = 0.5 * c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let floor = DESCENT_MIN_STEP * step;
    for _ in 0..DESCENT_MAX_SWEEPS {
        if step < floor || basis.ncols() == 1 {
            break;
        }
        let mut improved = false;
        for j in 0..c.len() {
            for d in dirs {
                let delta = d * step;
                let candidate = &v + basis.column(j) * delta;
                let value = density_of(&candidate);
                if value < best {
                    best = value;
                    v = candidate;
                    c[j] += delta;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    // Recompute from the coordinates to shed accumulated update error.
    let v = basis * &c;
    (density_of(&v), v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExhaustiveRecovery {
    pub support: SupportSet,
    #[serde(with = "complex_vec")]
    pub coefficients: Vec<Complex64>,
    pub residual_norm: f64,
    pub supports_evaluated: u128,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Residuals within this fraction of ‖y‖₂ (or absolute, for small y) tie.
const RESIDUAL_TIE_TOL: f64 = 1e-10;

/// Least-squares fit on every support of size at most `k`, returning the
/// best one.
///
/// Residual norms within `1e-10·max(1, ‖y‖₂)` count as tied; ties go to the
/// smaller support, then to the lexicographically smallest. Rank-deficient
/// supports are skipped since a smaller support reaches the same residual.
pub fn exhaustive_sparse_recovery(a: &Dictionary, y: &Signal, k: usize) -> Result<ExhaustiveRecovery> {
    if y.dim() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: y.dim() });
    }
    if k > a.rows() || k > a.cols() {
        return Err(Error::KOutOfRange { k, dim: a.rows().min(a.cols()) });
    }
    let count: u128 = (0..=k).map(|s| binomial(a.cols(), s)).sum();
    if count > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge { count, limit: EXHAUSTIVE_LIMIT });
    }
    let yv = y.to_dvector();
    let tie = RESIDUAL_TIE_TOL * yv.norm().max(1.0);
    let mut best = ExhaustiveRecovery {
        support: SupportSet::empty(),
        coefficients: Vec::new(),
        residual_norm: yv.norm(),
        supports_evaluated: 1,
    };
    for size in 1..=k {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            best.supports_evaluated += 1;
            let s = SupportSet::new(combo.clone(), a.cols())?;
            match least_squares_on_support(a, &s, &yv) {
                Ok(fit) => {
                    let r = fit.residual.norm();
                    // Sizes and combos are visited in (size, lexicographic)
                    // order, so only a strict improvement replaces the best.
                    if r < best.residual_norm - tie {
                        best.support = s;
                        best.coefficients = fit.coefficients;
                        best.residual_norm = r;
                    }
                }
                Err(Error::RankDeficient { .. }) => {}
                Err(e) => return Err(e),
            }
            if !next_combination(&mut combo, a.cols()) {
                break;
            }
        }
    }
    Ok(best)
}

/// Advances `combo` to the next k-subset of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::{identity_hadamard, random_unit_dictionary};
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn three_atoms() -> Dictionary {
        let s = FRAC_1_SQRT_2;
        Dictionary::from_real(2, 3, &[1.0, 0.0, s, 0.0, 1.0, s], false).unwrap()
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace_basis(&Dictionary::identity(3).unwrap()).ncols(), 0);

        let k = nullspace_basis(&three_atoms());
        assert_eq!(k.ncols(), 1);
        let dir = DVector::from_vec(vec![
            Complex64::new(0.5, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(-SQRT_2 / 2.0, 0.0),
        ]);
        // |<k, dir>| = 1 for unit vectors spanning the same line
        assert!((k.column(0).dotc(&dir).norm() - 1.0).abs() < 1e-12);

        let a = identity_hadamard(4).unwrap();
        let k = nullspace_basis(&a);
        assert_eq!(k.ncols(), 4);
        assert!((a.matrix() * &k).norm() < 1e-12);
    }

    #[test]
    fn probe_one_dimensional_kernel() {
        let r = probe_kernel_density(&three_atoms(), 1000, &mut Rng::new(0)).unwrap();
        assert!((r.min_delta_found - (1.0 + SQRT_2)).abs() < 1e-6);
        assert!((r.threshold - (1.0 + SQRT_2)).abs() < 1e-12);
        assert!(three_atoms().apply(&r.witness).unwrap().norm() <= 1e-10 * r.witness.norm_l2());
    }

    #[test]
    fn probe_errors() {
        let full = Dictionary::from_real(2, 2, &[1.0, FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2], false).unwrap();
        assert!(matches!(probe_kernel_density(&full, 10, &mut Rng::new(0)), Err(Error::TrivialKernel)));
        let onb = Dictionary::identity(3).unwrap();
        assert!(matches!(probe_kernel_density(&onb, 10, &mut Rng::new(0)), Err(Error::TrivialCoherence)));
    }

    #[test]
    fn probe_identity_hadamard_never_beats_threshold() {
        let a = identity_hadamard(4).unwrap();
        let r = probe_kernel_density(&a, 2000, &mut Rng::new(3)).unwrap();
        assert_eq!(r.threshold, 3.0);
        assert!(r.consistent(1e-9), "{}", r.min_delta_found);
        // The bound is attained by [-H e_1; e_1]; descent should get close.
        assert!(r.min_delta_found < 3.0 + 1e-3);
        assert!(a.apply(&r.witness).unwrap().norm() <= 1e-10);
    }

    #[test]
    fn probe_is_deterministic() {
        let a = identity_hadamard(4).unwrap();
        let r1 = probe_kernel_density(&a, 600, &mut Rng::new(5)).unwrap();
        let r2 = probe_kernel_density(&a, 600, &mut Rng::new(5)).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn probe_random_dictionaries() {
        let mut rng = Rng::new(44);
        for _ in 0..10 {
            let a = random_unit_dictionary(4, 7, &mut rng).unwrap();
            let r = probe_kernel_density(&a, 300, &mut rng).unwrap();
            assert!(r.consistent(1e-9));
            assert!(a.apply(&r.witness).unwrap().norm() <= 1e-10 * r.witness.norm_l2());
        }
    }

    #[test]
    fn exhaustive_single_atom() {
        let a = identity_hadamard(4).unwrap();
        let y = Signal::from_dvector(&(a.column(3) * Complex64::new(5.0, 0.0))).unwrap();
        let r = exhaustive_sparse_recovery(&a, &y, 1).unwrap();
        assert_eq!(r.support.indices(), &[3]);
        assert!(r.residual_norm < 1e-14);
        // k = 2 still prefers the single atom over supersets
        let r = exhaustive_sparse_recovery(&a, &y, 2).unwrap();
        assert_eq!(r.support.indices(), &[3]);
        assert_eq!(r.supports_evaluated, 1 + 8 + 28);
    }

    #[test]
    fn exhaustive_two_sparse() {
        let mut rng = Rng::new(8);
        for _ in 0..20 {
            let a = random_unit_dictionary(8, 12, &mut rng).unwrap();
            let mut support = rng.distinct_indices(12, 2);
            let mut e = vec![Complex64::new(0.0, 0.0); 12];
            e[support[0]] = rng.unit_phase();
            e[support[1]] = rng.unit_phase() * 0.4;
            let y = Signal::from_dvector(&a.apply(&Signal::new(e).unwrap()).unwrap()).unwrap();
            let r = exhaustive_sparse_recovery(&a, &y, 2).unwrap();
            support.sort_unstable();
            assert_eq!(r.support.indices(), &support[..]);
            assert!(r.residual_norm < 1e-12);
        }
    }

    #[test]
    fn exhaustive_guard() {
        let a = Dictionary::identity(40).unwrap();
        let y = Signal::zeros(40).unwrap();
        // C(40, 20) is about 1.4e11
        assert!(matches!(exhaustive_sparse_recovery(&a, &y, 20), Err(Error::TooLarge { .. })));
        assert!(matches!(exhaustive_sparse_recovery(&a, &y, 41), Err(Error::KOutOfRange { .. })));
    }

    #[test]
    fn combinations_enumerate_in_order() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(binomial(12, 2), 66);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(40, 20), 137_846_528_820);
    }
}
