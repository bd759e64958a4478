//! Signal-density measures.
//!
//! The δ-density `‖x‖₁ / ‖x‖∞` refines the sparsity count `‖x‖₀` with
//! magnitude information: it never exceeds `‖x‖₀`, matches it exactly for
//! constant-modulus signals and stays small for dense signals whose entries
//! decay quickly. The zero signal has density 0 by convention.
//!
//! `γ(x) = ‖x‖₂²/‖x‖∞²` and `σ(x) = ‖x‖₁²/‖x‖₂²` are reported alongside for
//! comparison; no certificate in this crate depends on them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::Signal;

/// δ(x) = ‖x‖₁ / ‖x‖∞, and 0 for the zero signal.
pub fn delta_density(x: &Signal) -> f64 {
    delta_of_moduli(x.entries().iter().map(|z| z.norm()))
}

pub(crate) fn delta_of_moduli(moduli: impl Iterator<Item = f64>) -> f64 {
    let (l1, linf) = moduli.fold((0.0, 0.0f64), |(s, m), a| (s + a, m.max(a)));
    if linf == 0.0 {
        0.0
    } else {
        l1 / linf
    }
}

/// Number of entries with modulus strictly above `zero_tol`.
pub fn sparsity(x: &Signal, zero_tol: f64) -> usize {
    x.entries().iter().filter(|z| z.norm() > zero_tol).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub delta: f64,
    pub gamma: f64,
    pub sigma: f64,
    pub sparsity: usize,
    pub dim: usize,
}

/// δ, γ, σ and exact sparsity of `x`.
pub fn density_report(x: &Signal) -> DensityReport {
    let (mut l1, mut l2sq, mut linf) = (0.0, 0.0, 0.0f64);
    for z in x.entries() {
        let a = z.norm();
        l1 += a;
        l2sq += z.norm_sqr();
        linf = linf.max(a);
    }
    let (delta, gamma, sigma) = if linf == 0.0 {
        (0.0, 0.0, 0.0)
    } else {
        (l1 / linf, l2sq / (linf * linf), l1 * l1 / l2sq)
    };
    DensityReport { delta, gamma, sigma, sparsity: sparsity(x, 0.0), dim: x.dim() }
}

/// Real signal with entries `alpha^i`, `i = 0..n`.
///
/// Requires `n >= 2` and `0 < alpha < 1 - 1/n`.
pub fn make_alpha_decaying(n: usize, alpha: f64) -> Result<Signal> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("alpha-decaying signal needs n >= 2, got {n}")));
    }
    if !(alpha > 0.0 && alpha < 1.0 - 1.0 / n as f64) {
        return Err(Error::AlphaOutOfRange { alpha, n });
    }
    let values: Vec<f64> = (0..n).map(|i| alpha.powi(i as i32)).collect();
    Signal::from_real(&values)
}

/// Indices of `x` sorted by descending modulus; equal moduli keep
/// ascending index order.
pub fn magnitude_order(x: &Signal) -> Vec<usize> {
    let moduli = x.moduli();
    let mut order: Vec<usize> = (0..x.dim()).collect();
    order.sort_by(|&a, &b| moduli[b].total_cmp(&moduli[a]));
    order
}

/// Keeps the `k` largest-modulus entries and zeros the rest. Ties go to
/// the lowest index.
pub fn truncate_to_largest(x: &Signal, k: usize) -> Result<Signal> {
    if k > x.dim() {
        return Err(Error::KOutOfRange { k, dim: x.dim() });
    }
    let order = magnitude_order(x);
    Ok(x.with_zeroed(&order[k..]))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleCounterexample {
    pub delta_x: f64,
    pub delta_z: f64,
    pub delta_sum: f64,
}

/// Evaluates δ on `x_i = -alpha^i`, `z_i = alpha^i + epsilon` and their
/// sum `epsilon·1`.
///
/// For `epsilon > 0` the sum is constant-modulus, so `delta_sum` is exactly `n`, which
/// exceeds `delta_x + delta_z` for small `alpha`, `epsilon` and large `n`.
pub fn triangle_counterexample(alpha: f64, epsilon: f64, n: usize) -> Result<TriangleCounterexample> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if !(epsilon >= 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidParameter(format!("epsilon must be >= 0, got {epsilon}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let powers: Vec<f64> = (0..n).map(|i| alpha.powi(i as i32)).collect();
    let x = Signal::from_real(&powers.iter().map(|p| -p).collect::<Vec<_>>())?;
    let z = Signal::from_real(&powers.iter().map(|p| p + epsilon).collect::<Vec<_>>())?;
    // x + z = epsilon·1, whose density is n in closed form.
    let delta_sum = if epsilon > 0.0 { n as f64 } else { 0.0 };
    Ok(TriangleCounterexample { delta_x: delta_density(&x), delta_z: delta_density(&z), delta_sum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn real(v: &[f64]) -> Signal {
        Signal::from_real(v).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_density(&real(&[1.0, 1.0, 1.0, 0.0])), 3.0);
        assert_eq!(delta_density(&real(&[0.0; 4])), 0.0);
        // (1 - 0.5^4) / (1 - 0.5)
        let x = make_alpha_decaying(4, 0.5).unwrap();
        assert_eq!(delta_density(&x), (1.0 - 0.5f64.powi(4)) / 0.5);
        assert_eq!(delta_density(&x), 1.875);
    }

    #[test]
    fn sparsity_examples() {
        assert_eq!(sparsity(&real(&[1.0, 0.0, 2.0, 0.0]), 0.0), 2);
        assert_eq!(sparsity(&real(&[1e-15, 1.0]), 1e-12), 1);
        assert_eq!(sparsity(&real(&[1e-15, 1.0]), 0.0), 2);
        assert_eq!(sparsity(&real(&[0.0, 0.0]), 0.0), 0);
    }

    #[test]
    fn report_examples() {
        let r = density_report(&real(&[1.0, 1.0]));
        assert_eq!((r.delta, r.gamma, r.sigma, r.sparsity), (2.0, 2.0, 2.0, 2));
        let r = density_report(&real(&[1.0, 0.0]));
        assert_eq!((r.delta, r.gamma, r.sigma, r.sparsity), (1.0, 1.0, 1.0, 1));
        let r = density_report(&make_alpha_decaying(4, 0.5).unwrap());
        // Direct evaluation of the three norm ratios.
        let gamma = 1.0 + 0.25 + 0.0625 + 0.015625;
        assert_eq!(r.delta, 1.875);
        assert!((r.gamma - gamma).abs() < 1e-15);
        assert!((r.sigma - 1.875f64.powi(2) / gamma).abs() < 1e-14);
        let z = density_report(&real(&[0.0; 3]));
        assert_eq!((z.delta, z.gamma, z.sigma, z.sparsity, z.dim), (0.0, 0.0, 0.0, 0, 3));
    }

    #[test]
    fn alpha_decaying_examples() {
        assert_eq!(make_alpha_decaying(4, 0.5).unwrap(), real(&[1.0, 0.5, 0.25, 0.125]));
        assert!(matches!(make_alpha_decaying(3, 0.9), Err(Error::AlphaOutOfRange { .. })));
        assert_eq!(make_alpha_decaying(2, 0.4).unwrap(), real(&[1.0, 0.4]));
        assert!(make_alpha_decaying(2, 0.5).is_err());
        assert!(make_alpha_decaying(2, 0.0).is_err());
        assert!(make_alpha_decaying(1, 0.1).is_err());
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(truncate_to_largest(&real(&[3.0, 1.0, 2.0]), 2).unwrap(), real(&[3.0, 0.0, 2.0]));
        assert_eq!(truncate_to_largest(&real(&[3.0, 1.0, 2.0]), 0).unwrap(), real(&[0.0; 3]));
        assert_eq!(truncate_to_largest(&real(&[1.0, 1.0, 1.0]), 1).unwrap(), real(&[1.0, 0.0, 0.0]));
        assert!(matches!(truncate_to_largest(&real(&[1.0]), 2), Err(Error::KOutOfRange { k: 2, dim: 1 })));
    }

    #[test]
    fn triangle_examples() {
        let t = triangle_counterexample(0.1, 0.01, 100).unwrap();
        let geo = (1.0 - 0.1f64.powi(100)) / 0.9;
        let dz = (geo + 100.0 * 0.01) / 1.01;
        assert_eq!(t.delta_sum, 100.0);
        assert!((t.delta_x - geo).abs() < 1e-12);
        assert!((t.delta_z - dz).abs() < 1e-12);
        assert!((t.delta_x - 1.1111).abs() < 1e-4 && (t.delta_z - 2.0902).abs() < 1e-4);
        assert!(t.delta_sum > t.delta_x + t.delta_z);

        let t = triangle_counterexample(0.5, 0.0, 2).unwrap();
        assert_eq!(t.delta_x, 1.5);
        assert_eq!(t.delta_sum, 0.0);

        for &(a, e, n) in &[(0.3, 0.2, 5usize), (0.9, 1.0, 17), (0.01, 1e-6, 1)] {
            assert_eq!(triangle_counterexample(a, e, n).unwrap().delta_sum, n as f64);
        }
        assert!(triangle_counterexample(1.0, 0.1, 3).is_err());
        assert!(triangle_counterexample(0.5, -0.1, 3).is_err());
        assert!(triangle_counterexample(0.5, 0.1, 0).is_err());
    }

    #[test]
    fn equality_iff_constant_modulus() {
        let mut rng = Rng::new(11);
        for _ in 0..200 {
            let n = 16;
            let k = 1 + rng.below(n);
            let support = rng.distinct_indices(n, k);
            let modulus = rng.uniform_range(0.1, 10.0);
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            for &i in &support {
                e[i] = rng.unit_phase() * modulus;
            }
            let x = Signal::new(e.clone()).unwrap();
            assert!((delta_density(&x) - k as f64).abs() <= 1e-12);
            if k >= 2 {
                // break constant modulus on one entry
                e[support[0]] *= 0.5;
                let y = Signal::new(e).unwrap();
                assert!(delta_density(&y) < k as f64 - 1e-12);
            }
        }
    }

    fn signal_strategy(n: usize) -> impl Strategy<Value = Signal> {
        proptest::collection::vec(
            prop_oneof![
                3 => (-1e3..1e3f64, -1e3..1e3f64),
                1 => Just((0.0, 0.0)),
            ],
            n,
        )
        .prop_map(|v| Signal::new(v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn density_chain(x in signal_strategy(32)) {
            let r = density_report(&x);
            let k = r.sparsity as f64;
            prop_assert!(r.delta >= 0.0);
            prop_assert!(r.delta - k <= 1e-12);
            prop_assert!(r.sparsity <= r.dim);
            prop_assert!(r.gamma - k <= 1e-12 && r.sigma - k <= 1e-9);
            prop_assert_eq!(r.delta == 0.0, r.sparsity == 0);
        }

        #[test]
        fn scale_invariance(x in signal_strategy(16), mag in 1e-3..1e3f64, phase in 0.0..std::f64::consts::TAU) {
            let c = Complex64::from_polar(mag, phase);
            let y = x.scaled(c).unwrap();
            prop_assert!((delta_density(&y) - delta_density(&x)).abs() <= 1e-12);
            prop_assert_eq!(sparsity(&y, 0.0), sparsity(&x, 0.0));
        }

        #[test]
        fn alpha_decay_bound(n in 2usize..300, frac in 0.001..0.999f64) {
            let alpha = frac * (1.0 - 1.0 / n as f64);
            let x = make_alpha_decaying(n, alpha).unwrap();
            prop_assert!(delta_density(&x) <= 1.0 / (1.0 - alpha) + 1e-12);
        }

        #[test]
        fn truncation_keeps_largest(x in signal_strategy(12), k in 0usize..=12) {
            let t = truncate_to_largest(&x, k).unwrap();
            prop_assert!(sparsity(&t, 0.0) <= k);
            let kept_min = t.entries().iter().filter(|z| z.norm() > 0.0).map(|z| z.norm()).fold(f64::INFINITY, f64::min);
            let dropped_max = x.entries().iter().zip(t.entries()).filter(|(_, b)| b.norm() == 0.0).map(|(a, _)| a.norm()).fold(0.0, f64::max);
            if sparsity(&t, 0.0) > 0 {
                prop_assert!(kept_min >= dropped_max);
            }
        }
    }
}
