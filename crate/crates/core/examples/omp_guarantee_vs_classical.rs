//! Where the density-based OMP guarantee reaches beyond the sparsity bound.
//!
//! On `[I_64 H_64]` (μ = 1/8) the classical condition certifies at most 4
//! nonzeros. Truncated α-decaying signals with α = 0.05 are certified up to
//! 7 nonzeros.

use lowdensity::certificates::{alpha_decay_iteration_bound, omp_guarantee};
use lowdensity::density::{make_alpha_decaying, truncate_to_largest};
use lowdensity::dictionary::identity_hadamard;
use lowdensity::Signal;

fn main() -> lowdensity::Result<()> {
    let a = identity_hadamard(64)?;
    let alpha = 0.05;
    println!("iteration bound 2 + 1/mu - 2/(1-alpha) = {:.4}", alpha_decay_iteration_bound(alpha, 0.125)?);
    println!("{:>3} {:>10} {:>10} {:>10}", "k", "delta", "density", "classical");
    for k in 1..=10 {
        let x = truncate_to_largest(&make_alpha_decaying(128, alpha)?, k)?;
        let g = omp_guarantee(&a, &x, k)?;
        println!("{k:>3} {:>10.5} {:>10} {:>10}", g.per_iteration[0].tail_delta, g.certified, g.classical_certified);
    }

    let flat = Signal::from_real(&[1.0; 5].iter().copied().chain([0.0; 123]).collect::<Vec<_>>())?;
    let g = omp_guarantee(&a, &flat, 5)?;
    println!("\nconstant modulus, k = 5: certified = {}", g.certified);
    for row in &g.per_iteration {
        println!("  t={} tail delta {:.3} < {:.3}: {}", row.t, row.tail_delta, row.threshold_t, row.ok);
    }
    Ok(())
}
