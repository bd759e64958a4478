//! Searching the kernel for low-density vectors and comparing against the
//! certified threshold.

use lowdensity::dictionary::{identity_hadamard, random_unit_dictionary};
use lowdensity::oracle::{exhaustive_sparse_recovery, probe_kernel_density};
use lowdensity::rng::Rng;
use lowdensity::Signal;

fn main() -> lowdensity::Result<()> {
    let mut rng = Rng::new(0);
    for (name, a) in [("[I_4 H_4]", identity_hadamard(4)?), ("random 6x10", random_unit_dictionary(6, 10, &mut rng)?)] {
        let r = probe_kernel_density(&a, 2000, &mut rng)?;
        println!(
            "{name:<12} kernel dim {}  min delta found {:.6}  threshold 1 + 1/mu = {:.6}",
            r.kernel_dim, r.min_delta_found, r.threshold
        );
    }

    let a = random_unit_dictionary(8, 12, &mut rng)?;
    let mut x = vec![0.0; 12];
    x[3] = 1.0;
    x[9] = -0.5;
    let y = Signal::from_dvector(&a.apply(&Signal::from_real(&x)?)?)?;
    let best = exhaustive_sparse_recovery(&a, &y, 2)?;
    println!(
        "exhaustive search over {} supports: {:?} with residual {:.1e}",
        best.supports_evaluated,
        best.support.indices(),
        best.residual_norm
    );
    Ok(())
}
