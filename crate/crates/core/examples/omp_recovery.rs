//! Running OMP on a measurement and reading its trace.

use lowdensity::density::{make_alpha_decaying, truncate_to_largest};
use lowdensity::dictionary::identity_hadamard;
use lowdensity::omp::omp_run;
use lowdensity::Signal;

fn main() -> lowdensity::Result<()> {
    let a = identity_hadamard(64)?;
    let x = truncate_to_largest(&make_alpha_decaying(128, 0.05)?, 7)?;
    let y = Signal::from_dvector(&a.apply(&x)?)?;
    let trace = omp_run(&a, &y, 7, None)?;
    println!("iter  atom   |a^H r|      ||r||");
    for t in 0..trace.iterations() {
        println!(
            "{:>4} {:>5} {:>9.3e} {:>10.3e}",
            t + 1,
            trace.selected[t],
            trace.correlations[t],
            trace.residual_norms[t + 1]
        );
    }
    let xhat = trace.estimate(a.cols())?;
    let err: f64 = xhat.entries().iter().zip(x.entries()).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>().sqrt();
    println!("relative error {:.2e}", err / x.norm_l2());
    Ok(())
}
