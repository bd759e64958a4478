//! δ-density next to sparsity, γ and σ for a few characteristic signals.

use lowdensity::density::{density_report, make_alpha_decaying, truncate_to_largest};
use lowdensity::Signal;

fn main() -> lowdensity::Result<()> {
    let signals = [
        ("constant modulus, 3 nonzeros", Signal::from_real(&[1.0, -1.0, 1.0, 0.0])?),
        ("zero signal", Signal::zeros(4)?),
        ("alpha-decaying, alpha=0.5", make_alpha_decaying(4, 0.5)?),
        ("alpha-decaying, alpha=0.05, N=128", make_alpha_decaying(128, 0.05)?),
        ("top 7 of the above", truncate_to_largest(&make_alpha_decaying(128, 0.05)?, 7)?),
    ];
    println!("{:<36} {:>8} {:>10} {:>10} {:>10}", "signal", "||x||_0", "delta", "gamma", "sigma");
    for (name, x) in &signals {
        let r = density_report(x);
        println!("{name:<36} {:>8} {:>10.5} {:>10.5} {:>10.5}", r.sparsity, r.delta, r.gamma, r.sigma);
    }
    Ok(())
}
