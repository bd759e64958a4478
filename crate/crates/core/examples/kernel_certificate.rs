//! Certifying that a signal is not in the kernel of a dictionary.

use lowdensity::certificates::kernel_certificate;
use lowdensity::density::make_alpha_decaying;
use lowdensity::dictionary::{identity_hadamard, Dictionary};
use lowdensity::Signal;

fn main() -> lowdensity::Result<()> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let three = Dictionary::from_real(2, 3, &[1.0, 0.0, h, 0.0, 1.0, h], false)?;
    let tight = Signal::from_real(&[1.0, 1.0, -std::f64::consts::SQRT_2])?;
    let c = kernel_certificate(&three, &tight)?;
    println!(
        "kernel vector of [e1 e2 (e1+e2)/sqrt2]: delta = {:.6}, threshold = {:.6}, certified = {}",
        c.delta, c.threshold, c.certified_nonzero
    );

    let a = identity_hadamard(64)?;
    let x = make_alpha_decaying(128, 0.5)?;
    let c = kernel_certificate(&a, &x)?;
    println!(
        "dense alpha-decaying signal on [I_64 H_64]: ||x||_0 = {}, delta = {:.4} < {} -> certified = {}, classical = {}",
        c.sparsity, c.delta, c.threshold, c.certified_nonzero, c.classical_certified
    );
    Ok(())
}
