//! Coherence of structured and random dictionaries, and the coherence bounds
//! that the certificates are built on.

use lowdensity::coherence::{coherence, gram_conditioning_bound, linf_density_bounds, mutual_coherence};
use lowdensity::density::make_alpha_decaying;
use lowdensity::dictionary::{hadamard_dictionary, identity_hadamard, random_unit_dictionary, Dictionary};
use lowdensity::rng::Rng;
use lowdensity::SupportSet;

fn main() -> lowdensity::Result<()> {
    let mut rng = Rng::new(1);
    for (name, a) in [
        ("[I_64 H_64]", identity_hadamard(64)?),
        ("[I_4 H_4]", identity_hadamard(4)?),
        ("random 16x32", random_unit_dictionary(16, 32, &mut rng)?),
    ] {
        let c = coherence(&a);
        println!("{name:<14} mu = {:.6} at columns {:?}", c.mu, c.argmax_pair.unwrap());
    }

    let id = Dictionary::identity(16)?;
    let h = hadamard_dictionary(16)?;
    println!("mutual coherence of I_16 and H_16: {}", mutual_coherence(&id, &h)?.mu_m);

    let a = identity_hadamard(64)?;
    let x = make_alpha_decaying(128, 0.2)?;
    let b = linf_density_bounds(&a, &x)?;
    println!(
        "||A^H A x||_inf / ||x||_inf = {:.6} lies in [{:.6}, {:.6}]",
        b.ratio, b.lower, b.upper
    );

    let s = SupportSet::new(vec![0, 5, 64, 70], a.cols())?;
    let g = gram_conditioning_bound(&a, &s)?;
    println!("lambda_min of the Gram matrix on {:?}: {:.6} >= {:.6}", s.indices(), g.lambda_min, g.bound);
    Ok(())
}
