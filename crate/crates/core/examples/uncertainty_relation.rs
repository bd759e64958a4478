//! The density uncertainty relation for two representations `Ax = Bz`.

use lowdensity::certificates::{onb_uncertainty_bound, uncertainty_check};
use lowdensity::coherence::mutual_coherence;
use lowdensity::dictionary::{hadamard_dictionary, random_orthonormal_basis, Dictionary};
use lowdensity::rng::Rng;
use lowdensity::Signal;

fn main() -> lowdensity::Result<()> {
    for m in [2, 4, 8, 16] {
        let (id, h) = (Dictionary::identity(m)?, hadamard_dictionary(m)?);
        let z = Signal::basis(m, 1)?;
        let x = Signal::from_dvector(&h.apply(&z)?)?;
        let r = uncertainty_check(&id, &h, &x, &z)?;
        let bound = onb_uncertainty_bound(mutual_coherence(&id, &h)?.mu_m)?;
        println!("M={m:<3} delta(x) delta(z) = {:>8.4}  bound 1/mu_m^2 = {bound:.4}", r.delta_x * r.delta_z);
    }

    let mut rng = Rng::new(7);
    let a = random_orthonormal_basis(8, &mut rng)?;
    let b = random_orthonormal_basis(8, &mut rng)?;
    let z = Signal::basis(8, 0)?;
    let x = Signal::from_dvector(&a.adjoint_apply(&b.apply(&z)?)?)?;
    let r = uncertainty_check(&a, &b, &x, &z)?;
    println!("random bases: lhs {:.4} <= rhs {:.4} (constraint residual {:.1e})", r.lhs, r.rhs, r.constraint_residual);
    Ok(())
}
