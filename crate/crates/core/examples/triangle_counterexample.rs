//! δ-density is not subadditive.

use lowdensity::density::triangle_counterexample;

fn main() -> lowdensity::Result<()> {
    let t = triangle_counterexample(0.1, 0.01, 100)?;
    println!("x_i = -0.1^i, z_i = 0.1^i + 0.01, N = 100");
    println!("delta(x) + delta(z) = {:.4} + {:.4} = {:.4}", t.delta_x, t.delta_z, t.delta_x + t.delta_z);
    println!("delta(x + z)        = {}", t.delta_sum);
    Ok(())
}
