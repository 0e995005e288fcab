//! Ratio of largest to smallest element diameter per level for thin seeds.
//! An isosceles seed grows like cot(a1)^(k-1), a right seed like cot(a1)^k.

use leab::analysis::{heterogeneity_ratio, level_stats};
use leab::mesh::{refine_global, seeds, Method};

fn main() -> leab::Result<()> {
    for (name, seed) in [
        ("isosceles 5 deg", seeds::isosceles(5.0)),
        ("right 5 deg", seeds::right_triangle(5.0)),
    ] {
        let levels = refine_global(&seed, 10, Method::Leab)?;
        let a1 = level_stats(&levels[1])?.min_angle.to_radians();
        let cot = a1.cos() / a1.sin();
        println!("== {name}, cot(a1) = {cot:.6}");
        for (i, h) in heterogeneity_ratio(&levels)?.into_iter().enumerate() {
            let k = i as i32 + 1;
            println!(
                "k={k:>2}  ratio {h:>14.6e}  cot^(k-1) {:>14.6e}  cot^k {:>14.6e}",
                cot.powi(k - 1),
                cot.powi(k)
            );
        }
    }
    Ok(())
}
