//! Global altitude bisection of the unit equilateral triangle: after one step
//! every element is a 30-60-90 triangle.

use leab::analysis::level_stats;
use leab::mesh::{refine_global, seeds, Method};

fn main() -> leab::Result<()> {
    let levels = refine_global(&seeds::equilateral(), 6, Method::Leab)?;
    println!(
        "{:>2} {:>4} {:>10} {:>10} {:>8} {:>8}",
        "k", "n", "min diam", "max diam", "min ang", "max ang"
    );
    for mesh in &levels {
        let s = level_stats(mesh)?;
        println!(
            "{:>2} {:>4} {:>10.6} {:>10.6} {:>8.3} {:>8.3}",
            s.k, s.n, s.min_diam, s.max_diam, s.min_angle, s.max_angle
        );
    }
    Ok(())
}
