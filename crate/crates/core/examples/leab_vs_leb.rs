//! Altitude bisection freezes the set of similarity classes after one step.
//! Midpoint bisection spreads an obtuse seed over many more classes.

use leab::analysis::{level_stats, similarity_class_count, CLASS_TOL};
use leab::mesh::{refine_global, seeds, Method};

fn main() -> leab::Result<()> {
    let seed = seeds::from_base_angles(15.0, 100.0);
    for method in [Method::Leab, Method::Leb] {
        println!("== {method}");
        for mesh in &refine_global(&seed, 8, method)? {
            let s = level_stats(mesh)?;
            println!(
                "k={}  classes {:>3}  min angle {:>8.4}",
                s.k,
                similarity_class_count(mesh, CLASS_TOL)?,
                s.min_angle
            );
        }
    }
    Ok(())
}
