//! Two-sided diameter bounds `c sin(a1)^(k-1) <= diam <= C cos(a1)^(k-1)`
//! over twelve levels for a few seeds.

use leab::analysis::verify_bounds;
use leab::mesh::{refine_global, seeds, Method};

fn main() -> leab::Result<()> {
    for (name, seed) in [
        ("equilateral", seeds::equilateral()),
        ("3-4-5", seeds::pythagorean()),
        ("right, 5 deg", seeds::right_triangle(5.0)),
        ("scalene 40/55", seeds::from_base_angles(40.0, 55.0)),
    ] {
        let levels = refine_global(&seed, 12, Method::Leab)?;
        let report = verify_bounds(&levels)?;
        println!("== {name}");
        print!("{}", report.render());
    }
    Ok(())
}
