//! Bringing an arbitrary triangle into shape space and checking that
//! splitting it agrees with the shape maps.

use leab::analysis::{commutation_check, normalize_triangle};
use leab::Point2;

fn main() -> leab::Result<()> {
    let (a, b, c) = (
        Point2::new(3.0, 1.0),
        Point2::new(-2.0, 4.0),
        Point2::new(0.5, -3.0),
    );
    let (z, t) = normalize_triangle(a, b, c)?;
    println!("shape {z}");
    println!(
        "transform: scale {:.6}, rotation {:.6} rad, translation {}, reflected {}",
        t.scale, t.rotation, t.translation, t.reflected
    );
    for p in [a, b, c] {
        println!("  {p} -> {}", t.apply(p));
    }
    let (dl, dr) = commutation_check(a, b, c)?;
    println!("children vs maps: left {dl:.1e}, right {dr:.1e}");
    Ok(())
}
