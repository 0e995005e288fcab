//! Writes the shape-space figure and a refined mesh as SVG files.
//! Usage: `cargo run --example plot_figures [OUT_DIR]`

use std::path::PathBuf;

use leab::mesh::{refine_global, seeds, Method};
use leab::shape_space::{w_left, w_right, ShapePoint};
use leab::svg::{mesh_svg, shape_space_svg, LabeledPoint};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("leab_figures"));
    std::fs::create_dir_all(&dir)?;

    let z = ShapePoint::new(0.25, 0.125)?;
    let points = [
        LabeledPoint::new(z.to_complex(), "z"),
        LabeledPoint::new(w_left(z).to_complex(), "W_L(z)"),
        LabeledPoint::new(w_right(z).to_complex(), "W_R(z)"),
    ];
    std::fs::write(dir.join("shape_space.svg"), shape_space_svg(&points))?;

    let levels = refine_global(&seeds::equilateral(), 4, Method::Leab)?;
    std::fs::write(dir.join("equilateral_level_004.svg"), mesh_svg(&levels[4]))?;
    println!("wrote figures to {}", dir.display());
    Ok(())
}
