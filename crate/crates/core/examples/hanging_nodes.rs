//! Altitude bisection does not keep meshes conforming: a neighbour whose
//! longest edge differs leaves the new foot point hanging.

use leab::mesh::{default_hanging_tol, find_hanging_nodes, refine_global, seeds, Method};

fn main() -> leab::Result<()> {
    for (name, seed) in [
        ("pair", seeds::hanging_pair()),
        ("single scalene", seeds::from_base_angles(40.0, 55.0)),
    ] {
        println!("== {name}");
        for mesh in refine_global(&seed, 4, Method::Leab)?.iter().skip(1) {
            let nodes = find_hanging_nodes(mesh, default_hanging_tol(mesh));
            print!("level {}: {} hanging", mesh.level, nodes.len());
            if let Some(h) = nodes.first() {
                print!(
                    ", first at {} on triangle {}",
                    mesh.vertices[h.vertex], h.triangle
                );
            }
            println!();
        }
    }
    Ok(())
}
