//! The two altitude children of the shape `z = 0.25 + 0.125i`, computed by
//! the closed-form maps and by intersecting rays with the geodesic.

use leab::shape_space::{
    poincare_distance, ray_gamma_intersection, w_left, w_right, RayOrigin, ShapePoint,
};

fn main() -> leab::Result<()> {
    let z = ShapePoint::new(0.25, 0.125)?;
    let (l, r) = (w_left(z), w_right(z));
    println!("z      = {z}");
    println!("W_L(z) = {l}   residual {:.1e}", l.gamma_residual());
    println!("W_R(z) = {r}   residual {:.1e}", r.gamma_residual());

    let ray_l = ray_gamma_intersection(RayOrigin::Zero, z)?;
    let ray_r = ray_gamma_intersection(RayOrigin::One, z)?;
    println!("ray from 0 hits {ray_l} (gap {:.1e})", ray_l.dist(&l));
    println!("ray from 1 hits {ray_r} (gap {:.1e})", ray_r.dist(&r));

    println!(
        "hyperbolic distance z -> W_L(z): {:.12}",
        poincare_distance(z.to_complex(), l.to_complex())?
    );
    Ok(())
}
