//! Seed triangulations used throughout the examples and tests.
//!
//! Right-triangle seeds put the vertex with the larger acute angle at the
//! origin. Repeatedly taking the smaller altitude child converges to that
//! vertex, so the smallest elements of deep refinements keep full relative
//! precision.

use super::{Point2, TriMesh};

/// Unit equilateral triangle with its apex listed first, so that the base
/// `(0,0)–(1,0)` is the (tie-broken) longest edge.
pub fn equilateral() -> TriMesh {
    TriMesh::single(
        Point2::new(0.5, 3f64.sqrt() / 2.0),
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
    )
    .expect("valid seed")
}

/// The `(0,0), (4,0), (4,3)` right triangle.
pub fn pythagorean() -> TriMesh {
    TriMesh::single(
        Point2::new(4.0, 0.0),
        Point2::new(4.0, 3.0),
        Point2::new(0.0, 0.0),
    )
    .expect("valid seed")
}

/// Right triangle with unit hypotenuse from `(0,0)` to `(1,0)` and smallest
/// angle `alpha_deg` at `(1,0)`.
pub fn right_triangle(alpha_deg: f64) -> TriMesh {
    let alpha = alpha_deg.to_radians();
    let beta = std::f64::consts::FRAC_PI_2 - alpha;
    let leg = alpha.sin();
    TriMesh::single(
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(leg * beta.cos(), leg * beta.sin()),
    )
    .expect("valid seed")
}

/// Isosceles triangle with unit legs, apex at the origin and base angles
/// `base_deg`. Its two altitude children are congruent right triangles.
pub fn isosceles(base_deg: f64) -> TriMesh {
    let (s, c) = base_deg.to_radians().sin_cos();
    TriMesh::single(
        Point2::new(0.0, 0.0),
        Point2::new(-c, -s),
        Point2::new(c, -s),
    )
    .expect("valid seed")
}

/// Triangle on the unit base `(0,0)–(1,0)` with the given base angles (degrees).
pub fn from_base_angles(at_origin_deg: f64, at_one_deg: f64) -> TriMesh {
    let (ta, tb) = (
        at_origin_deg.to_radians().tan(),
        at_one_deg.to_radians().tan(),
    );
    let x = tb / (ta + tb);
    TriMesh::single(
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(x, x * ta),
    )
    .expect("valid seed")
}

/// Two triangles sharing the unit base; only the lower one has it as its
/// longest edge, so one altitude bisection step leaves `(0.5, 0)` hanging.
pub fn hanging_pair() -> TriMesh {
    TriMesh::new(
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.2, 0.8),
            Point2::new(0.5, -0.3),
        ],
        vec![[0, 1, 2], [0, 3, 1]],
    )
    .expect("valid seed")
}
