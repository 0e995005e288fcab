//! Longest-edge altitude bisection (LEAB) of triangles.
//!
//! LEAB splits a triangle by dropping the altitude from the vertex opposite
//! its longest edge. This crate provides it two ways:
//!
//! * [`mesh`]: as a refinement operator on indexed planar triangulations,
//!   next to classical midpoint bisection for comparison, with conformity
//!   diagnostics and a JSON mesh format;
//! * [`shape_space`]: as a pair of maps on the normalized shape space of
//!   triangles, where every shape is sent in one step onto the arc of right
//!   triangles, and every right-triangle shape is fixed.
//!
//! [`analysis`] connects the two (normalization of triangles to shapes) and
//! checks the two-sided diameter bounds of repeated global refinement.
//! [`svg`] draws shape-space diagrams and meshes, and [`cli`] backs the
//! `leab` binary.
//!
//! ```
//! use leab::shape_space::{w_left, w_right, ShapePoint};
//!
//! let z = ShapePoint::new(0.25, 0.125).unwrap();
//! let left = w_left(z);
//! assert!((left.re() - 0.2).abs() < 1e-12 && (left.im() - 0.4).abs() < 1e-12);
//! assert!(w_right(z).gamma_residual() < 1e-12);
//! ```

pub mod analysis;
pub mod cli;
mod error;
pub mod mesh;
pub mod shape_space;
pub mod svg;

pub use error::{Error, Result};
pub use mesh::{Method, Point2, TriMesh};
pub use shape_space::ShapePoint;
