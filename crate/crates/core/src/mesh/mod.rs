//! Planar indexed triangulations and the two longest-edge split operators.
//!
//! [`Method::Leab`] drops the altitude from the vertex opposite the longest
//! edge; [`Method::Leb`] joins that vertex to the longest-edge midpoint.
//! Both produce a left and a right child. The left child keeps the
//! longest-edge endpoint adjacent to the shorter remaining edge (the endpoint
//! that normalization sends to `0`).

mod conformity;
mod io;
mod merge;
pub mod seeds;

use std::collections::HashSet;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use conformity::{default_hanging_tol, find_hanging_nodes, HangingNode};
pub use io::{mesh_from_json, mesh_to_json, read_mesh, write_mesh, MeshFile};
pub use merge::VertexIndex;

/// Triangles with `area < DEGENERACY_RATIO * diameter²` are rejected.
pub const DEGENERACY_RATIO: f64 = 1e-14;

/// Relative tolerance (on squared lengths) under which two edges count as equally long.
pub const EDGE_TIE_REL: f64 = 1e-12;

/// Split vertices closer than `MERGE_RATIO * parent diameter` to an
/// existing vertex reuse it.
pub const MERGE_RATIO: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }

    pub fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }

    pub fn scale(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        self.sub(o).norm()
    }

    pub fn midpoint(self, o: Point2) -> Point2 {
        Point2::new((self.x + o.x) / 2.0, (self.y + o.y) / 2.0)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex64) -> Self {
        Point2::new(z.re, z.im)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Point2::new(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Which split operator a refinement uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Longest-edge altitude bisection.
    Leab,
    /// Classical longest-edge (midpoint) bisection.
    Leb,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "leab" => Ok(Method::Leab),
            "leb" => Ok(Method::Leb),
            _ => Err(Error::Parse(format!(
                "unknown method {s:?} (expected leab or leb)"
            ))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Leab => "leab",
            Method::Leb => "leb",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Triangle {
    /// Vertex indices, counter-clockwise.
    pub v: [usize; 3],
    /// Index of the parent in the previous level.
    pub parent: Option<usize>,
    pub level: u32,
    pub side: Option<Side>,
}

impl Triangle {
    pub fn new(v: [usize; 3]) -> Self {
        Triangle {
            v,
            parent: None,
            level: 0,
            side: None,
        }
    }

    /// Local indices of the endpoints of the edge opposite local vertex `opp`.
    pub fn edge(&self, opp: usize) -> (usize, usize) {
        (self.v[(opp + 1) % 3], self.v[(opp + 2) % 3])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleMetrics {
    pub diameter: f64,
    /// Degrees.
    pub min_angle: f64,
    /// Degrees.
    pub max_angle: f64,
    pub area: f64,
}

/// Orientation-preserving or reflecting similarity `p ↦ [conj] (s e^{iθ} p + t)`.
///
/// `reflected` conjugates after the direct part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityTransform {
    pub scale: f64,
    pub rotation: f64,
    pub translation: Point2,
    pub reflected: bool,
}

impl SimilarityTransform {
    pub fn identity() -> Self {
        SimilarityTransform {
            scale: 1.0,
            rotation: 0.0,
            translation: Point2::default(),
            reflected: false,
        }
    }

    fn factor(&self) -> Complex64 {
        Complex64::from_polar(self.scale, self.rotation)
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        let w = self.factor() * p.to_complex() + self.translation.to_complex();
        Point2::from_complex(if self.reflected { w.conj() } else { w })
    }

    pub fn apply_inverse(&self, q: Point2) -> Point2 {
        let w = q.to_complex();
        let w = if self.reflected { w.conj() } else { w };
        Point2::from_complex((w - self.translation.to_complex()) / self.factor())
    }
}

pub fn signed_area(a: Point2, b: Point2, c: Point2) -> f64 {
    b.sub(a).cross(c.sub(a)) / 2.0
}

fn check_nondegenerate(p: &[Point2; 3]) -> Result<()> {
    let area = signed_area(p[0], p[1], p[2]).abs();
    let diam2 = (0..3)
        .map(|i| p[(i + 1) % 3].sub(p[(i + 2) % 3]).norm_sqr())
        .fold(0.0, f64::max);
    if !(area.is_finite() && diam2.is_finite()) || area < DEGENERACY_RATIO * diam2 || diam2 == 0.0 {
        return Err(Error::DegenerateTriangle { triangle: None });
    }
    Ok(())
}

/// Squared length of the edge opposite each local vertex.
fn edge_lengths_sqr(p: &[Point2; 3]) -> [f64; 3] {
    std::array::from_fn(|i| p[(i + 1) % 3].sub(p[(i + 2) % 3]).norm_sqr())
}

/// Local index of the vertex opposite the longest edge. Edges within
/// [`EDGE_TIE_REL`] of each other tie, and the smallest index wins.
pub fn longest_edge_of(p: &[Point2; 3]) -> Result<usize> {
    check_nondegenerate(p)?;
    let len = edge_lengths_sqr(p);
    let max = len.iter().copied().fold(0.0, f64::max);
    Ok((0..3)
        .find(|&i| len[i] >= max * (1.0 - EDGE_TIE_REL))
        .expect("some edge attains the maximum"))
}

/// For a longest edge opposite `opp`, the endpoint normalization attaches to `0`:
/// the one joined to the opposite vertex by the shorter edge, or the smaller
/// local index on a tie.
pub(crate) fn zero_endpoint(p: &[Point2; 3], opp: usize) -> usize {
    let i1 = (opp + 1) % 3;
    let i2 = (opp + 2) % 3;
    let d1 = p[opp].sub(p[i1]).norm_sqr();
    let d2 = p[opp].sub(p[i2]).norm_sqr();
    let tied = (d1 - d2).abs() <= EDGE_TIE_REL * d1.max(d2);
    if tied {
        i1.min(i2)
    } else if d1 < d2 {
        i1
    } else {
        i2
    }
}

/// Orthogonal projection of `c` onto the line `ab`, required to land inside
/// the segment (which it does whenever `ab` is the longest edge).
pub fn altitude_foot(a: Point2, b: Point2, c: Point2) -> Result<Point2> {
    let ab = b.sub(a);
    let len2 = ab.norm_sqr();
    if !(len2 > 0.0 && len2.is_finite()) {
        return Err(Error::DegenerateTriangle { triangle: None });
    }
    let t = c.sub(a).dot(ab) / len2;
    if !(t > -1e-12 && t < 1.0 + 1e-12) {
        return Err(Error::NotLongestEdge { t });
    }
    Ok(a.add(ab.scale(t)))
}

/// Interior angles in degrees, at each local vertex, by the law of cosines.
pub fn angles_deg(p: &[Point2; 3]) -> [f64; 3] {
    let len2 = edge_lengths_sqr(p);
    let len = len2.map(f64::sqrt);
    std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let cos = (len2[j] + len2[k] - len2[i]) / (2.0 * len[j] * len[k]);
        cos.clamp(-1.0, 1.0).acos().to_degrees()
    })
}

pub fn triangle_metrics_of(p: &[Point2; 3]) -> Result<TriangleMetrics> {
    check_nondegenerate(p)?;
    let diameter = edge_lengths_sqr(p)
        .iter()
        .copied()
        .fold(0.0, f64::max)
        .sqrt();
    let angles = angles_deg(p);
    Ok(TriangleMetrics {
        diameter,
        min_angle: angles.iter().copied().fold(f64::INFINITY, f64::min),
        max_angle: angles.iter().copied().fold(0.0, f64::max),
        area: signed_area(p[0], p[1], p[2]).abs(),
    })
}

/// Where a triangle is cut and how the children are labelled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitPlan {
    /// Local vertex opposite the longest edge.
    pub apex: usize,
    /// New point on the longest edge.
    pub point: Point2,
    /// Local index of the longest-edge endpoint kept by the left child.
    pub left_end: usize,
}

pub fn plan_split(p: &[Point2; 3], method: Method) -> Result<SplitPlan> {
    let apex = longest_edge_of(p)?;
    let (a, b) = (p[(apex + 1) % 3], p[(apex + 2) % 3]);
    let point = match method {
        Method::Leab => altitude_foot(a, b, p[apex])?,
        Method::Leb => a.midpoint(b),
    };
    Ok(SplitPlan {
        apex,
        point,
        left_end: zero_endpoint(p, apex),
    })
}

/// Vertex triples (global indices) of the left and right children, both
/// counter-clockwise when the parent is.
fn child_triples(v: [usize; 3], plan: &SplitPlan, new_vertex: usize) -> ([usize; 3], [usize; 3]) {
    let r = v[plan.apex];
    let p = v[(plan.apex + 1) % 3];
    let q = v[(plan.apex + 2) % 3];
    let first = [r, p, new_vertex];
    let second = [r, new_vertex, q];
    if plan.left_end == (plan.apex + 1) % 3 {
        (first, second)
    } else {
        (second, first)
    }
}

/// An indexed planar triangulation at some refinement level.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TriMesh {
    pub vertices: Vec<Point2>,
    pub triangles: Vec<Triangle>,
    pub level: u32,
}

impl TriMesh {
    /// Validates the input and reorients clockwise triangles.
    pub fn new(vertices: Vec<Point2>, triples: Vec<[usize; 3]>) -> Result<Self> {
        for (i, p) in vertices.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFiniteVertex(i));
            }
        }
        let mut seen = HashSet::with_capacity(vertices.len());
        for (i, p) in vertices.iter().enumerate() {
            // +0.0 and -0.0 are the same point
            let key = ((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits());
            if !seen.insert(key) {
                let j = vertices.iter().position(|q| q == p).unwrap_or(i);
                return Err(Error::DuplicateVertex(j, i));
            }
        }
        let mut triangles = Vec::with_capacity(triples.len());
        for (id, mut v) in triples.into_iter().enumerate() {
            if let Some(&bad) = v.iter().find(|&&k| k >= vertices.len()) {
                return Err(Error::VertexOutOfRange {
                    triangle: id,
                    vertex: bad,
                    len: vertices.len(),
                });
            }
            let p = v.map(|k| vertices[k]);
            check_nondegenerate(&p).map_err(|e| e.with_triangle(id))?;
            if signed_area(p[0], p[1], p[2]) < 0.0 {
                v.swap(1, 2);
            }
            triangles.push(Triangle::new(v));
        }
        Ok(TriMesh {
            vertices,
            triangles,
            level: 0,
        })
    }

    pub fn single(a: Point2, b: Point2, c: Point2) -> Result<Self> {
        TriMesh::new(vec![a, b, c], vec![[0, 1, 2]])
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn corners(&self, tid: usize) -> [Point2; 3] {
        self.triangles[tid].v.map(|k| self.vertices[k])
    }

    pub fn longest_edge(&self, tid: usize) -> Result<usize> {
        longest_edge_of(&self.corners(tid)).map_err(|e| e.with_triangle(tid))
    }

    pub fn triangle_metrics(&self, tid: usize) -> Result<TriangleMetrics> {
        triangle_metrics_of(&self.corners(tid)).map_err(|e| e.with_triangle(tid))
    }

    /// Axis-aligned bounding box `(min, max)` of the vertex table.
    pub fn bounding_box(&self) -> Option<(Point2, Point2)> {
        let first = *self.vertices.first()?;
        Some(self.vertices.iter().fold((first, first), |(lo, hi), p| {
            (
                Point2::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point2::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        }))
    }

    pub fn bbox_diagonal(&self) -> f64 {
        self.bounding_box().map_or(0.0, |(lo, hi)| hi.dist(lo))
    }

    /// Splits triangle `tid`, inserting (or reusing) the split vertex, and
    /// returns the `(left, right)` children. The mesh's triangle list is not
    /// modified.
    pub fn split(
        &mut self,
        tid: usize,
        method: Method,
        index: &mut VertexIndex,
    ) -> Result<(Triangle, Triangle)> {
        let corners = self.corners(tid);
        let plan = plan_split(&corners, method).map_err(|e| e.with_triangle(tid))?;
        let diameter = edge_lengths_sqr(&corners)
            .iter()
            .copied()
            .fold(0.0, f64::max)
            .sqrt();
        let vid = index.insert(&mut self.vertices, plan.point, MERGE_RATIO * diameter);
        let parent = &self.triangles[tid];
        let (l, r) = child_triples(parent.v, &plan, vid);
        let child = |v: [usize; 3], side| Triangle {
            v,
            parent: Some(tid),
            level: parent.level + 1,
            side: Some(side),
        };
        let (left, right) = (child(l, Side::Left), child(r, Side::Right));
        for c in [&left, &right] {
            check_nondegenerate(&c.v.map(|k| self.vertices[k]))
                .map_err(|e| e.with_triangle(tid))?;
        }
        Ok((left, right))
    }

    /// Altitude bisection of one triangle; see [`TriMesh::split`].
    pub fn leab_split(&mut self, tid: usize) -> Result<(Triangle, Triangle)> {
        let mut index = VertexIndex::build(self);
        self.split(tid, Method::Leab, &mut index)
    }

    /// Midpoint bisection of one triangle; see [`TriMesh::split`].
    pub fn leb_split(&mut self, tid: usize) -> Result<(Triangle, Triangle)> {
        let mut index = VertexIndex::build(self);
        self.split(tid, Method::Leb, &mut index)
    }

    /// Returns true when both meshes hold the same vertices and vertex triples.
    pub fn same_geometry(&self, other: &TriMesh) -> bool {
        self.vertices == other.vertices
            && self.triangles.len() == other.triangles.len()
            && self
                .triangles
                .iter()
                .zip(&other.triangles)
                .all(|(a, b)| a.v == b.v)
    }
}

/// One global refinement step: every triangle is split, children appended
/// in parent order, left before right.
pub fn refine_step(mesh: &TriMesh, method: Method) -> Result<TriMesh> {
    let mut work = mesh.clone();
    let mut index = VertexIndex::build(&work);
    let mut children = Vec::with_capacity(2 * mesh.triangles.len());
    for tid in 0..mesh.triangles.len() {
        let (l, r) = work.split(tid, method, &mut index)?;
        children.push(l);
        children.push(r);
    }
    Ok(TriMesh {
        vertices: work.vertices,
        triangles: children,
        level: mesh.level + 1,
    })
}

/// Levels `0..=steps` of global refinement.
pub fn refine_global(mesh: &TriMesh, steps: usize, method: Method) -> Result<Vec<TriMesh>> {
    let mut levels = Vec::with_capacity(steps + 1);
    levels.push(mesh.clone());
    for _ in 0..steps {
        let next = refine_step(levels.last().expect("nonempty"), method)?;
        levels.push(next);
    }
    Ok(levels)
}
