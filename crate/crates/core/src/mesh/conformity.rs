use std::collections::HashMap;

use super::{Point2, TriMesh};

/// A vertex lying strictly inside an edge of a triangle it does not belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HangingNode {
    pub vertex: usize,
    pub triangle: usize,
    /// Local index of the vertex opposite the offending edge.
    pub edge: usize,
}

/// `1e-9 ×` the bounding-box diagonal.
pub fn default_hanging_tol(mesh: &TriMesh) -> f64 {
    1e-9 * mesh.bbox_diagonal()
}

/// All `(vertex, triangle, edge)` incidences where a vertex sits within `tol`
/// of the interior of an edge of a non-incident triangle. Sorted.
pub fn find_hanging_nodes(mesh: &TriMesh, tol: f64) -> Vec<HangingNode> {
    let Some((lo, hi)) = mesh.bounding_box() else {
        return Vec::new();
    };
    if mesh.triangles.is_empty() {
        return Vec::new();
    }
    let extent = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
    let per_side = ((mesh.triangles.len() as f64).sqrt().ceil() as i64).clamp(1, 4096);
    let cell = extent / per_side as f64;
    let key = |x: f64, y: f64| {
        (
            (((x - lo.x) / cell).floor() as i64).clamp(0, per_side),
            (((y - lo.y) / cell).floor() as i64).clamp(0, per_side),
        )
    };

    let mut grid: HashMap<(i64, i64), Vec<(usize, usize)>> = HashMap::new();
    for (tid, t) in mesh.triangles.iter().enumerate() {
        for opp in 0..3 {
            let (a, b) = t.edge(opp);
            let (pa, pb) = (mesh.vertices[a], mesh.vertices[b]);
            let (x0, y0) = key(pa.x.min(pb.x) - tol, pa.y.min(pb.y) - tol);
            let (x1, y1) = key(pa.x.max(pb.x) + tol, pa.y.max(pb.y) + tol);
            for gx in x0..=x1 {
                for gy in y0..=y1 {
                    grid.entry((gx, gy)).or_default().push((tid, opp));
                }
            }
        }
    }

    let mut used = vec![false; mesh.vertices.len()];
    for t in &mesh.triangles {
        for &k in &t.v {
            used[k] = true;
        }
    }

    let mut found = Vec::new();
    for (vid, &p) in mesh.vertices.iter().enumerate() {
        if !used[vid] {
            continue;
        }
        let Some(cands) = grid.get(&key(p.x, p.y)) else {
            continue;
        };
        for &(tid, opp) in cands {
            let t = &mesh.triangles[tid];
            if t.v.contains(&vid) {
                continue;
            }
            let (a, b) = t.edge(opp);
            if on_segment_interior(p, mesh.vertices[a], mesh.vertices[b], tol) {
                found.push(HangingNode {
                    vertex: vid,
                    triangle: tid,
                    edge: opp,
                });
            }
        }
    }
    found.sort_unstable();
    found
}

fn on_segment_interior(p: Point2, a: Point2, b: Point2, tol: f64) -> bool {
    let ab = b.sub(a);
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return false;
    }
    let t = p.sub(a).dot(ab) / len2;
    if !(t > 0.0 && t < 1.0) {
        return false;
    }
    let foot = a.add(ab.scale(t));
    p.dist(foot) <= tol && p.dist(a) > tol && p.dist(b) > tol
}
