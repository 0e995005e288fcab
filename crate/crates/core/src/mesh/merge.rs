use std::collections::HashMap;

use super::{Point2, TriMesh};

/// Uniform-grid spatial hash over a vertex table, used to reuse an existing
/// vertex when a split point lands (numerically) on top of it.
///
/// The cell size is `1e-9 ×` the bounding-box diagonal of the mesh the index
/// was built from. Merge radii never exceed it, so a 3×3 cell neighbourhood
/// holds every candidate.
#[derive(Debug, Clone)]
pub struct VertexIndex {
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<usize>>,
}

impl VertexIndex {
    pub fn build(mesh: &TriMesh) -> Self {
        let diag = mesh.bbox_diagonal();
        let cell = if diag > 0.0 { 1e-9 * diag } else { 1.0 };
        let mut index = VertexIndex {
            cell,
            buckets: HashMap::with_capacity(mesh.vertices.len()),
        };
        for (i, &p) in mesh.vertices.iter().enumerate() {
            index.add(p, i);
        }
        index
    }

    fn key(&self, p: Point2) -> (i64, i64) {
        (
            (p.x / self.cell).floor() as i64,
            (p.y / self.cell).floor() as i64,
        )
    }

    fn add(&mut self, p: Point2, id: usize) {
        let key = self.key(p);
        self.buckets.entry(key).or_default().push(id);
    }

    /// Closest vertex within `radius` of `p`, ties going to the smaller index.
    pub fn find(&self, vertices: &[Point2], p: Point2, radius: f64) -> Option<usize> {
        let radius = radius.min(self.cell);
        let (kx, ky) = self.key(p);
        let mut best: Option<(f64, usize)> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(ids) = self.buckets.get(&(kx + dx, ky + dy)) else {
                    continue;
                };
                for &id in ids {
                    let d = vertices[id].dist(p);
                    if d <= radius && best.is_none_or(|(bd, bid)| d < bd || (d == bd && id < bid)) {
                        best = Some((d, id));
                    }
                }
            }
        }
        best.map(|(_, id)| id)
    }

    /// Returns the id of an existing vertex within `radius` of `p`, or appends `p`.
    pub fn insert(&mut self, vertices: &mut Vec<Point2>, p: Point2, radius: f64) -> usize {
        if let Some(id) = self.find(vertices, p, radius) {
            return id;
        }
        vertices.push(p);
        let id = vertices.len() - 1;
        self.add(p, id);
        id
    }
}
