//! Bridges between mesh geometry and shape space, and the quantitative
//! checks on refinement sequences: two-sided diameter bounds, right-triangle
//! persistence, similarity-class counts and heterogeneity.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mesh::{
    angles_deg, longest_edge_of, zero_endpoint, Point2, SimilarityTransform, TriMesh,
};
use crate::shape_space::{w_left, w_right, ShapePoint};

/// Relative slack for the diameter bounds and the angle-halving check.
pub const BOUND_SLACK: f64 = 1e-9;

/// Default clustering radius for [`similarity_class_count`].
pub const CLASS_TOL: f64 = 1e-8;

/// Header of the per-level stats CSV.
pub const STATS_CSV_HEADER: &str =
    "k,n,min_diam,max_diam,min_angle_deg,max_angle_deg,heterogeneity,bound_lower,bound_upper,pass";

/// Maps a triangle to its shape-space representative.
///
/// The longest edge goes to `[0, 1]` with its shorter-neighbour endpoint at
/// `0`, then the image is conjugated if the third vertex fell below the
/// axis. The returned transform sends `A, B, C` onto `{0, 1, z}`.
pub fn normalize_triangle(
    a: Point2,
    b: Point2,
    c: Point2,
) -> Result<(ShapePoint, SimilarityTransform)> {
    let p = [a, b, c];
    let apex = longest_edge_of(&p)?;
    let zero = zero_endpoint(&p, apex);
    let one = 3 - apex - zero;
    let (o, e) = (p[zero].to_complex(), p[one].to_complex());
    let factor = 1.0 / (e - o);
    let translation = -o * factor;
    let w = factor * p[apex].to_complex() + translation;
    let reflected = w.im < 0.0;
    let z = if reflected { w.conj() } else { w };
    let transform = SimilarityTransform {
        scale: factor.norm(),
        rotation: factor.arg(),
        translation: Point2::from_complex(translation),
        reflected,
    };
    Ok((ShapePoint::from_complex(z)?, transform))
}

pub fn normalize_corners(p: &[Point2; 3]) -> Result<ShapePoint> {
    normalize_triangle(p[0], p[1], p[2]).map(|(z, _)| z)
}

/// `(|shape(left child) − W_L(shape)|, |shape(right child) − W_R(shape)|)`
/// for one altitude bisection of the triangle `A B C`.
pub fn commutation_check(a: Point2, b: Point2, c: Point2) -> Result<(f64, f64)> {
    let mut mesh = TriMesh::single(a, b, c)?;
    let parent = normalize_corners(&mesh.corners(0))?;
    let (left, right) = mesh.leab_split(0)?;
    let shape = |v: [usize; 3]| normalize_corners(&v.map(|k| mesh.vertices[k]));
    let left_res = shape(left.v)?.dist(&w_left(parent));
    let right_res = shape(right.v)?.dist(&w_right(parent));
    Ok((left_res, right_res))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelStats {
    pub k: u32,
    pub n: usize,
    pub min_diam: f64,
    pub max_diam: f64,
    /// Degrees.
    pub min_angle: f64,
    /// Degrees.
    pub max_angle: f64,
    /// `max_diam / min_diam`.
    pub heterogeneity: f64,
}

pub fn level_stats(mesh: &TriMesh) -> Result<LevelStats> {
    if mesh.is_empty() {
        return Err(Error::EmptyMesh);
    }
    let mut s = LevelStats {
        k: mesh.level,
        n: mesh.len(),
        min_diam: f64::INFINITY,
        max_diam: 0.0,
        min_angle: f64::INFINITY,
        max_angle: 0.0,
        heterogeneity: 0.0,
    };
    for tid in 0..mesh.len() {
        let m = mesh.triangle_metrics(tid)?;
        s.min_diam = s.min_diam.min(m.diameter);
        s.max_diam = s.max_diam.max(m.diameter);
        s.min_angle = s.min_angle.min(m.min_angle);
        s.max_angle = s.max_angle.max(m.max_angle);
    }
    s.heterogeneity = s.max_diam / s.min_diam;
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundViolation {
    pub k: usize,
    pub triangle: usize,
    pub observed: f64,
    pub bound: f64,
    pub kind: BoundKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelBound {
    pub k: usize,
    pub n: usize,
    pub lower: f64,
    pub upper: f64,
    pub observed_min: f64,
    pub observed_max: f64,
    pub pass: bool,
    pub first_violation: Option<BoundViolation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    /// Minimal interior angle of level 0, degrees.
    pub alpha0: f64,
    /// Minimal interior angle of level 1, degrees.
    pub alpha1: f64,
    /// Smallest diameter in level 1.
    pub c_min: f64,
    /// Largest diameter in level 1.
    pub c_max: f64,
    /// One record per level `k ≥ 1`.
    pub levels: Vec<LevelBound>,
    /// `α₁ ≥ α₀ / 2` (with slack).
    pub angle_halving: bool,
    pub pass: bool,
}

impl BoundsReport {
    pub fn first_violation(&self) -> Option<BoundViolation> {
        self.levels.iter().find_map(|l| l.first_violation)
    }

    pub fn level(&self, k: usize) -> Option<&LevelBound> {
        self.levels.iter().find(|l| l.k == k)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "alpha0 = {:.12} deg, alpha1 = {:.12} deg, alpha1 >= alpha0/2: {}",
            self.alpha0, self.alpha1, self.angle_halving
        );
        let _ = writeln!(out, "c = {:.15e}, C = {:.15e}", self.c_min, self.c_max);
        let _ = writeln!(
            out,
            "{:>3} {:>8} {:>22} {:>22} {:>22} {:>22}  pass",
            "k", "n", "lower", "min_diam", "max_diam", "upper"
        );
        for l in &self.levels {
            let _ = writeln!(
                out,
                "{:>3} {:>8} {:>22.15e} {:>22.15e} {:>22.15e} {:>22.15e}  {}",
                l.k, l.n, l.lower, l.observed_min, l.observed_max, l.upper, l.pass
            );
        }
        if let Some(v) = self.first_violation() {
            let _ = writeln!(
                out,
                "first violation: level {} triangle {} diameter {:.17e} {} bound {:.17e}",
                v.k,
                v.triangle,
                v.observed,
                match v.kind {
                    BoundKind::Lower => "below lower",
                    BoundKind::Upper => "above upper",
                },
                v.bound
            );
        }
        let _ = writeln!(out, "overall: {}", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}

/// Incremental form of [`verify_bounds`]: reads `c`, `C`, `α₀`, `α₁` from
/// the first two levels, then checks one level at a time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsChecker {
    pub alpha0: f64,
    pub alpha1: f64,
    pub c_min: f64,
    pub c_max: f64,
}

impl BoundsChecker {
    pub fn new(level0: &TriMesh, level1: &TriMesh) -> Result<Self> {
        let s0 = level_stats(level0)?;
        let s1 = level_stats(level1)?;
        Ok(BoundsChecker {
            alpha0: s0.min_angle,
            alpha1: s1.min_angle,
            c_min: s1.min_diam,
            c_max: s1.max_diam,
        })
    }

    /// `(c sin(α₁)^{k−1}, C cos(α₁)^{k−1})`.
    pub fn bounds(&self, k: usize) -> (f64, f64) {
        let (sin1, cos1) = self.alpha1.to_radians().sin_cos();
        let e = k as i32 - 1;
        (self.c_min * sin1.powi(e), self.c_max * cos1.powi(e))
    }

    pub fn check_level(&self, k: usize, mesh: &TriMesh) -> Result<LevelBound> {
        let (lower, upper) = self.bounds(k);
        let mut rec = LevelBound {
            k,
            n: mesh.len(),
            lower,
            upper,
            observed_min: f64::INFINITY,
            observed_max: 0.0,
            pass: true,
            first_violation: None,
        };
        for tid in 0..mesh.len() {
            let d = mesh.triangle_metrics(tid)?.diameter;
            rec.observed_min = rec.observed_min.min(d);
            rec.observed_max = rec.observed_max.max(d);
            let violation = if d < lower * (1.0 - BOUND_SLACK) {
                Some((lower, BoundKind::Lower))
            } else if d > upper * (1.0 + BOUND_SLACK) {
                Some((upper, BoundKind::Upper))
            } else {
                None
            };
            if let Some((bound, kind)) = violation {
                rec.pass = false;
                rec.first_violation.get_or_insert(BoundViolation {
                    k,
                    triangle: tid,
                    observed: d,
                    bound,
                    kind,
                });
            }
        }
        Ok(rec)
    }

    pub fn angle_halving(&self) -> bool {
        self.alpha1 >= self.alpha0 / 2.0 - BOUND_SLACK
    }

    pub fn report(&self, levels: Vec<LevelBound>) -> BoundsReport {
        let angle_halving = self.angle_halving();
        BoundsReport {
            alpha0: self.alpha0,
            alpha1: self.alpha1,
            c_min: self.c_min,
            c_max: self.c_max,
            pass: angle_halving && levels.iter().all(|r| r.pass),
            levels,
            angle_halving,
        }
    }
}

/// Checks `c sin(α₁)^{k−1} ≤ diam(T) ≤ C cos(α₁)^{k−1}` for every triangle
/// of every level `k ≥ 1`, with `c`, `C`, `α₁` read from level 1 and `α₀`
/// from level 0. `levels[k]` is taken to be level `k`.
pub fn verify_bounds(levels: &[TriMesh]) -> Result<BoundsReport> {
    if levels.len() < 2 {
        return Err(Error::InsufficientLevels {
            needed: 2,
            got: levels.len(),
        });
    }
    let checker = BoundsChecker::new(&levels[0], &levels[1])?;
    let records = levels
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, m)| checker.check_level(k, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(checker.report(records))
}

/// True iff every triangle has an angle within `tol_deg` of 90° lying
/// opposite its longest edge.
pub fn right_triangle_check(mesh: &TriMesh, tol_deg: f64) -> bool {
    (0..mesh.len()).all(|tid| {
        let p = mesh.corners(tid);
        let Ok(longest) = longest_edge_of(&p) else {
            return false;
        };
        (angles_deg(&p)[longest] - 90.0).abs() <= tol_deg
    })
}

/// Number of similarity classes in the mesh: normalized shapes linked
/// whenever they are within `tol` of each other (single linkage).
pub fn similarity_class_count(mesh: &TriMesh, tol: f64) -> Result<usize> {
    let shapes = (0..mesh.len())
        .map(|tid| normalize_corners(&mesh.corners(tid)).map_err(|e| e.with_triangle(tid)))
        .collect::<Result<Vec<_>>>()?;
    Ok(count_clusters(&shapes, tol))
}

pub(crate) fn count_clusters(shapes: &[ShapePoint], tol: f64) -> usize {
    let cell = if tol > 0.0 { tol } else { 1.0 };
    let key = |z: Complex64| ((z.re / cell).floor() as i64, (z.im / cell).floor() as i64);
    let mut parent: Vec<usize> = (0..shapes.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, z) in shapes.iter().enumerate() {
        let (kx, ky) = key(z.to_complex());
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(ids) = grid.get(&(kx + dx, ky + dy)) else {
                    continue;
                };
                for &j in ids {
                    if shapes[j].dist(z) <= tol.max(0.0) {
                        let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                        if ri != rj {
                            parent[ri.max(rj)] = ri.min(rj);
                        }
                    }
                }
            }
        }
        grid.entry((kx, ky)).or_default().push(i);
    }
    (0..shapes.len())
        .filter(|&i| root(&mut parent, i) == i)
        .count()
}

/// `max_diam / min_diam` for each level `k ≥ 1`; entry `i` is level `i + 1`.
///
/// When the two first-level children are congruent (equilateral or isosceles
/// seeds) this grows like `cot(α₁)^(k-1)`. A right seed already splits
/// unevenly at level 1, giving `cot(α₁)^k`.
pub fn heterogeneity_ratio(levels: &[TriMesh]) -> Result<Vec<f64>> {
    levels
        .iter()
        .skip(1)
        .map(|m| level_stats(m).map(|s| s.heterogeneity))
        .collect()
}

/// One CSV row per level. Bound columns are filled from `report` for
/// levels `k ≥ 1` and left empty otherwise.
pub fn stats_csv(stats: &[LevelStats], report: Option<&BoundsReport>) -> String {
    let mut out = String::from(STATS_CSV_HEADER);
    out.push('\n');
    for s in stats {
        let bound = report.and_then(|r| r.level(s.k as usize));
        let (lower, upper, pass) = match bound {
            Some(b) => (b.lower.to_string(), b.upper.to_string(), b.pass.to_string()),
            None => (String::new(), String::new(), String::new()),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            s.k,
            s.n,
            s.min_diam,
            s.max_diam,
            s.min_angle,
            s.max_angle,
            s.heterogeneity,
            lower,
            upper,
            pass
        );
    }
    out
}
