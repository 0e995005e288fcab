//! Minimal SVG emitters for shape-space diagrams and meshes.
//!
//! All drawings use a fixed `700 × 700` viewBox with the y-axis flipped so
//! that `Im z` (or `y`) increases upward.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::mesh::TriMesh;

pub const CANVAS: f64 = 700.0;

/// World window `[X0, X0 + SPAN] × [Y0, Y0 + SPAN]` of the shape-space plot.
/// It holds Σ and the whole upper half of the circle `|z − 1/2| = 1/2`.
const X0: f64 = -0.05;
const Y0: f64 = -0.1;
const SPAN: f64 = 1.1;

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPoint {
    pub z: Complex64,
    pub label: String,
}

impl LabeledPoint {
    pub fn new(z: Complex64, label: impl Into<String>) -> Self {
        LabeledPoint {
            z,
            label: label.into(),
        }
    }
}

struct Frame {
    x0: f64,
    y0: f64,
    scale: f64,
}

impl Frame {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            (x - self.x0) * self.scale,
            CANVAS - (y - self.y0) * self.scale,
        )
    }

    fn polyline(&self, pts: impl IntoIterator<Item = (f64, f64)>) -> String {
        let mut s = String::new();
        for (i, (x, y)) in pts.into_iter().enumerate() {
            let (px, py) = self.map(x, y);
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{px:.3},{py:.3}");
        }
        s
    }
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {CANVAS} {CANVAS}" width="{CANVAS}" height="{CANVAS}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn arc(center: (f64, f64), r: f64, from_deg: f64, to_deg: f64) -> Vec<(f64, f64)> {
    const SAMPLES: usize = 100;
    (0..=SAMPLES)
        .map(|i| {
            let t = (from_deg + (to_deg - from_deg) * i as f64 / SAMPLES as f64) * PI / 180.0;
            (center.0 + r * t.cos(), center.1 + r * t.sin())
        })
        .collect()
}

/// Σ's boundary, the geodesic Γ, the branch lines of the two maps, and the
/// given points.
pub fn shape_space_svg(points: &[LabeledPoint]) -> String {
    let f = Frame {
        x0: X0,
        y0: Y0,
        scale: CANVAS / SPAN,
    };
    let mut out = String::new();
    header(&mut out);

    // Σ boundary: base, Re z = 1/2, arc |z - 1| = 1
    let mut boundary = vec![(0.0, 0.0), (0.5, 0.0)];
    boundary.extend(arc((1.0, 0.0), 1.0, 120.0, 180.0));
    let _ = writeln!(
        out,
        r#"<polygon id="sigma" points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        f.polyline(boundary)
    );

    // Γ inside Σ, and its mirror image dotted
    let _ = writeln!(
        out,
        r#"<polyline id="gamma" points="{}" fill="none" stroke="blue" stroke-width="3"/>"#,
        f.polyline(arc((0.5, 0.0), 0.5, 90.0, 180.0))
    );
    let _ = writeln!(
        out,
        r#"<polyline id="gamma-mirror" points="{}" fill="none" stroke="blue" stroke-width="2" stroke-dasharray="2,4"/>"#,
        f.polyline(arc((0.5, 0.0), 0.5, 0.0, 90.0))
    );

    // branch boundaries: Re z = Im z (left map), 1 - Re z = Im z (right map)
    let x_arc = 1.0 - 0.5f64.sqrt();
    for (id, a, b) in [
        ("branch-left", (0.0, 0.0), (0.5, 0.5)),
        ("branch-right", (x_arc, 1.0 - x_arc), (0.5, 0.5)),
    ] {
        let _ = writeln!(
            out,
            r#"<polyline id="{id}" points="{}" fill="none" stroke="gray" stroke-width="1.5" stroke-dasharray="8,6"/>"#,
            f.polyline([a, b])
        );
    }

    let (lx, ly) = f.map(0.28, 0.78);
    let _ = writeln!(
        out,
        r#"<text x="{lx:.3}" y="{ly:.3}" font-size="22">Σ</text>"#
    );
    let (gx, gy) = f.map(0.42, 0.52);
    let _ = writeln!(
        out,
        r#"<text x="{gx:.3}" y="{gy:.3}" font-size="22" fill="blue">Γ</text>"#
    );

    for p in points {
        let (px, py) = f.map(p.z.re, p.z.im);
        let _ = writeln!(
            out,
            r#"<circle class="point" cx="{px:.3}" cy="{py:.3}" r="5" fill="red"/>"#
        );
        if !p.label.is_empty() {
            let _ = writeln!(
                out,
                r#"<text x="{:.3}" y="{:.3}" font-size="16" fill="red">{}</text>"#,
                px + 8.0,
                py - 8.0,
                escape(&p.label)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Every triangle of the mesh as a black outlined polygon, scaled to fit.
pub fn mesh_svg(mesh: &TriMesh) -> String {
    let (lo, hi) = mesh
        .bounding_box()
        .unwrap_or((Default::default(), Default::default()));
    let extent = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
    let margin = 0.05 * extent;
    let f = Frame {
        x0: lo.x - margin,
        y0: lo.y - margin,
        scale: CANVAS / (extent + 2.0 * margin),
    };
    let mut out = String::new();
    header(&mut out);
    for tid in 0..mesh.len() {
        let pts = mesh.corners(tid).map(|p| (p.x, p.y));
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="none" stroke="black" stroke-width="1"/>"#,
            f.polyline(pts)
        );
    }
    out.push_str("</svg>\n");
    out
}
