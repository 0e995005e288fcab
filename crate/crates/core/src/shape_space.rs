//! The normalized shape space of triangles.
//!
//! Every similarity class of non-degenerate triangles has a unique
//! representative `z` in
//!
//! ```text
//! Σ = { z : 0 < Re z ≤ 1/2, Im z > 0, |z − 1| ≤ 1 }
//! ```
//!
//! obtained by placing the longest edge on `[0, 1]`, the third vertex in the
//! upper half-plane and the shortest edge at `0`. Right triangles form the
//! arc `Γ = { z ∈ Σ : |z − 1/2| = 1/2 }`, a geodesic of the upper half-plane.
//!
//! Altitude bisection acts on Σ through the two maps [`w_left`] and
//! [`w_right`]. Both send every shape onto Γ and fix Γ pointwise, which
//! [`ray_gamma_intersection`] checks independently by intersecting rays from
//! `0` and `1` with the circle.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Default tolerance for Σ and Γ membership.
pub const SIGMA_TOL: f64 = 1e-12;

/// Imaginary parts below this are treated as degenerate (flat) shapes.
pub const MIN_IM: f64 = 1e-14;

/// A point of Σ, i.e. a similarity class of triangles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapePoint {
    re: f64,
    im: f64,
}

impl ShapePoint {
    /// Checked constructor; the Σ constraints are tested with [`SIGMA_TOL`],
    /// and `Im z < MIN_IM` is rejected as a flat shape.
    pub fn new(re: f64, im: f64) -> Result<Self> {
        let z = Complex64::new(re, im);
        if !re.is_finite() || !im.is_finite() || im.abs() < MIN_IM {
            return Err(Error::DegenerateShape { re, im });
        }
        match sigma_violation(z, SIGMA_TOL) {
            None => Ok(ShapePoint { re, im }),
            Some(constraint) => Err(Error::OutsideShapeSpace { re, im, constraint }),
        }
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// `| |z − 1/2| − 1/2 |`, zero exactly on Γ.
    pub fn gamma_residual(&self) -> f64 {
        gamma_residual(self.to_complex())
    }

    /// Euclidean distance in the plane.
    pub fn dist(&self, other: &ShapePoint) -> f64 {
        (self.to_complex() - other.to_complex()).norm()
    }

    /// The point of Γ at angle `theta` (radians) on the circle `|z − 1/2| = 1/2`.
    /// Γ is traced by `theta ∈ [π/2, π)`.
    pub fn on_gamma(theta: f64) -> Result<Self> {
        Self::new((1.0 + theta.cos()) / 2.0, theta.sin() / 2.0)
    }
}

impl fmt::Display for ShapePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.re, self.im)
    }
}

impl From<ShapePoint> for Complex64 {
    fn from(z: ShapePoint) -> Self {
        z.to_complex()
    }
}

/// Name of the first Σ constraint violated by `z`, if any.
///
/// The closed constraints `Re z ≤ 1/2` and `|z − 1| ≤ 1` are relaxed by
/// `tol`; the open ones (`Re z > 0`, `Im z > 0`) are not.
pub fn sigma_violation(z: Complex64, tol: f64) -> Option<&'static str> {
    if !(z.re > 0.0) {
        Some("Re(z) > 0")
    } else if !(z.re <= 0.5 + tol) {
        Some("Re(z) <= 1/2")
    } else if !(z.im > 0.0) {
        Some("Im(z) > 0")
    } else if !((z - 1.0).norm() <= 1.0 + tol) {
        Some("|z - 1| <= 1")
    } else {
        None
    }
}

pub fn is_in_sigma(z: Complex64, tol: f64) -> bool {
    sigma_violation(z, tol).is_none()
}

pub fn gamma_residual(z: Complex64) -> f64 {
    ((z - 0.5).norm() - 0.5).abs()
}

pub fn is_on_gamma(z: Complex64, tol: f64) -> bool {
    is_in_sigma(z, tol) && gamma_residual(z) <= tol
}

/// Folds an arbitrary non-real point into Σ: conjugate into the upper
/// half-plane, then reflect across `Re = 1/2` with `w ↦ 1 − w̄`.
///
/// Both steps preserve the circle `|w − 1/2| = 1/2`, and correspond to
/// relabelling the triangle `{0, 1, w}` so that its shortest edge sits at `0`.
pub fn canonical_symmetry(w: Complex64) -> Result<ShapePoint> {
    if !w.re.is_finite() || !w.im.is_finite() || w.im.abs() < MIN_IM {
        return Err(Error::DegenerateShape { re: w.re, im: w.im });
    }
    fold(w)
}

/// The symmetry steps of [`canonical_symmetry`] without the flatness
/// guard, so that images of very thin (but valid) shapes stay representable.
fn fold(w: Complex64) -> Result<ShapePoint> {
    let mut w = if w.im < 0.0 { w.conj() } else { w };
    if w.re > 0.5 {
        w = 1.0 - w.conj();
    }
    match sigma_violation(w, SIGMA_TOL) {
        None if w.re.is_finite() && w.im.is_finite() => Ok(ShapePoint { re: w.re, im: w.im }),
        None => Err(Error::DegenerateShape { re: w.re, im: w.im }),
        Some(constraint) => Err(Error::OutsideShapeSpace {
            re: w.re,
            im: w.im,
            constraint,
        }),
    }
}

/// Unfolded left map, before [`canonical_symmetry`]. The first branch lands
/// in the lower half-plane for every `z ∈ Σ`.
pub fn w_left_raw(z: ShapePoint) -> Complex64 {
    let z = z.to_complex();
    if z.re <= z.im {
        (z + z.conj()) / (2.0 * z)
    } else {
        (z - z.conj()) / (2.0 * z)
    }
}

/// Unfolded right map, before [`canonical_symmetry`].
pub fn w_right_raw(z: ShapePoint) -> Complex64 {
    let z = z.to_complex();
    if 1.0 - z.re <= z.im {
        (z + z.conj() - 2.0) / (2.0 * (z - 1.0))
    } else {
        (z - z.conj()) / (2.0 * (z - 1.0))
    }
}

/// Shape of the left altitude-bisection child (the one keeping vertex `0`).
pub fn w_left(z: ShapePoint) -> ShapePoint {
    fold(w_left_raw(z)).expect("left child of a shape in Σ is a valid shape")
}

/// Shape of the right altitude-bisection child (the one keeping vertex `1`).
pub fn w_right(z: ShapePoint) -> ShapePoint {
    fold(w_right_raw(z)).expect("right child of a shape in Σ is a valid shape")
}

/// Endpoint of the unit segment a ray is issued from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RayOrigin {
    Zero,
    One,
}

impl RayOrigin {
    fn point(self) -> f64 {
        match self {
            RayOrigin::Zero => 0.0,
            RayOrigin::One => 1.0,
        }
    }
}

/// Intersection of the ray `origin + t (z − origin)`, `t > 0`, with the
/// circle `|w − 1/2| = 1/2`, folded into Σ.
///
/// With `p = origin − 1/2` and `d = z − origin`, the circle condition is
/// `|p|² + 2t Re(p d̄) + t² |d|² = 1/4`. Since `|p| = 1/2` one root is `t = 0`;
/// the other is `t = −2 Re(p d̄) / |d|²`.
pub fn ray_gamma_intersection(origin: RayOrigin, z: ShapePoint) -> Result<ShapePoint> {
    if z.im() < MIN_IM {
        return Err(Error::DegenerateShape {
            re: z.re(),
            im: z.im(),
        });
    }
    let o = Complex64::new(origin.point(), 0.0);
    let p = o - 0.5;
    let d = z.to_complex() - o;
    // quadratic a t² + b t + c = 0 with c = |p|² − 1/4 = 0
    let a = d.norm_sqr();
    let b = 2.0 * (p * d.conj()).re;
    let t = -b / a;
    fold(o + t * d)
}

/// Distance in the Poincaré upper half-plane,
/// `arccosh(1 + |z − w|² / (2 Im z Im w))`.
pub fn poincare_distance(z: Complex64, w: Complex64) -> Result<f64> {
    for im in [z.im, w.im] {
        if !(im > 0.0) {
            return Err(Error::Domain(im));
        }
    }
    let arg = 1.0 + (z - w).norm_sqr() / (2.0 * z.im * w.im);
    Ok(arg.acosh())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    L,
    R,
}

impl Letter {
    pub fn apply(self, z: ShapePoint) -> ShapePoint {
        match self {
            Letter::L => w_left(z),
            Letter::R => w_right(z),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::L => "L",
            Letter::R => "R",
        })
    }
}

/// A finite word over `{L, R}`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'L' => Ok(Letter::L),
                'R' => Ok(Letter::R),
                other => Err(Error::Parse(format!(
                    "word may only contain 'L' and 'R', found {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitTrace {
    pub start: ShapePoint,
    pub steps: Vec<(Letter, ShapePoint)>,
    /// Γ-residual of each step's point.
    pub residuals: Vec<f64>,
}

impl OrbitTrace {
    pub fn last(&self) -> ShapePoint {
        self.steps.last().map_or(self.start, |&(_, z)| z)
    }
}

pub fn orbit(z: ShapePoint, word: &Word) -> OrbitTrace {
    let mut steps = Vec::with_capacity(word.len());
    let mut residuals = Vec::with_capacity(word.len());
    let mut cur = z;
    for &letter in word.letters() {
        cur = letter.apply(cur);
        steps.push((letter, cur));
        residuals.push(cur.gamma_residual());
    }
    OrbitTrace {
        start: z,
        steps,
        residuals,
    }
}

/// Uniform sample of Σ by rejection from the box `(0, 1/2] × (0, 1]`.
pub fn sample_sigma<R: Rng + ?Sized>(rng: &mut R) -> ShapePoint {
    loop {
        let re = 0.5 - rng.random_range(0.0..0.5);
        let im = 1.0 - rng.random_range(0.0..1.0);
        if im < MIN_IM || (Complex64::new(re, im) - 1.0).norm() > 1.0 {
            continue;
        }
        if let Ok(z) = ShapePoint::new(re, im) {
            return z;
        }
    }
}

/// Parses `"a+bi"` / `"a-bi"` with decimal (optionally exponent) literals.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let err = || Error::Parse(format!("expected a complex number \"a+bi\", got {s:?}"));
    let body = s.strip_suffix('i').ok_or_else(err)?;
    // split at the last sign that is neither leading nor part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(err)?;
    let re: f64 = body[..split].parse().map_err(|_| err())?;
    let im_str = &body[split..];
    let im: f64 = match im_str {
        "+" => 1.0,
        "-" => -1.0,
        _ => im_str.parse().map_err(|_| err())?,
    };
    Ok(Complex64::new(re, im))
}
