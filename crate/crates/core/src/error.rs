use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A complex number that does not describe a triangle (real, or too close to the real axis).
    #[error("degenerate shape {re}{im:+}i: point is on (or numerically at) the real axis")]
    DegenerateShape { re: f64, im: f64 },

    #[error("point {re}{im:+}i is outside the shape space: violates {constraint}")]
    OutsideShapeSpace {
        re: f64,
        im: f64,
        constraint: &'static str,
    },

    #[error("degenerate triangle{}", fmt_triangle(.triangle))]
    DegenerateTriangle { triangle: Option<usize> },

    #[error("altitude foot parameter {t} is outside (0, 1): the chosen edge is not the longest")]
    NotLongestEdge { t: f64 },

    #[error("triangle {triangle} references vertex {vertex}, but the mesh has {len} vertices")]
    VertexOutOfRange {
        triangle: usize,
        vertex: usize,
        len: usize,
    },

    #[error("vertex {0} has a non-finite coordinate")]
    NonFiniteVertex(usize),

    #[error("vertices {0} and {1} are duplicates")]
    DuplicateVertex(usize, usize),

    #[error("mesh has no triangles")]
    EmptyMesh,

    #[error("need at least {needed} refinement levels, got {got}")]
    InsufficientLevels { needed: usize, got: usize },

    #[error("hyperbolic distance needs points in the upper half-plane (got Im = {0})")]
    Domain(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn fmt_triangle(t: &Option<usize>) -> String {
    match t {
        Some(id) => format!(" (triangle {id})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Attach a triangle id to a degeneracy error raised without one.
    pub(crate) fn with_triangle(self, id: usize) -> Self {
        match self {
            Error::DegenerateTriangle { triangle: None } => {
                Error::DegenerateTriangle { triangle: Some(id) }
            }
            other => other,
        }
    }
}
