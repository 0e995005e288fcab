//! Mesh JSON: `{"vertices": [[x, y], ...], "triangles": [[i, j, k], ...], "level": k}`
//! with zero-based indices and an optional `level`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Point2, TriMesh};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshFile {
    pub vertices: Vec<[f64; 2]>,
    pub triangles: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
}

impl From<&TriMesh> for MeshFile {
    fn from(mesh: &TriMesh) -> Self {
        MeshFile {
            vertices: mesh.vertices.iter().map(|p| [p.x, p.y]).collect(),
            triangles: mesh.triangles.iter().map(|t| t.v).collect(),
            level: Some(mesh.level),
        }
    }
}

impl TryFrom<MeshFile> for TriMesh {
    type Error = Error;

    fn try_from(file: MeshFile) -> Result<Self> {
        let vertices = file
            .vertices
            .iter()
            .map(|&[x, y]| Point2::new(x, y))
            .collect();
        let mut mesh = TriMesh::new(vertices, file.triangles)?;
        let level = file.level.unwrap_or(0);
        mesh.level = level;
        for t in &mut mesh.triangles {
            t.level = level;
        }
        Ok(mesh)
    }
}

pub fn mesh_to_json(mesh: &TriMesh) -> String {
    serde_json::to_string(&MeshFile::from(mesh)).expect("mesh serialization cannot fail")
}

/// Parses and validates a mesh. `origin` only labels errors.
pub fn mesh_from_json(text: &str, origin: &Path) -> Result<TriMesh> {
    let file: MeshFile = serde_json::from_str(text).map_err(|source| Error::Json {
        path: origin.to_path_buf(),
        source,
    })?;
    TriMesh::try_from(file)
}

pub fn read_mesh(path: impl AsRef<Path>) -> Result<TriMesh> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    mesh_from_json(&text, path)
}

pub fn write_mesh(path: impl AsRef<Path>, mesh: &TriMesh) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, mesh_to_json(mesh) + "\n").map_err(|e| Error::io(path, e))
}
