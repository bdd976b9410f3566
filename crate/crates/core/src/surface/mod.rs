//! Intrinsic triangle-mesh surfaces: discrete metric, model-surface builders,
//! angle-defect curvature and file I/O.

mod builders;
mod curvature;
mod io;
mod mesh;

pub use builders::{build_flat_torus, build_hyperbolic_genus2, build_icosphere};
pub use curvature::{curvature_nonpositive, discrete_curvature, CurvatureField, CurvatureReport};
pub use io::{load_mesh, save_mesh};
pub use mesh::{FaceLayout, MeshBuilder, TriangleMesh};

use thiserror::Error;

/// Errors raised while constructing, validating or (de)serializing meshes.
#[derive(Debug, Error)]
pub enum MeshError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("face {face} references vertex {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { face: usize, vertex: usize, count: usize },
    #[error("face {face} repeats a vertex: [{a}, {b}, {c}]")]
    DegenerateFace { face: usize, a: usize, b: usize, c: usize },
    #[error("edge ({u}, {v}) lies on only one face: surface has boundary")]
    OpenSurface { u: usize, v: usize },
    #[error("edge ({u}, {v}) lies on {count} faces: non-manifold edge")]
    NonManifoldEdge { u: usize, v: usize, count: usize },
    #[error("directed edge ({u}, {v}) appears twice: inconsistent face orientations")]
    InconsistentOrientation { u: usize, v: usize },
    #[error("edge ({u}, {v}) has no length assigned")]
    MissingLength { u: usize, v: usize },
    #[error("edge ({u}, {v}) has non-positive or non-finite length {length}")]
    InvalidLength { u: usize, v: usize, length: f64 },
    #[error("face {face} violates the strict triangle inequality: lengths [{a}, {b}, {c}]")]
    TriangleInequality { face: usize, a: f64, b: f64, c: f64 },
    #[error("face adjacency graph is disconnected: {reachable} of {total} faces reachable")]
    Disconnected { reachable: usize, total: usize },
    #[error(
        "stored length {stored} of edge ({u}, {v}) disagrees with length {derived} derived \
         from vertex positions"
    )]
    EmbeddingMismatch { u: usize, v: usize, stored: f64, derived: f64 },
    #[error("mesh has no vertex positions, cannot {0}")]
    MissingPositions(&'static str),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
