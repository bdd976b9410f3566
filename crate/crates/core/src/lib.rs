//! Certification of universal tightness for S¹-invariant curl eigenfields.
//!
//! The pipeline runs on intrinsic triangle meshes (combinatorics plus edge
//! lengths, no embedding required): assemble the cotangent Laplace-Beltrami
//! operator, solve for the low spectrum, decompose eigenfunctions into nodal
//! domains with their dividing curves, lift eigenfunctions to S¹-invariant
//! Beltrami forms on the product, and evaluate the Giroux dividing-set
//! criteria together with the volume-curvature bounds. A companion 3-torus
//! module verifies the Beltrami equation and characteristic-surface topology
//! directly on periodic grids.

pub mod contact;
pub mod nodal;
pub mod spectral;
pub mod surface;
pub mod torus3;

pub use surface::{CurvatureField, TriangleMesh};
