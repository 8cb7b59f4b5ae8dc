//! Triangle-faced convex polyhedra inscribed in the unit sphere.
//!
//! Builds Kitrick's (`60n²` faces) and Clinton's (`20n²` faces) polyhedra,
//! measures the edge ratio `η = max edge / min edge`, validates convexity,
//! and evaluates the lower bounds that show `liminf η = 2 sin 36°`.
//!
//! Geometry is generic over [`Real`] (`f32` or `f64`); the aliases below fix
//! the scalar to `f64`.

pub mod bounds;
pub mod clinton;
pub mod error;
pub mod kitrick;
pub mod mesh;
pub mod meshio;
pub mod report;
pub mod scalar;
pub mod solids;
mod spatial;
pub mod sphgeo;
pub mod vec3;

pub use error::{Error, Result};
pub use mesh::{EdgeKind, EdgeTag, MeshInfo, VertexLabel};
pub use scalar::Real;

pub type Vec3 = vec3::Vec3<f64>;
pub type UnitVec = sphgeo::UnitVec<f64>;
pub type Frame = sphgeo::Frame<f64>;
pub type TriangleMesh = mesh::TriangleMesh<f64>;
pub type EdgeRecord = mesh::EdgeRecord<f64>;
pub type EtaMeasure = mesh::EtaMeasure<f64>;
pub type ValidationResult = mesh::ValidationResult<f64>;
pub type BaseTriangleConstants = kitrick::BaseTriangleConstants<f64>;
pub type ApexTriangle = bounds::ApexTriangle<f64>;
pub type BoundChain = bounds::BoundChain<f64>;
pub use report::UniformityReport;
