//! Lorentz-Minkowski linear algebra, spacelike meshes and the residual
//! evaluators used as correctness oracles throughout the crate.

pub mod curvature;
pub mod graph;
pub mod mesh;
pub mod vector;

pub use curvature::{eql_residual, max_abs_over, mean_curvature_field, mesh_mean_curvature, CurvatureField};
pub use graph::{graph_q_residual, q_operator, GraphSample, Jet};
pub use mesh::{grid_triangles, SurfaceMesh};
pub use vector::{causal_character, lorentz_cross, minkowski_dot, tangent_frame, CausalCharacter, LVec3};
