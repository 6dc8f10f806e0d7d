//! Independent checks of solved profiles.
//!
//! Nothing here trusts the first integral: curvature is recomputed from the
//! second-order equation, either on the rotational profile or on a sampled
//! graph `x₃ = u(x₁, x₂)`, and the variational identity is checked on the
//! inverse profile `t = g(x₃)`.

mod graph;
mod rotational;
mod variational;

pub use graph::{curvature_field, mean_curvature_graph, CurvatureMode, CurvatureReport, GraphPatch};
pub use rotational::mean_curvature_rotational;
pub use variational::{variational_residual, VariationalReport};
