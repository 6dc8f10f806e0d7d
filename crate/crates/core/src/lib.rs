//! Spacelike constant mean curvature surfaces of revolution in Lorentz-Minkowski
//! space `L³ = (R³, dx₁² + dx₂² − dx₃²)`.
//!
//! A rotational surface about the timelike `x₃` axis is written
//! `X(t, θ) = (t cos θ, t sin θ, f(t))`. Constant mean curvature `H` forces the
//! first integral `H t² − t f′/√(1 − f′²) = c`, so every profile is pinned down by
//! the pair `(H, c)` and one anchor point `f(r) = a`.
//!
//! The crate is split along the workflow:
//!
//! * [`params`]: boundary data, parameter validation and the `(H, c) → (−H, −c)` symmetry.
//! * [`profile`]: evaluation of `f` and `f′`, closed forms, cone and light-cone diagnostics.
//! * [`bvp`]: the two-ring problem, solved by shooting on `c`.
//! * [`flux`]: the flux of the horizontal circles, closed form and numeric.
//! * [`oracle`]: independent mean curvature and variational checks.
//! * [`mesh`]: surface sampling plus OBJ/CSV export.
//! * [`figures`]: the four reference profiles reproduced by the CLI.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bvp;
mod error;
pub mod exec;
pub mod figures;
pub mod flux;
pub mod mesh;
pub mod minkowski;
pub mod oracle;
pub mod params;
pub mod profile;
pub mod quadrature;

pub use bvp::{classify, predict_regime, solve, solve_c, threshold_h0, PlateauProblem, PlateauSolution};
pub use error::{Error, Result};
pub use exec::Execution;
pub use flux::{flux_closed_form, flux_numeric, FluxMode, FluxResult};
pub use params::{canonicalize, validate_rings, Anchor, Parity, Regime, RingPair, SurfaceParams, ValidatedRingPair};
pub use profile::{ProfileCurve, SingularityKind, SingularityReport};
pub use quadrature::QuadSettings;
