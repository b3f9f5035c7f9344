//! Rotational surfaces in the flat four dimensional space with inner product
//! `<u, v> = -u1 v1 - u2 v2 + u3 v3 + u4 v4`.
//!
//! The crate models the isometry algebra of that product (six rotational
//! generators, their brackets, and the three commuting pairs among them),
//! the one and two parameter subgroups they generate, and the surfaces swept
//! out when such a subgroup acts on a profile curve. For profile curves that
//! vanish on the right pair of coordinates, the adapted frame, second
//! fundamental form, mean curvature vector, and curvature scalar all have
//! closed forms; everything closed is cross-checked at runtime against an
//! independent projection road built on exact second order jets.
//!
//! Layout:
//! - [`algebra`]: vectors, matrices, the indefinite product, ternary
//!   products, the matrix exponential, quadrics.
//! - [`jet`]: second order forward-mode derivatives.
//! - [`expr`]: the small expression language for curve components.
//! - [`curve`]: profile curves and scalar reparametrisations.
//! - [`killing`]: the six generators, brackets, subalgebra tests.
//! - [`groups`]: closed subgroup matrices and their jets.
//! - [`surface`]: patches, metrics, frames, curvature, the two-road report.
//! - [`mesh`]: grid sampling and CSV/JSON/OBJ export.
//! - [`verify`]: named residual suites behind the CLI `verify` command.

pub mod algebra;
pub mod curve;
pub mod expr;
pub mod groups;
pub mod jet;
pub mod killing;
pub mod mesh;
pub mod surface;
pub mod verify;

pub use algebra::{
    causal_character, cross3, expm, inner_product, norm, CausalCharacter, Mat4, Vec4, SIGNATURE,
};
pub use curve::{Curve4, Interval, ScalarMap};
pub use groups::{one_param_matrix, two_param_matrix, RotationPair};
pub use killing::{bracket_table, generator, killing_field, GeneratorId, KillingCoefficients};
pub use surface::{
    curvature_report, gaussian_curvature, induced_metric, mean_curvature, moving_frame,
    oracle_curvatures, surface_point, CurvatureReport, SurfaceError, SurfaceSpec,
};
