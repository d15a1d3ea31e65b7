//! Numerical laboratory for the sharp upper bound `cσ`, `c ≈ 1.508879`, on the
//! upper density of zeros of entire functions of exponential type whose
//! indicator diagram lies in `[−iσ, iσ]`.
//!
//! Modules, bottom-up:
//!
//! * [`numerics`]: contour quadrature, principal values, Brent roots, circle means.
//! * [`constants`]: the transcendental equation for `c`; `k`, `b`; classical bounds.
//! * [`scmap`]: the extremal Schwarz–Christoffel map φ₀ and its parameter problem.
//! * [`density`]: the extremal zero-counting measure (atom + absolutely continuous part).
//! * [`witness`]: finite products with zeros placed by that measure.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod constants;
pub mod density;
pub mod error;
pub mod numerics;
pub mod scmap;
pub mod witness;

pub use constants::{
    classical_bounds, eval_defect, solve_extremal_constant, BoundTriple, ExtremalConstants,
};
pub use density::{
    ac_density, counting_function, density_profile, CountingFunction, DensityProfile,
};
pub use error::{Error, Result};
pub use numerics::{ComplexPoint, QuadResult};
pub use scmap::{
    eval_phi, jump_at_one, pv_residual, solve_parameter, trace_boundary, BoundaryTrace,
    ExtremalMap, Jump, SegmentLabel,
};
pub use witness::{
    indicator_estimate, jensen_residual, place_zeros, radial_project, scaled_log_modulus,
    IndicatorProfile, ZeroConfig,
};
