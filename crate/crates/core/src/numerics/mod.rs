//! Numerical kernel: adaptive quadrature on real intervals and complex
//! contours, principal values, bracketed roots and circle means.
//!
//! Everything here is a pure function of its inputs.

mod circle;
mod pv;
mod quad;
mod roots;

pub use circle::{circle_mean, circle_mean_fixed, circle_mean_with_tol, DEFAULT_CIRCLE_TOL};
pub use pv::{principal_value, principal_value_with, PvMethod};
pub use quad::{
    integrate, integrate_complex, integrate_contour, integrate_panels, Path, QuadResult, Segment,
    DEFAULT_QUAD_TOL, MAX_SUBDIVISIONS,
};
pub use roots::{find_root, Bracket, DEFAULT_ROOT_TOL};

/// Points of the complex plane.
pub type ComplexPoint = num_complex::Complex64;
