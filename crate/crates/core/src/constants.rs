//! The extremal density constant `c` and the map parameters derived from it.
//!
//! `c` is the positive root of `ln(√(c²+1) + c) = √(1 + c⁻²)`. The
//! Schwarz–Christoffel parameter is `k = √(c² + 1)` and the slit abscissa of
//! the extremal region is `b = πc/2`. All densities are per unit σ.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{find_root, Bracket};

/// Default bracket for the constant; the defect changes sign on it.
pub const DEFAULT_BRACKET: (f64, f64) = (1.0, 2.0);

/// `(c, k, b)` together with the tolerance they were solved to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremalConstants {
    pub c: f64,
    pub k: f64,
    pub b: f64,
    pub tol: f64,
}

impl ExtremalConstants {
    /// Constants from a density value `c > 0`.
    pub fn from_c(c: f64, tol: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::invalid("c", c, "must be positive"));
        }
        Ok(ExtremalConstants {
            c,
            k: (c * c + 1.0).sqrt(),
            b: PI * c / 2.0,
            tol,
        })
    }

    /// Constants from the preimage parameter `k > 1`.
    pub fn from_k(k: f64, tol: f64) -> Result<Self> {
        if !(k > 1.0 && k.is_finite()) {
            return Err(Error::invalid("k", k, "must exceed 1"));
        }
        let c = ((k - 1.0) * (k + 1.0)).sqrt();
        Ok(ExtremalConstants {
            c,
            k,
            b: PI * c / 2.0,
            tol,
        })
    }
}

/// Reference densities per unit σ: `sin σz`, the extremal value, and the
/// Jensen-formula bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundTriple {
    pub sine_density: f64,
    pub extremal: f64,
    pub jensen: f64,
}

impl BoundTriple {
    pub fn is_ordered(&self) -> bool {
        self.sine_density < self.extremal && self.extremal < self.jensen
    }
}

/// `ln(√(c²+1) + c) − √(1 + c⁻²)`; strictly increasing on `(0, ∞)`.
pub fn eval_defect(c: f64) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::invalid("c", c, "defect is defined for c > 0 only"));
    }
    // asinh(c) = ln(√(c²+1) + c) without cancellation for small c.
    Ok(c.asinh() - (1.0 + 1.0 / (c * c)).sqrt())
}

/// Solves for `c` on [`DEFAULT_BRACKET`] and derives `k` and `b`.
pub fn solve_extremal_constant(tol: f64) -> Result<ExtremalConstants> {
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", tol, "tolerance must be positive"));
    }
    let bracket = Bracket::new(DEFAULT_BRACKET.0, DEFAULT_BRACKET.1)?;
    let c = find_root(|c| eval_defect(c).unwrap_or(f64::NAN), bracket, tol)?;
    ExtremalConstants::from_c(c, tol)
}

/// `(2/π, c, 2e/π)` with `c` solved to [`crate::numerics::DEFAULT_ROOT_TOL`].
pub fn classical_bounds() -> Result<BoundTriple> {
    let constants = solve_extremal_constant(crate::numerics::DEFAULT_ROOT_TOL)?;
    Ok(BoundTriple {
        sine_density: 2.0 / PI,
        extremal: constants.c,
        jensen: 2.0 * E / PI,
    })
}
