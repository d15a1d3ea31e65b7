//! Zero-counting measure of the extremal function.
//!
//! The measure μ on `[0, ∞)` has `μ[0, x] = (2/π)·Re φ₀(x + 0)`: an atom of
//! mass `c` at `x = 1`, nothing on `(1, k)`, and the density
//! `(2/π)·x√(x² − k²)/(x² − 1)` on `(k, ∞)`, which tends to `2/π`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::ExtremalConstants;
use crate::error::{Error, Result};
use crate::numerics::{integrate, DEFAULT_QUAD_TOL};
use crate::scmap::{eval_phi, ExtremalMap};

/// `μ[0, x] = (2/π)·Re φ₀(x + 0)` from the map.
///
/// At `x = 1` the right limit is taken at the midpoint of `(1, k)`, where
/// `Re φ₀` is constant.
pub fn counting_function(x: f64, map: &ExtremalMap) -> Result<f64> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::invalid("x", x, "counting function needs x ≥ 0"));
    }
    let probe = if x == 1.0 { 0.5 * (1.0 + map.k()) } else { x };
    let w = eval_phi(Complex64::new(probe, 0.0), map)?;
    Ok(2.0 / PI * w.re)
}

/// Density of the absolutely continuous part at `x > k`.
pub fn ac_density(x: f64, map: &ExtremalMap) -> Result<f64> {
    CountingFunction::new(map.constants()).ac_density(x)
}

/// Atom plus absolutely continuous decomposition of μ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountingFunction {
    pub atom_location: f64,
    pub atom_mass: f64,
    pub ac_support_start: f64,
    tol: f64,
}

impl CountingFunction {
    pub fn new(constants: &ExtremalConstants) -> Self {
        CountingFunction {
            atom_location: 1.0,
            atom_mass: constants.c,
            ac_support_start: constants.k,
            tol: DEFAULT_QUAD_TOL,
        }
    }

    pub fn from_map(map: &ExtremalMap) -> Self {
        Self::new(map.constants())
    }

    fn k(&self) -> f64 {
        self.ac_support_start
    }

    fn c(&self) -> f64 {
        self.atom_mass
    }

    /// `(2/π)·x√(x² − k²)/(x² − 1)`, defined for `x > k`.
    pub fn ac_density(&self, x: f64) -> Result<f64> {
        let k = self.k();
        if !(x > k) || !x.is_finite() {
            return Err(Error::invalid(
                "x",
                x,
                "absolutely continuous density lives on (k, ∞); the atom is separate",
            ));
        }
        let root = ((x - k) * (x + k)).sqrt();
        Ok(2.0 / PI * x * root / ((x - 1.0) * (x + 1.0)))
    }

    /// Integrand of the a.c. mass after `x = √(k² + s²)`: `(2/π)·s²/(s² + c²)`.
    pub fn ac_mass_integrand(&self, s: f64) -> f64 {
        let c2 = self.c() * self.c();
        2.0 / PI * s * s / (s * s + c2)
    }

    /// `μ(k, x]` in the band-edge variable, from `s0` to `s1`.
    pub fn ac_mass_in_s(&self, s0: f64, s1: f64) -> Result<f64> {
        Ok(integrate(|s| self.ac_mass_integrand(s), s0, s1, self.tol)?.real())
    }

    /// `μ(k, x]`; zero for `x ≤ k`.
    pub fn ac_mass(&self, x: f64) -> Result<f64> {
        let k = self.k();
        if x <= k {
            return Ok(0.0);
        }
        self.ac_mass_in_s(0.0, ((x - k) * (x + k)).sqrt())
    }

    /// `μ[0, x]`, right-continuous.
    pub fn total_on(&self, x: f64) -> Result<f64> {
        if x < self.atom_location {
            Ok(0.0)
        } else {
            Ok(self.atom_mass + self.ac_mass(x)?)
        }
    }

    /// `(1/r) ∫₀^r μ[0, t]/t dt`.
    pub fn cesaro_mean(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::invalid("r", r, "must be positive"));
        }
        if r <= 1.0 {
            return Ok(0.0);
        }
        let k = self.k();
        let atom_part = self.atom_mass * r.ln();
        let ac_part = if r > k {
            // ∫_k^r μ(k, t]/t dt, with μ(k, t] accumulated along the way.
            integrate(|t| self.ac_mass(t).unwrap_or(f64::NAN) / t, k, r, 1e-8)?.real()
        } else {
            0.0
        };
        Ok((atom_part + ac_part) / r)
    }
}

/// `n(r)/r` sampled on a radius grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityProfile {
    pub radii: Vec<f64>,
    pub ratio: Vec<f64>,
}

impl DensityProfile {
    /// `(radius, ratio)` of the largest ratio; the first one on ties.
    pub fn max(&self) -> Option<(f64, f64)> {
        self.radii
            .iter()
            .zip(&self.ratio)
            .fold(None, |best: Option<(f64, f64)>, (&r, &q)| match best {
                Some((_, bq)) if bq >= q => best,
                _ => Some((r, q)),
            })
    }
}

/// `counting_function(r)/r` over `r_grid` (positive, increasing, containing 1).
pub fn density_profile(r_grid: &[f64], map: &ExtremalMap) -> Result<DensityProfile> {
    if r_grid.is_empty() {
        return Err(Error::invalid("r_grid", 0.0, "grid is empty"));
    }
    if let Some(&bad) = r_grid.iter().find(|&&r| !(r > 0.0 && r.is_finite())) {
        return Err(Error::invalid("r_grid", bad, "radii must be positive"));
    }
    if let Some(w) = r_grid.windows(2).find(|w| !(w[0] < w[1])) {
        return Err(Error::invalid(
            "r_grid",
            w[1],
            "radii must be strictly increasing",
        ));
    }
    if !r_grid.contains(&1.0) {
        return Err(Error::invalid(
            "r_grid",
            f64::NAN,
            "grid must contain r = 1",
        ));
    }
    let ratio = r_grid
        .iter()
        .map(|&r| Ok(counting_function(r, map)? / r))
        .collect::<Result<Vec<_>>>()?;
    Ok(DensityProfile {
        radii: r_grid.to_vec(),
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::solve_extremal_constant;

    fn map() -> ExtremalMap {
        ExtremalMap::new(solve_extremal_constant(1e-13).unwrap()).unwrap()
    }

    #[test]
    fn density_rejects_points_left_of_band() {
        let m = map();
        assert!(ac_density(m.k(), &m).is_err());
        assert!(ac_density(1.5, &m).is_err());
    }

    #[test]
    fn density_vanishes_at_band_edge() {
        let m = map();
        let d = ac_density(m.k() * (1.0 + 1e-12), &m).unwrap();
        assert!(d < 1e-5, "{d}");
    }

    #[test]
    fn density_tends_to_sine_value() {
        let m = map();
        assert!((ac_density(100.0, &m).unwrap() - 2.0 / PI).abs() < 1e-3);
    }

    #[test]
    fn total_on_steps() {
        let cf = CountingFunction::from_map(&map());
        assert_eq!(cf.total_on(0.999).unwrap(), 0.0);
        assert_eq!(cf.total_on(1.0).unwrap(), cf.atom_mass);
        assert_eq!(cf.total_on(1.7).unwrap(), cf.atom_mass);
        assert!(cf.total_on(2.0).unwrap() > cf.atom_mass);
    }

    #[test]
    fn profile_validation() {
        let m = map();
        assert!(density_profile(&[], &m).is_err());
        assert!(density_profile(&[0.5, 2.0], &m).is_err());
        assert!(density_profile(&[1.0, 0.5], &m).is_err());
        assert!(density_profile(&[-1.0, 1.0], &m).is_err());
    }

    #[test]
    fn profile_max_at_one() {
        let m = map();
        let p = density_profile(&[0.5, 1.0, 1.5, 3.0, 10.0], &m).unwrap();
        let (r, q) = p.max().unwrap();
        assert_eq!(r, 1.0);
        assert!((q - m.c()).abs() < 1e-8);
        assert!((p.ratio[2] - m.c() / 1.5).abs() < 1e-8);
    }
}
