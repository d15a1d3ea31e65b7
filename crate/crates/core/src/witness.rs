//! Desk-scale near-extremal witnesses.
//!
//! A [`ZeroConfig`] stands for the even entire function
//! `f(z) = ∏_j (1 − z²/x_j²)`: every radius `x_j` carries the pair of zeros
//! `±x_j`, so the disc `|z| ≤ r` holds `2·#{x_j ≤ r}` zeros. At scale `T` the
//! radii follow `T·μ` for the extremal measure μ: `⌊cT/2⌋` pairs sit at
//! `x = T` (the atom) and the rest at quantiles of the absolutely continuous
//! part, truncated at `R_max = r_max_factor·k·T`.
//!
//! Dropping the zeros beyond `R_max` changes the scaled log-modulus at `z`
//! by about `|z|²/(π·r_max_factor·k)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::CountingFunction;
use crate::error::{Error, Result};
use crate::numerics::{circle_mean, circle_mean_fixed, find_root, Bracket};
use crate::scmap::ExtremalMap;

/// Truncation factor used when none is given; keeps the tail error near
/// 1e−2 for `|z| ≤ 3`.
pub const DEFAULT_R_MAX_FACTOR: f64 = 160.0;

const QUANTILE_TOL: f64 = 1e-12;

/// Radii of the zero pairs of a finite even product, with its scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroConfig {
    pub scale: f64,
    pub truncation_radius: f64,
    pub radii: Vec<f64>,
}

impl ZeroConfig {
    pub fn new(radii: Vec<f64>, scale: f64, truncation_radius: f64) -> Result<Self> {
        let config = ZeroConfig {
            scale,
            truncation_radius,
            radii,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::invalid("scale", self.scale, "must be positive"));
        }
        if !(self.truncation_radius > 0.0) {
            return Err(Error::invalid(
                "truncation_radius",
                self.truncation_radius,
                "must be positive",
            ));
        }
        if let Some(&bad) = self.radii.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
            return Err(Error::invalid("radii", bad, "radii must be positive"));
        }
        if let Some(w) = self.radii.windows(2).find(|w| w[1] < w[0]) {
            return Err(Error::invalid(
                "radii",
                w[1],
                "radii must be sorted ascending",
            ));
        }
        if let Some(&last) = self.radii.last() {
            if last > self.truncation_radius {
                return Err(Error::invalid(
                    "radii",
                    last,
                    "radius beyond truncation radius",
                ));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, String> {
        let config: ZeroConfig = serde_json::from_str(text).map_err(|e| e.to_string())?;
        config.validate().map_err(|e| e.to_string())?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serialises")
    }

    /// Number of zeros (with multiplicity) in `|z| ≤ r`.
    pub fn count_zeros(&self, r: f64) -> usize {
        2 * self.radii.partition_point(|&x| x <= r)
    }

    /// `log|f(z)|` in unscaled coordinates.
    pub fn log_modulus(&self, z: Complex64) -> f64 {
        let z2 = z * z;
        runs(&self.radii)
            .map(|(x, mult)| {
                let term = (1.0 - z2 / (x * x)).norm_sqr().ln() * 0.5;
                mult as f64 * term
            })
            .sum()
    }

    /// Rough size of the truncation error of [`scaled_log_modulus`] at `|z|`.
    pub fn tail_bound(&self, z_abs: f64) -> f64 {
        let scaled_cut = self.truncation_radius / self.scale;
        z_abs * z_abs / (PI * scaled_cut)
    }
}

// (value, multiplicity) over runs of equal radii in a sorted slice.
fn runs(radii: &[f64]) -> impl Iterator<Item = (f64, usize)> + '_ {
    let mut i = 0;
    std::iter::from_fn(move || {
        let &x = radii.get(i)?;
        let len = radii[i..].iter().take_while(|&&y| y == x).count();
        i += len;
        Some((x, len))
    })
}

/// Zeros of the witness at scale `T`.
pub fn place_zeros(scale: f64, map: &ExtremalMap, r_max_factor: f64) -> Result<ZeroConfig> {
    if !(scale >= 50.0 && scale.is_finite()) {
        return Err(Error::invalid("T", scale, "scale must be at least 50"));
    }
    if !(r_max_factor >= 5.0 && r_max_factor.is_finite()) {
        return Err(Error::invalid(
            "r_max_factor",
            r_max_factor,
            "must be at least 5",
        ));
    }
    let k = map.k();
    let c = map.c();
    let cf = CountingFunction::from_map(map);

    let atom_pairs = (c * scale / 2.0).floor() as usize;
    let cut = r_max_factor * k;
    let s_max = ((cut - k) * (cut + k)).sqrt();
    let total_ac = cf.ac_mass_in_s(0.0, s_max)?;
    let pair_mass = 2.0 / scale;
    let ac_pairs = (total_ac / pair_mass + 0.5).floor() as usize;

    let mut radii = vec![scale; atom_pairs];
    radii.reserve(ac_pairs);

    // Walk the quantiles in order, integrating only the increment each time.
    let (mut s_cur, mut m_cur) = (0.0_f64, 0.0_f64);
    for j in 1..=ac_pairs {
        let target = pair_mass * (j as f64 - 0.5);
        let need = target - m_cur;
        let slope = cf.ac_mass_integrand(s_cur);
        // The integrand increases in s, so need/slope overshoots the root.
        let hi = if slope > 0.0 {
            (s_cur + need / slope).min(s_max)
        } else {
            s_max
        };
        let residual = |s: f64| {
            cf.ac_mass_in_s(s_cur, s)
                .map(|m| m - need)
                .unwrap_or(f64::NAN)
        };
        let bracket = Bracket::new(s_cur, hi.max(s_cur + f64::EPSILON))
            .map_err(|_| Error::QuantileInversion { mass: target })?;
        let s = find_root(residual, bracket, QUANTILE_TOL)
            .map_err(|_| Error::QuantileInversion { mass: target })?;
        s_cur = s;
        m_cur = target;
        let x = (k * k + s * s).sqrt() * scale;
        radii.push(x.min(cut * scale));
    }

    ZeroConfig::new(radii, scale, cut * scale)
}

/// `v_T(z) = T⁻¹ log|f(Tz)|`; `−∞` exactly at a zero.
pub fn scaled_log_modulus(config: &ZeroConfig, z: Complex64) -> f64 {
    config.log_modulus(z * config.scale) / config.scale
}

/// Directional growth estimates `h(θ) ≈ max_r v_T(re^{iθ})/r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorProfile {
    pub thetas: Vec<f64>,
    pub h_est: Vec<f64>,
    pub radii_used: Vec<f64>,
}

/// Indicator estimate over `thetas` from scaled radii `radii`.
///
/// Radii must lie in `(0.2, 0.8·R_max/T)` and angles at least 0.01 away
/// from the real axis.
pub fn indicator_estimate(
    config: &ZeroConfig,
    thetas: &[f64],
    radii: &[f64],
) -> Result<IndicatorProfile> {
    if radii.is_empty() {
        return Err(Error::invalid("radii", 0.0, "need at least one radius"));
    }
    let upper = 0.8 * config.truncation_radius / config.scale;
    if let Some(&bad) = radii.iter().find(|&&r| !(r > 0.2 && r < upper)) {
        return Err(Error::invalid(
            "radii",
            bad,
            "radius outside (0.2, 0.8·R_max/T)",
        ));
    }
    for &theta in thetas {
        let off_axis = (theta.sin()).abs().asin();
        if !(off_axis >= 0.01 - 1e-12) {
            return Err(Error::invalid(
                "theta",
                theta,
                "angle within 0.01 of the real axis",
            ));
        }
    }
    let h_est = thetas
        .iter()
        .map(|&theta| {
            radii
                .iter()
                .map(|&r| scaled_log_modulus(config, Complex64::from_polar(r, theta)) / r)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    Ok(IndicatorProfile {
        thetas: thetas.to_vec(),
        h_est,
        radii_used: radii.to_vec(),
    })
}

fn check_jensen_radius(config: &ZeroConfig, r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::invalid("r", r, "radius must be positive"));
    }
    if config.radii.iter().any(|&x| (x - r).abs() <= 1e-12 * r) {
        return Err(Error::invalid("r", r, "radius coincides with a zero"));
    }
    Ok(())
}

/// `∫₀^r n(t)/t dt = Σ_{x_j < r} 2·log(r/x_j)`, exact for the finite product.
pub fn jensen_counting_integral(config: &ZeroConfig, r: f64) -> f64 {
    runs(&config.radii)
        .take_while(|&(x, _)| x < r)
        .map(|(x, mult)| 2.0 * mult as f64 * (r / x).ln())
        .sum()
}

/// `|mean of log|f| on |z| = r − ∫₀^r n(t)/t dt|` for unscaled `r`.
pub fn jensen_residual(config: &ZeroConfig, r: f64) -> Result<f64> {
    check_jensen_radius(config, r)?;
    let mean = circle_mean(|z| config.log_modulus(z), r, 64)?;
    Ok((mean - jensen_counting_integral(config, r)).abs())
}

/// As [`jensen_residual`] with a fixed `n`-point trapezoid rule.
pub fn jensen_residual_fixed(config: &ZeroConfig, r: f64, n: usize) -> Result<f64> {
    check_jensen_radius(config, r)?;
    if n == 0 {
        return Err(Error::invalid("n", 0.0, "need at least one sample"));
    }
    let mean = circle_mean_fixed(|z| config.log_modulus(z), r, n);
    Ok((mean - jensen_counting_integral(config, r)).abs())
}

/// Moduli of `zeros`, sorted ascending. Disc counts are unchanged.
pub fn radial_project(zeros: &[Complex64]) -> Vec<f64> {
    let mut moduli: Vec<f64> = zeros.iter().map(|z| z.norm()).collect();
    moduli.sort_by(f64::total_cmp);
    moduli
}

/// Number of points of `zeros` in `|z| ≤ r`.
pub fn planar_count(zeros: &[Complex64], r: f64) -> usize {
    zeros.iter().filter(|z| z.norm() <= r).count()
}

/// `T⁻¹ Σ log|1 − (Tz)²/ζ_j²|` for arbitrary nonzero complex `ζ_j`.
pub fn planar_scaled_log_modulus(zeros: &[Complex64], scale: f64, z: Complex64) -> f64 {
    let w2 = (z * scale) * (z * scale);
    zeros
        .iter()
        .map(|&zeta| 0.5 * (1.0 - w2 / (zeta * zeta)).norm_sqr().ln())
        .sum::<f64>()
        / scale
}

/// Smallest σ′ with `v(z) ≤ σ′|Im z|` on `grid` (points off the real axis).
pub fn empirical_sigma_prime<V>(v: V, grid: &[Complex64]) -> f64
where
    V: Fn(Complex64) -> f64,
{
    grid.iter()
        .filter(|z| z.im != 0.0)
        .map(|&z| v(z) / z.im.abs())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Points with `|Im z| ≥ min_im`, `|z| ≤ max_abs` on a square lattice of
/// spacing `step`, upper half-plane only.
pub fn test_grid(min_im: f64, max_abs: f64, step: f64) -> Vec<Complex64> {
    let n = (max_abs / step).round() as i64;
    let mut grid = Vec::new();
    for iy in 0..=n {
        let y = iy as f64 * step;
        if y < min_im {
            continue;
        }
        for ix in -n..=n {
            let z = Complex64::new(ix as f64 * step, y);
            if z.norm() <= max_abs {
                grid.push(z);
            }
        }
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn runs_group_duplicates() {
        let r: Vec<_> = runs(&[1.0, 1.0, 2.0, 3.0, 3.0, 3.0]).collect();
        assert_eq!(r, vec![(1.0, 2), (2.0, 1), (3.0, 3)]);
        assert_eq!(runs(&[]).count(), 0);
    }

    #[test]
    fn config_validation() {
        assert!(ZeroConfig::new(vec![2.0, 1.0], 1.0, 10.0).is_err());
        assert!(ZeroConfig::new(vec![1.0, 20.0], 1.0, 10.0).is_err());
        assert!(ZeroConfig::new(vec![0.0], 1.0, 10.0).is_err());
        assert!(ZeroConfig::new(vec![1.0], 0.0, 10.0).is_err());
        assert!(ZeroConfig::new(vec![1.0, 1.0, 2.0], 1.0, 10.0).is_ok());
    }

    #[test]
    fn zero_gives_sentinel() {
        let cfg = ZeroConfig::new(vec![2.0, 3.0], 1.0, 10.0).unwrap();
        assert_eq!(
            scaled_log_modulus(&cfg, Complex64::new(2.0, 0.0)),
            f64::NEG_INFINITY
        );
        assert_eq!(scaled_log_modulus(&cfg, Complex64::new(0.0, 0.0)), 0.0);
    }

    #[test]
    fn counting_is_pairs() {
        let cfg = ZeroConfig::new(vec![1.0, 1.0, 2.0], 1.0, 10.0).unwrap();
        assert_eq!(cfg.count_zeros(0.5), 0);
        assert_eq!(cfg.count_zeros(1.0), 4);
        assert_eq!(cfg.count_zeros(5.0), 6);
    }

    #[test]
    fn jensen_rejects_radius_on_zero() {
        let cfg = ZeroConfig::new(vec![2.0, 3.0], 1.0, 10.0).unwrap();
        assert!(jensen_residual(&cfg, 2.0).is_err());
    }

    #[test]
    fn json_schema_round_trip() {
        let cfg = ZeroConfig::new(vec![1.0, 2.5], 50.0, 10.0).unwrap();
        let text = cfg.to_json();
        assert!(text.contains("\"scale\""));
        assert!(text.contains("\"truncation_radius\""));
        assert!(text.contains("\"radii\""));
        assert_eq!(ZeroConfig::from_json(&text).unwrap(), cfg);
        assert!(ZeroConfig::from_json(r#"{"scale":1,"truncation_radius":1,"radii":[3]}"#).is_err());
    }

    #[test]
    fn moduli_example() {
        let m = radial_project(&[Complex64::new(1.0, 1.0), Complex64::new(-2.0, 0.0)]);
        assert!((m[0] - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(m[1], 2.0);
    }

    #[test]
    fn grid_respects_bounds() {
        let g = test_grid(0.3, 3.0, 0.25);
        assert!(!g.is_empty());
        assert!(g.iter().all(|z| z.im >= 0.3 && z.norm() <= 3.0));
    }
}
