//! Means of real functions over circles `|z| = r`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quad::integrate_panels;
use crate::error::{Error, Result};

/// Default tolerance (absolute, scaled by `max(1, |mean|)`) for circle means.
pub const DEFAULT_CIRCLE_TOL: f64 = 1e-10;

const MAX_DOUBLINGS: u32 = 14;

// Fixed angular offset so the sample grid misses the real axis, where the
// functions of interest have their singularities.
const OFFSET: f64 = 0.061_803_398_874_989_48;

/// Trapezoid mean of `v` over `n` equally spaced points on `|z| = r`.
pub fn circle_mean_fixed<V>(v: V, r: f64, n: usize) -> f64
where
    V: Fn(Complex64) -> f64,
{
    let step = 2.0 * PI / n as f64;
    let sum: f64 = (0..n)
        .map(|j| v(Complex64::from_polar(r, OFFSET + step * j as f64)))
        .sum();
    sum / n as f64
}

/// `(2π)⁻¹ ∫ v(r e^{iθ}) dθ` with [`DEFAULT_CIRCLE_TOL`].
pub fn circle_mean<V>(v: V, r: f64, n: usize) -> Result<f64>
where
    V: Fn(Complex64) -> f64,
{
    circle_mean_with_tol(v, r, n, DEFAULT_CIRCLE_TOL)
}

/// Periodic trapezoid rule with sample doubling from `n` points.
///
/// Convergence is declared when successive levels agree to `tol`. If the
/// doubling stalls (integrable log spikes on the circle) or a sample is not
/// finite, the mean falls back to adaptive Gauss–Kronrod panels over θ,
/// which refine locally around the spikes.
pub fn circle_mean_with_tol<V>(v: V, r: f64, n: usize, tol: f64) -> Result<f64>
where
    V: Fn(Complex64) -> f64,
{
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::invalid("r", r, "radius must be positive"));
    }
    if n < 16 {
        return Err(Error::invalid("n", n as f64, "need at least 16 panels"));
    }

    if let Some(mean) = doubling_trapezoid(&v, r, n, tol) {
        return Ok(mean);
    }
    panel_fallback(&v, r, n, tol)
}

fn doubling_trapezoid<V>(v: &V, r: f64, n: usize, tol: f64) -> Option<f64>
where
    V: Fn(Complex64) -> f64,
{
    let sample = |theta: f64| {
        let x = v(Complex64::from_polar(r, theta));
        x.is_finite().then_some(x)
    };

    let mut count = n;
    let mut step = 2.0 * PI / n as f64;
    let mut sum = 0.0;
    for j in 0..n {
        sum += sample(OFFSET + step * j as f64)?;
    }
    let mut mean = sum / count as f64;

    for _ in 0..MAX_DOUBLINGS {
        // New points sit halfway between the existing ones.
        for j in 0..count {
            sum += sample(OFFSET + step * (j as f64 + 0.5))?;
        }
        count *= 2;
        step /= 2.0;
        let refined = sum / count as f64;
        let diff = (refined - mean).abs();
        mean = refined;
        if diff <= tol * mean.abs().max(1.0) {
            return Some(mean);
        }
    }
    None
}

fn panel_fallback<V>(v: &V, r: f64, n: usize, tol: f64) -> Result<f64>
where
    V: Fn(Complex64) -> f64,
{
    let step = 2.0 * PI / n as f64;
    let breaks: Vec<f64> = (0..=n).map(|j| step * j as f64).collect();
    let result = integrate_panels(
        |theta| Complex64::new(v(Complex64::from_polar(r, theta)), 0.0),
        &breaks,
        tol * 2.0 * PI,
    );
    match result {
        Ok(q) => Ok(q.real() / (2.0 * PI)),
        Err(Error::NonFiniteIntegrand { at }) => Err(Error::NonFiniteSample {
            radius: r,
            theta: at.re,
        }),
        Err(Error::QuadratureNonConvergence { err_estimate, .. }) => {
            Err(Error::CircleMeanNonConvergence {
                radius: r,
                difference: err_estimate / (2.0 * PI),
            })
        }
        Err(other) => Err(other),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_function_has_zero_mean() {
        let m = circle_mean(|z| z.im, 1.0, 16).unwrap();
        assert!(m.abs() < 1e-12);
    }

    #[test]
    fn mean_of_abs_sine() {
        // |sin θ| has a kink, so this runs through the refinement path.
        let m = circle_mean(|z| z.im.abs(), 1.0, 16).unwrap();
        assert!((m - 2.0 / PI).abs() < 1e-8, "{m}");
    }

    #[test]
    fn jensen_without_interior_zeros() {
        // f(z) = 1 − z²/4 has no zeros in |z| < 1, so the mean is log|f(0)| = 0.
        let m = circle_mean(|z| (1.0 - z * z / 4.0).norm().ln(), 1.0, 16).unwrap();
        assert!(m.abs() < 1e-10, "{m}");
    }

    #[test]
    fn log_singularity_on_circle() {
        // Zeros ±2 on |z| = 2: Jensen gives log|f(0)| + 2·log(2/2) = 0.
        let m = circle_mean(|z| (1.0 - z * z / 4.0).norm().ln(), 2.0, 16).unwrap();
        assert!(m.abs() < 1e-6, "{m}");
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(circle_mean(|_| 0.0, 0.0, 16).is_err());
        assert!(circle_mean(|_| 0.0, 1.0, 8).is_err());
    }

    #[test]
    fn nonfinite_everywhere_fails() {
        let e = circle_mean(|_| f64::NAN, 1.0, 16).unwrap_err();
        assert!(matches!(e, Error::NonFiniteSample { .. }));
    }
}
