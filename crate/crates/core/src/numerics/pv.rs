//! Cauchy principal values across a single simple pole.

use num_complex::Complex64;

use super::quad::{integrate, QuadResult};
use crate::error::{Error, Result};

/// How the limit across the pole is realised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PvMethod {
    /// Pair `f(s + u)` with `f(s − u)`; the `1/u` parts cancel pointwise.
    #[default]
    SymmetricFold,
    /// Excise `(s − ε, s + ε)` for a halving sequence of ε and extrapolate
    /// in ε (the excised-integral error has only odd powers of ε).
    EpsilonRichardson,
    /// Subtract `R/(t − s)` with the residue `R` estimated from samples and
    /// add back its principal value `R·ln((b − s)/(s − a))`.
    PoleSubtraction,
}

/// p.v. ∫_a^b f(t) dt for `f` with a simple pole at `s ∈ (a, b)`.
pub fn principal_value<F>(f: F, a: f64, b: f64, s: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    principal_value_with(f, a, b, s, tol, PvMethod::SymmetricFold)
}

pub fn principal_value_with<F>(
    f: F,
    a: f64,
    b: f64,
    s: f64,
    tol: f64,
    method: PvMethod,
) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    if !(a < s && s < b) {
        return Err(Error::PoleNotInterior { a, b, pole: s });
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", tol, "tolerance must be positive"));
    }
    match method {
        PvMethod::SymmetricFold => symmetric_fold(&f, a, b, s, tol),
        PvMethod::EpsilonRichardson => epsilon_richardson(&f, a, b, s, tol),
        PvMethod::PoleSubtraction => pole_subtraction(&f, a, b, s, tol),
    }
}

fn symmetric_fold<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    s: f64,
    tol: f64,
) -> Result<QuadResult> {
    let h = (s - a).min(b - s);
    let part_tol = tol / 2.0;
    let folded = integrate(|u| f(s + u) + f(s - u), 0.0, h, part_tol)?;
    let rest = if s - a > b - s {
        integrate(f, a, s - h, part_tol)?
    } else if b - s > s - a {
        integrate(f, s + h, b, part_tol)?
    } else {
        return Ok(folded);
    };
    Ok(folded.combine(rest))
}

fn epsilon_richardson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    s: f64,
    tol: f64,
) -> Result<QuadResult> {
    const LEVELS: usize = 4;
    const POWERS: [i32; 3] = [1, 3, 5];

    let h = (s - a).min(b - s);
    let part_tol = tol / (4.0 * LEVELS as f64);
    let mut eps = h / 8.0;
    let mut evaluations = 0;
    let mut quad_err: f64 = 0.0;
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(LEVELS);
    for _ in 0..LEVELS {
        let left = integrate(f, a, s - eps, part_tol)?;
        let right = integrate(f, s + eps, b, part_tol)?;
        evaluations += left.evaluations + right.evaluations;
        quad_err = quad_err.max(left.err_estimate + right.err_estimate);

        let mut row = vec![left.real() + right.real()];
        if let Some(prev) = rows.last() {
            for (m, &p) in POWERS.iter().enumerate().take(prev.len()) {
                let factor = 2f64.powi(p) - 1.0;
                let next = row[m] + (row[m] - prev[m]) / factor;
                row.push(next);
            }
        }
        rows.push(row);
        eps /= 2.0;
    }

    let last = &rows[LEVELS - 1];
    let prev = &rows[LEVELS - 2];
    let value = last[last.len() - 1];
    let extrapolation_err = (value - prev[prev.len() - 1]).abs();
    Ok(QuadResult {
        value: Complex64::new(value, 0.0),
        err_estimate: extrapolation_err + quad_err,
        evaluations,
    })
}

fn pole_subtraction<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    s: f64,
    tol: f64,
) -> Result<QuadResult> {
    let h = (s - a).min(b - s);
    // R(δ) = δ·(f(s+δ) − f(s−δ))/2 = R + O(δ²); one Richardson step.
    let residue_at = |d: f64| 0.5 * d * (f(s + d) - f(s - d));
    let delta = h / 16.0;
    let residue = (4.0 * residue_at(delta / 2.0) - residue_at(delta)) / 3.0;

    // Any error in the residue leaves a `1/(t − s)` remainder, so the two
    // sides are still paired near the pole.
    let regular = |t: f64| f(t) - residue / (t - s);
    let part_tol = tol / 2.0;
    let near = integrate(|u| regular(s + u) + regular(s - u), 0.0, h, part_tol)?;
    let far = if s - a > b - s {
        integrate(regular, a, s - h, part_tol)?
    } else if b - s > s - a {
        integrate(regular, s + h, b, part_tol)?
    } else {
        QuadResult {
            value: Complex64::new(0.0, 0.0),
            err_estimate: 0.0,
            evaluations: 0,
        }
    };
    let (left, right) = (near, far);
    let log_part = residue * ((b - s) / (s - a)).ln();
    Ok(left.combine(right).combine(QuadResult {
        value: Complex64::new(log_part, 0.0),
        err_estimate: 0.0,
        evaluations: 4,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    const METHODS: [PvMethod; 3] = [
        PvMethod::SymmetricFold,
        PvMethod::EpsilonRichardson,
        PvMethod::PoleSubtraction,
    ];

    #[test]
    fn odd_symmetric_pole_vanishes() {
        for m in METHODS {
            let r = principal_value_with(|t| 1.0 / (t - 1.0), 0.0, 2.0, 1.0, 1e-12, m).unwrap();
            assert!(r.real().abs() < 1e-10, "{m:?}: {}", r.real());
        }
    }

    #[test]
    fn asymmetric_interval_gives_log() {
        for m in METHODS {
            let r = principal_value_with(|t| 1.0 / (t - 1.0), 0.0, 3.0, 1.0, 1e-12, m).unwrap();
            assert!((r.real() - 2f64.ln()).abs() < 1e-10, "{m:?}: {}", r.real());
        }
    }

    #[test]
    fn smooth_part_is_kept() {
        // p.v. ∫_0^3 (t² + 1/(t − 1)) dt = 9 + ln 2
        for m in METHODS {
            let r =
                principal_value_with(|t| t * t + 1.0 / (t - 1.0), 0.0, 3.0, 1.0, 1e-12, m).unwrap();
            assert!(
                (r.real() - 9.0 - 2f64.ln()).abs() < 1e-9,
                "{m:?}: {}",
                r.real()
            );
        }
    }

    #[test]
    fn pole_must_be_interior() {
        for s in [0.0, 2.0, -1.0, 5.0] {
            let e = principal_value(|t| 1.0 / (t - s), 0.0, 2.0, s, 1e-10).unwrap_err();
            assert!(matches!(e, Error::PoleNotInterior { .. }));
        }
    }
}
