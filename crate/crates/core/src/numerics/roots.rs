//! Bracketed root finding (Brent's method with bisection safeguard).

use crate::error::{Error, Result};

/// Default tolerance for root finding.
pub const DEFAULT_ROOT_TOL: f64 = 1e-8;

const MAX_ITERATIONS: usize = 200;

/// Closed interval known to contain a sign change of the target function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::invalid("bracket", lo, "endpoints must be finite"));
        }
        if !(lo < hi) {
            return Err(Error::invalid("bracket", lo, "lo must be below hi"));
        }
        Ok(Bracket { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Root of `f` in `bracket` with `|f(x)| ≤ tol` and final bracket width ≤ `tol`.
///
/// When `f` is too steep for `|f(x)| ≤ tol` at the requested width the
/// iteration continues down to machine resolution and returns the best point.
pub fn find_root<F>(mut f: F, bracket: Bracket, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", tol, "tolerance must be positive"));
    }
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if !(fa.is_finite() && fb.is_finite()) || fa * fb > 0.0 {
        return Err(Error::NoSignChange {
            lo: a,
            hi: b,
            f_lo: fa,
            f_hi: fb,
        });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }

    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    let mut x_tol = tol;

    for _ in 0..MAX_ITERATIONS {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let machine = 2.0 * f64::EPSILON * b.abs();
        let tol1 = machine + 0.5 * x_tol;
        let xm = 0.5 * (c - b);
        if fb == 0.0 || xm.abs() <= machine {
            return Ok(b);
        }
        if xm.abs() <= tol1 {
            if fb.abs() <= tol {
                return Ok(b);
            }
            // Width reached but |f| has not: tighten to machine resolution.
            x_tol = 0.0;
            continue;
        }

        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::RootNonConvergence {
                iterations: MAX_ITERATIONS,
                lo: b.min(c),
                hi: b.max(c),
            });
        }
    }

    Err(Error::RootNonConvergence {
        iterations: MAX_ITERATIONS,
        lo: b.min(c),
        hi: b.max(c),
    })
}
