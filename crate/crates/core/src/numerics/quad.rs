//! Adaptive Gauss–Kronrod quadrature on real intervals and complex contours.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default absolute tolerance for kernel integrals.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Maximum number of interval bisections before giving up.
pub const MAX_SUBDIVISIONS: usize = 4000;

// G7K15 abscissae on [0, 1); the Gauss nodes sit at the odd indices.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Value of a definite integral together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub err_estimate: f64,
    pub evaluations: usize,
}

impl QuadResult {
    pub fn real(&self) -> f64 {
        self.value.re
    }

    /// Sum of two results; error estimates add.
    pub fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            err_estimate: self.err_estimate + other.err_estimate,
            evaluations: self.evaluations + other.evaluations,
        }
    }

    pub fn scale(self, factor: Complex64) -> QuadResult {
        QuadResult {
            value: self.value * factor,
            err_estimate: self.err_estimate * factor.norm(),
            evaluations: self.evaluations,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    abs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn eval_checked<F>(f: &mut F, t: f64) -> Result<Complex64>
where
    F: FnMut(f64) -> Complex64,
{
    let v = f(t);
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand {
            at: Complex64::new(t, 0.0),
        })
    }
}

/// One G7K15 panel with its rescaled error estimate and ∫|f|.
fn gk15<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Complex64,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_centre = eval_checked(f, centre)?;
    let mut samples = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 7];
    let mut kronrod = f_centre * WGK[7];
    let mut gauss = f_centre * WG[3];
    let mut abs = WGK[7] * f_centre.norm();

    for (j, slot) in samples.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let lo = eval_checked(f, centre - dx)?;
        let hi = eval_checked(f, centre + dx)?;
        *slot = (lo, hi);
        let sum = lo + hi;
        kronrod += sum * WGK[j];
        abs += WGK[j] * (lo.norm() + hi.norm());
        if j % 2 == 1 {
            gauss += sum * WG[j / 2];
        }
    }

    // QUADPACK-style rescaling of the Gauss/Kronrod difference.
    let mean = kronrod * 0.5;
    let mut asc = WGK[7] * (f_centre - mean).norm();
    for (j, (lo, hi)) in samples.iter().enumerate() {
        asc += WGK[j] * ((lo - mean).norm() + (hi - mean).norm());
    }

    let value = kronrod * half;
    let abs = abs * half.abs();
    let asc = asc * half.abs();
    let mut err = ((kronrod - gauss) * half).norm();
    if asc > 0.0 && err > 0.0 {
        err = asc * (200.0 * err / asc).powf(1.5).min(1.0);
    }
    if abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * abs);
    }

    Ok(Panel {
        a,
        b,
        value,
        err,
        abs,
    })
}

/// Globally adaptive G7K15 integration of `f` over the panels delimited by `breaks`.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below `tol`.
pub fn integrate_panels<F>(mut f: F, breaks: &[f64], tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64) -> Complex64,
{
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", tol, "tolerance must be positive"));
    }
    if breaks.len() < 2 {
        return Err(Error::invalid(
            "breaks",
            breaks.len() as f64,
            "need at least two break points",
        ));
    }

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0usize;
    for w in breaks.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        heap.push(gk15(&mut f, w[0], w[1])?);
        evaluations += 15;
    }

    // Panels narrower than this are not split further.
    let span = breaks
        .iter()
        .fold(0.0f64, |m, &x| m.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    let min_width = (f64::EPSILON * f64::EPSILON * span).max(f64::MIN_POSITIVE);

    let mut subdivisions = 0usize;
    loop {
        let (value, err, abs) = heap
            .iter()
            .fold((Complex64::new(0.0, 0.0), 0.0, 0.0), |(v, e, a), p| {
                (v + p.value, e + p.err, a + p.abs)
            });
        let target = tol.max(100.0 * f64::EPSILON * abs);
        if err <= target {
            return Ok(QuadResult {
                value,
                err_estimate: err,
                evaluations: evaluations.max(1),
            });
        }

        let worst = match heap.pop() {
            Some(p) => p,
            None => {
                return Ok(QuadResult {
                    value,
                    err_estimate: err,
                    evaluations: evaluations.max(1),
                })
            }
        };
        let mid = 0.5 * (worst.a + worst.b);
        let splittable = mid > worst.a.min(worst.b)
            && mid < worst.a.max(worst.b)
            && (worst.b - worst.a).abs() > min_width;
        if subdivisions >= MAX_SUBDIVISIONS || !splittable {
            return Err(Error::QuadratureNonConvergence {
                estimate: value,
                err_estimate: err,
                subdivisions,
            });
        }
        heap.push(gk15(&mut f, worst.a, mid)?);
        heap.push(gk15(&mut f, mid, worst.b)?);
        evaluations += 30;
        subdivisions += 1;
    }
}

/// Adaptive integration of a complex-valued function of a real variable over `[a, b]`.
pub fn integrate_complex<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64) -> Complex64,
{
    integrate_panels(f, &[a, b], tol)
}

/// Adaptive integration of a real function over `[a, b]`.
pub fn integrate<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    integrate_panels(|t| Complex64::new(f(t), 0.0), &[a, b], tol)
}

/// A piece of an integration contour, parametrised by `t ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment {
    Line {
        from: Complex64,
        to: Complex64,
    },
    /// Circular arc `centre + radius·e^{iθ}`, θ running from `start` to `end`.
    Arc {
        centre: Complex64,
        radius: f64,
        start: f64,
        end: f64,
    },
}

impl Segment {
    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => from + (to - from) * t,
            Segment::Arc {
                centre,
                radius,
                start,
                end,
            } => centre + Complex64::from_polar(radius, start + (end - start) * t),
        }
    }

    pub fn derivative(&self, t: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => to - from,
            Segment::Arc {
                radius, start, end, ..
            } => {
                let theta = start + (end - start) * t;
                Complex64::new(0.0, 1.0) * Complex64::from_polar(radius, theta) * (end - start)
            }
        }
    }

    pub fn start(&self) -> Complex64 {
        self.point(0.0)
    }

    pub fn end(&self) -> Complex64 {
        self.point(1.0)
    }

    pub fn reversed(&self) -> Segment {
        match *self {
            Segment::Line { from, to } => Segment::Line { from: to, to: from },
            Segment::Arc {
                centre,
                radius,
                start,
                end,
            } => Segment::Arc {
                centre,
                radius,
                start: end,
                end: start,
            },
        }
    }

    fn is_finite(&self) -> bool {
        let fin = |z: Complex64| z.re.is_finite() && z.im.is_finite();
        match *self {
            Segment::Line { from, to } => fin(from) && fin(to),
            Segment::Arc {
                centre,
                radius,
                start,
                end,
            } => fin(centre) && radius.is_finite() && start.is_finite() && end.is_finite(),
        }
    }
}

/// Integration contour: a chain of segments.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Path {
    segments: Vec<Segment>,
}

impl Path {
    pub fn new() -> Self {
        Self::default()
    }

    /// Straight-line segments through consecutive `vertices`.
    pub fn polyline(vertices: &[Complex64]) -> Self {
        let segments = vertices
            .windows(2)
            .filter(|w| w[0] != w[1])
            .map(|w| Segment::Line {
                from: w[0],
                to: w[1],
            })
            .collect();
        Path { segments }
    }

    pub fn line_to(mut self, to: Complex64) -> Self {
        let from = self.end().unwrap_or(Complex64::new(0.0, 0.0));
        if from != to {
            self.segments.push(Segment::Line { from, to });
        }
        self
    }

    pub fn push(mut self, segment: Segment) -> Self {
        self.segments.push(segment);
        self
    }

    pub fn then(mut self, other: &Path) -> Self {
        self.segments.extend_from_slice(&other.segments);
        self
    }

    pub fn reversed(&self) -> Self {
        Path {
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn start(&self) -> Option<Complex64> {
        self.segments.first().map(Segment::start)
    }

    pub fn end(&self) -> Option<Complex64> {
        self.segments.last().map(Segment::end)
    }
}

/// Integrates `f(ζ) dζ` along `path`; each segment is subdivided adaptively.
///
/// The tolerance is shared evenly across segments.
pub fn integrate_contour<F>(mut f: F, path: &Path, tol: f64) -> Result<QuadResult>
where
    F: FnMut(Complex64) -> Complex64,
{
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", tol, "tolerance must be positive"));
    }
    let n = path.segments.len();
    let mut total = QuadResult {
        value: Complex64::new(0.0, 0.0),
        err_estimate: 0.0,
        evaluations: 1,
    };
    if n == 0 {
        return Ok(total);
    }
    total.evaluations = 0;
    let seg_tol = tol / n as f64;
    for seg in &path.segments {
        if !seg.is_finite() {
            return Err(Error::NonFiniteIntegrand { at: seg.start() });
        }
        let r = integrate_complex(|t| f(seg.point(t)) * seg.derivative(t), 0.0, 1.0, seg_tol)
            .map_err(|e| match e {
                Error::NonFiniteIntegrand { at } => Error::NonFiniteIntegrand {
                    at: seg.point(at.re),
                },
                other => other,
            })?;
        total = total.combine(r);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gk15_is_exact_for_degree_22() {
        // ∫_{-1}^{1} x^22 dx = 2/23
        let r = gk15(&mut |x: f64| c(x.powi(22), 0.0), -1.0, 1.0).unwrap();
        assert!((r.value.re - 2.0 / 23.0).abs() < 1e-15);
    }

    #[test]
    fn constant_over_unit_segment() {
        let r = integrate_contour(
            |_| c(1.0, 0.0),
            &Path::polyline(&[c(0.0, 0.0), c(1.0, 0.0)]),
            1e-12,
        )
        .unwrap();
        assert!((r.value - c(1.0, 0.0)).norm() < 1e-14);
        assert!(r.evaluations >= 1);
    }

    #[test]
    fn reciprocal_over_upper_semicircle() {
        let path = Path::new().push(Segment::Arc {
            centre: c(0.0, 0.0),
            radius: 1.0,
            start: 0.0,
            end: PI,
        });
        let r = integrate_contour(|z| 1.0 / z, &path, 1e-12).unwrap();
        assert!((r.value - c(0.0, PI)).norm() < 1e-10);
    }

    #[test]
    fn sqrt_endpoint_singularity_converges() {
        let r = integrate(|x: f64| x.sqrt(), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.real() - 2.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn log_endpoint_singularity_converges() {
        let r = integrate(|x: f64| x.ln(), 0.0, 1.0, 1e-10).unwrap();
        assert!((r.real() + 1.0).abs() < 1e-9);
    }

    #[test]
    fn nan_reports_point() {
        let path = Path::polyline(&[c(0.0, 0.0), c(0.0, 2.0)]);
        let err = integrate_contour(|_| c(f64::NAN, 0.0), &path, 1e-8).unwrap_err();
        match err {
            Error::NonFiniteIntegrand { at } => {
                assert!(at.re.abs() < 1e-15 && at.im > 0.0 && at.im < 2.0)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_integrable_reports_partial_estimate() {
        let err = integrate(|x: f64| 1.0 / x, 0.0, 1.0, 1e-10).unwrap_err();
        assert!(
            matches!(err, Error::QuadratureNonConvergence { .. }),
            "{err:?}"
        );
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        assert!(integrate(|x| x, 0.0, 1.0, 0.0).is_err());
    }
}
