//! The extremal conformal map
//!
//! ```text
//! φ₀(z) = ½ ∫₀^{z²} √(ζ − k²)/(ζ − 1) dζ
//! ```
//!
//! from the upper half-plane onto the plane minus three vertical rays
//! `{Re = 0, ±b; Im ≤ 0}` with the real half-lines `|Re| ≥ b` as the rest of
//! the boundary. `√(ζ − k²)` takes its principal branch, cut along
//! `(−∞, k²]`, with value `+i√(k² − ζ)` on the upper edge of the cut. That is
//! the analytic continuation of φ₀ for `Re z ≥ 0`; the left quadrant is
//! reached through `φ₀(−z̄) = −conj φ₀(z)`.
//!
//! Boundary values on the real axis are limits from the upper half-plane; at
//! `x = 1` the real part jumps and [`crate::density`] uses the right limit.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::ExtremalConstants;
use crate::error::{Error, Result};
use crate::numerics::{
    find_root, integrate, integrate_contour, principal_value, Bracket, Path, QuadResult, Segment,
};

/// Quadrature tolerance used by [`ExtremalMap::new`].
pub const DEFAULT_MAP_TOL: f64 = 1e-12;

/// Bracket for the parameter problem in `k`.
pub const PARAMETER_BRACKET: (f64, f64) = (1.2, 3.0);

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Where `√(ζ − k²)` is cut and which edge is used on the cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum BranchConvention {
    /// Cut along `(−∞, k²]`; the upper-edge value `+i√(k² − ζ)` is used on it.
    #[default]
    UpperEdgeOfLeftCut,
}

impl fmt::Display for BranchConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchConvention::UpperEdgeOfLeftCut => f.write_str(
                "sqrt(zeta - k^2) cut along (-inf, k^2], +i*sqrt(k^2 - zeta) on the upper edge",
            ),
        }
    }
}

/// Principal square root, taking the upper-edge value `+i√|w|` on the
/// negative real axis regardless of the sign of zero.
pub fn sqrt_upper(w: Complex64) -> Complex64 {
    if w.im == 0.0 && w.re < 0.0 {
        Complex64::new(0.0, (-w.re).sqrt())
    } else {
        w.sqrt()
    }
}

/// Evaluator for φ₀. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremalMap {
    constants: ExtremalConstants,
    branch_convention: BranchConvention,
    pole_detour_radius: f64,
    quad_tol: f64,
    lift_height: f64,
}

impl ExtremalMap {
    pub fn new(constants: ExtremalConstants) -> Result<Self> {
        let k2 = constants.k * constants.k;
        ExtremalMap {
            constants,
            branch_convention: BranchConvention::default(),
            pole_detour_radius: 0.25 * (k2 - 1.0).min(1.0),
            quad_tol: DEFAULT_MAP_TOL,
            lift_height: 1.0,
        }
        .validated()
    }

    /// Radius of the semicircle around `ζ = 1` on the real-axis route.
    pub fn with_detour_radius(mut self, radius: f64) -> Result<Self> {
        self.pole_detour_radius = radius;
        self.validated()
    }

    pub fn with_quad_tol(mut self, tol: f64) -> Result<Self> {
        self.quad_tol = tol;
        self.validated()
    }

    /// Height of the horizontal leg of the lifted integration path.
    pub fn with_lift_height(mut self, height: f64) -> Result<Self> {
        self.lift_height = height;
        self.validated()
    }

    fn validated(self) -> Result<Self> {
        let k = self.constants.k;
        if !(k > 1.0 && k.is_finite()) {
            return Err(Error::invalid("k", k, "must exceed 1"));
        }
        let limit = 0.5 * (k * k - 1.0).min(1.0);
        if !(self.pole_detour_radius > 0.0 && self.pole_detour_radius < limit) {
            return Err(Error::invalid(
                "pole_detour_radius",
                self.pole_detour_radius,
                "must lie in (0, min(1, k² − 1)/2)",
            ));
        }
        if !(self.quad_tol > 0.0) {
            return Err(Error::invalid(
                "quad_tol",
                self.quad_tol,
                "must be positive",
            ));
        }
        if !(self.lift_height > 0.0 && self.lift_height.is_finite()) {
            return Err(Error::invalid(
                "lift_height",
                self.lift_height,
                "must be positive",
            ));
        }
        Ok(self)
    }

    pub fn constants(&self) -> &ExtremalConstants {
        &self.constants
    }

    pub fn branch_convention(&self) -> BranchConvention {
        self.branch_convention
    }

    pub fn pole_detour_radius(&self) -> f64 {
        self.pole_detour_radius
    }

    pub fn quad_tol(&self) -> f64 {
        self.quad_tol
    }

    pub fn k(&self) -> f64 {
        self.constants.k
    }

    pub fn c(&self) -> f64 {
        self.constants.c
    }

    /// Slit abscissa `b = πc/2`.
    pub fn b(&self) -> f64 {
        self.constants.b
    }

    /// `√(ζ − k²)/(ζ − 1)` under the map's branch convention.
    pub fn integrand(&self, zeta: Complex64) -> Complex64 {
        let k2 = self.constants.k * self.constants.k;
        sqrt_upper(zeta - k2) / (zeta - 1.0)
    }

    /// Lifted path from 0 to `w` (Im w ≥ 0): up to height `H`, across, and
    /// straight down onto `w`, so it stays clear of the pole and the cut.
    pub fn lifted_path(&self, w: Complex64) -> Path {
        let h = self.lift_height;
        let up = Complex64::new(0.0, h);
        if w.im >= h {
            Path::polyline(&[Complex64::new(0.0, 0.0), up, w])
        } else {
            Path::polyline(&[Complex64::new(0.0, 0.0), up, Complex64::new(w.re, h), w])
        }
    }

    /// `∫₀^w √(ζ − k²)/(ζ − 1) dζ` along [`Self::lifted_path`], without the ½.
    pub fn integral_to(&self, w: Complex64) -> Result<QuadResult> {
        check_finite(w)?;
        if w.im < 0.0 {
            return Err(Error::invalid(
                "Im w",
                w.im,
                "target must lie in the closed upper half-plane",
            ));
        }
        if w == Complex64::new(1.0, 0.0) {
            return Err(Error::SingularPoint { point: w });
        }
        integrate_contour(
            |zeta| self.integrand(zeta),
            &self.lifted_path(w),
            self.quad_tol,
        )
    }

    /// Same integral along an arbitrary path (must avoid the pole and cut).
    pub fn integral_along(&self, path: &Path) -> Result<QuadResult> {
        integrate_contour(|zeta| self.integrand(zeta), path, self.quad_tol)
    }

    /// φ₀ at `z`; see [`eval_phi`].
    pub fn phi(&self, z: Complex64) -> Result<Complex64> {
        eval_phi(z, self)
    }

    /// φ₀ on the positive real axis through the real-axis route: straight
    /// along `[0, x²]` with a semicircular detour above `ζ = 1` and the
    /// band-edge substitutions `ζ = k² ∓ s²` near `k²`.
    pub fn phi_real_axis(&self, x: f64) -> Result<Complex64> {
        if !(x >= 0.0 && x.is_finite()) {
            return Err(Error::invalid("x", x, "real-axis route needs x ≥ 0"));
        }
        if x == 1.0 {
            return Err(Error::SingularPoint {
                point: Complex64::new(1.0, 0.0),
            });
        }
        if x == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let k2 = self.constants.k * self.constants.k;
        let c2 = k2 - 1.0;
        let w = x * x;
        let tol = self.quad_tol / 4.0;
        let slit = |t: f64| (k2 - t).sqrt() / (t - 1.0);

        if w < 1.0 {
            let a = integrate(slit, 0.0, w, tol)?;
            return Ok(0.5 * I * a.real());
        }

        let rho = self.pole_detour_radius.min(0.5 * (w - 1.0));
        let below = integrate(slit, 0.0, 1.0 - rho, tol)?.real();
        let detour = integrate_contour(
            |zeta| self.integrand(zeta),
            &Path::new().push(Segment::Arc {
                centre: Complex64::new(1.0, 0.0),
                radius: rho,
                start: PI,
                end: 0.0,
            }),
            tol,
        )?
        .value;

        // (1 + ρ, min(w, k²)) with ζ = k² − s²: √(k² − ζ)/(ζ − 1) dζ → 2s²/(c² − s²) ds.
        let s_hi = (c2 - rho).sqrt();
        let s_lo = (k2 - w).max(0.0).sqrt();
        let above = if s_lo < s_hi {
            integrate(|s| 2.0 * s * s / (c2 - s * s), s_lo, s_hi, tol)?.real()
        } else {
            0.0
        };

        // (k², w) with ζ = k² + s²: √(ζ − k²)/(ζ − 1) dζ → 2s²/(c² + s²) ds.
        let tail = if w > k2 {
            integrate(|s| 2.0 * s * s / (c2 + s * s), 0.0, (w - k2).sqrt(), tol)?.real()
        } else {
            0.0
        };

        Ok(0.5 * (I * (below + above) + detour + tail))
    }
}

fn check_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("z", f64::NAN, "point must be finite"))
    }
}

/// φ₀(z) for `z` in the closed upper half-plane, `z ≠ ±1`.
///
/// Real points go through the real-axis route, others through the lifted
/// path in the ζ-plane; points with `Re z < 0` use the odd reflection.
pub fn eval_phi(z: Complex64, map: &ExtremalMap) -> Result<Complex64> {
    check_finite(z)?;
    if z.im < 0.0 {
        return Err(Error::invalid(
            "Im z",
            z.im,
            "φ₀ is evaluated in the closed upper half-plane",
        ));
    }
    if z.im == 0.0 && z.re.abs() == 1.0 {
        return Err(Error::SingularPoint { point: z });
    }
    if z.re < 0.0 {
        let mirrored = Complex64::new(-z.re, z.im);
        return eval_phi(mirrored, map).map(|w| -w.conj());
    }
    if z.im == 0.0 {
        return map.phi_real_axis(z.re);
    }
    map.integral_to(z * z).map(|q| 0.5 * q.value)
}

/// `p.v. ∫₀^{k²} √(k² − ζ)/(ζ − 1) dζ`, the imaginary part of the map
/// integral on the upper edge of the cut. Vanishes at the extremal `k`.
pub fn pv_residual(k: f64) -> Result<f64> {
    if !(k > 1.0 && k.is_finite()) {
        return Err(Error::invalid("k", k, "parameter problem needs k > 1"));
    }
    let k2 = k * k;
    let c2 = k2 - 1.0;
    let tol = 1e-13;
    // Pole part on [0, m], band edge on [m, k²] with ζ = k² − s².
    let m = 0.5 * (1.0 + k2);
    let near_pole = principal_value(|t| (k2 - t).sqrt() / (t - 1.0), 0.0, m, 1.0, tol)?;
    let edge = integrate(|s| 2.0 * s * s / (c2 - s * s), 0.0, (k2 - m).sqrt(), tol)?;
    Ok(near_pole.real() + edge.real())
}

/// Root `k*` of [`pv_residual`] in [`PARAMETER_BRACKET`].
pub fn solve_parameter(tol: f64) -> Result<f64> {
    let bracket = Bracket::new(PARAMETER_BRACKET.0, PARAMETER_BRACKET.1)?;
    find_root(|k| pv_residual(k).unwrap_or(f64::NAN), bracket, tol)
}

/// Jump of the real part across `ζ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jump {
    /// Jump of `Re ∫₀^{x²}` (no ½ factor); πc for the extremal map.
    pub integral: f64,
    /// Jump of `Re φ₀`, half of the above.
    pub phi: f64,
    /// `(ε, Re ∫₀^{(1+ε)²} − Re ∫₀^{(1−ε)²})` for each ε used.
    pub table: Vec<(f64, f64)>,
}

/// Extrapolated jump of the map integral at `x = 1`.
pub fn jump_at_one(map: &ExtremalMap, eps_sequence: &[f64]) -> Result<Jump> {
    jump_of(|zeta| map.integrand(zeta), map, eps_sequence)
}

/// Jump at `x = 1` for an arbitrary integrand, integrated along the map's
/// lifted paths. ε → 0 is reached by polynomial (Neville) extrapolation.
pub fn jump_of<F>(integrand: F, map: &ExtremalMap, eps_sequence: &[f64]) -> Result<Jump>
where
    F: Fn(Complex64) -> Complex64,
{
    if eps_sequence.len() < 2 {
        return Err(Error::invalid(
            "eps_sequence",
            eps_sequence.len() as f64,
            "need at least two ε values",
        ));
    }
    for pair in eps_sequence.windows(2) {
        if !(pair[1] < pair[0]) {
            return Err(Error::invalid(
                "eps_sequence",
                pair[1],
                "ε must be decreasing",
            ));
        }
    }
    if let Some(&bad) = eps_sequence.iter().find(|&&e| !(e > 0.0 && e < 1.0)) {
        return Err(Error::invalid("eps", bad, "ε must lie in (0, 1)"));
    }

    let mut table = Vec::with_capacity(eps_sequence.len());
    for &eps in eps_sequence {
        let right = Complex64::new((1.0 + eps) * (1.0 + eps), 0.0);
        let left = Complex64::new((1.0 - eps) * (1.0 - eps), 0.0);
        let hi = integrate_contour(&integrand, &map.lifted_path(right), map.quad_tol)?;
        let lo = integrate_contour(&integrand, &map.lifted_path(left), map.quad_tol)?;
        table.push((eps, hi.value.re - lo.value.re));
    }

    let (value, change) = neville_at_zero(&table);
    let scale = value.abs().max(1.0);
    if !(change <= 1e-6 * scale) {
        return Err(Error::JumpExtrapolation { table });
    }
    Ok(Jump {
        integral: value,
        phi: 0.5 * value,
        table,
    })
}

/// Value at 0 of the interpolating polynomial through `table`, and its change
/// when the smallest-ε entry is added.
fn neville_at_zero(table: &[(f64, f64)]) -> (f64, f64) {
    let full = interpolate_at_zero(table);
    let coarse = interpolate_at_zero(&table[..table.len() - 1]);
    (full, (full - coarse).abs())
}

fn interpolate_at_zero(points: &[(f64, f64)]) -> f64 {
    let mut p: Vec<f64> = points.iter().map(|q| q.1).collect();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            let (xi, xj) = (points[i].0, points[i + m].0);
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    p[0]
}

/// Boundary pieces of the extremal region in the right half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SegmentLabel {
    /// Preimages in (0, 1); images on `{Re = 0, Im ≤ 0}`.
    CentralSlit,
    /// Preimages in (1, k); images on `{Re = b, Im ≤ 0}`.
    RightSlitEdge,
    /// Preimages in (k, 3k); images on `{Im = 0, Re ≥ b}`.
    RealAxisTail,
}

impl SegmentLabel {
    pub const ALL: [SegmentLabel; 3] = [
        SegmentLabel::CentralSlit,
        SegmentLabel::RightSlitEdge,
        SegmentLabel::RealAxisTail,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SegmentLabel::CentralSlit => "central-slit",
            SegmentLabel::RightSlitEdge => "right-slit-edge",
            SegmentLabel::RealAxisTail => "real-axis-tail",
        }
    }

    /// Sampled preimage interval.
    pub fn preimage_interval(&self, k: f64) -> (f64, f64) {
        match self {
            SegmentLabel::CentralSlit => (0.0, 1.0),
            SegmentLabel::RightSlitEdge => (1.0, k),
            SegmentLabel::RealAxisTail => (k, 3.0 * k),
        }
    }

    /// Distance from `w` to this boundary component.
    pub fn distance(&self, w: Complex64, b: f64) -> f64 {
        match self {
            SegmentLabel::CentralSlit => vertical_ray_distance(w, 0.0),
            SegmentLabel::RightSlitEdge => vertical_ray_distance(w, b),
            SegmentLabel::RealAxisTail => {
                if w.re >= b {
                    w.im.abs()
                } else {
                    (w - b).norm()
                }
            }
        }
    }
}

impl fmt::Display for SegmentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SegmentLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        SegmentLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| format!("unknown boundary segment `{s}`"))
    }
}

// Distance to {Re = x0, Im ≤ 0}.
fn vertical_ray_distance(w: Complex64, x0: f64) -> f64 {
    if w.im <= 0.0 {
        (w.re - x0).abs()
    } else {
        Complex64::new(w.re - x0, w.im).norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundarySample {
    pub preimage: f64,
    pub image: Complex64,
    /// Distance from `image` to the labelled boundary component.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryTrace {
    pub label: SegmentLabel,
    pub samples: Vec<BoundarySample>,
}

impl BoundaryTrace {
    pub fn max_residual(&self) -> f64 {
        self.samples.iter().map(|s| s.residual).fold(0.0, f64::max)
    }
}

/// Samples φ₀ at `n` midpoints of the labelled preimage interval.
pub fn trace_boundary(map: &ExtremalMap, label: SegmentLabel, n: usize) -> Result<BoundaryTrace> {
    if n < 8 {
        return Err(Error::invalid("n", n as f64, "need at least 8 samples"));
    }
    let (lo, hi) = label.preimage_interval(map.k());
    let b = map.b();
    let samples = (0..n)
        .map(|i| {
            let x = lo + (hi - lo) * (i as f64 + 0.5) / n as f64;
            let image = eval_phi(Complex64::new(x, 0.0), map)?;
            Ok(BoundarySample {
                preimage: x,
                image,
                residual: label.distance(image, b),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryTrace { label, samples })
}
