//! SVG drawing of the extremal region and of a mapped half-plane grid.

use std::fmt::Write as _;

use exttype_core::{eval_phi, ExtremalMap, Result};
use num_complex::Complex64;

use crate::output::sig12;

/// Extent of the preimage grid: `Re z ∈ [−PREIMAGE_HALF_WIDTH, ·]`,
/// `Im z ∈ (0, PREIMAGE_HEIGHT]`.
pub const PREIMAGE_HALF_WIDTH: f64 = 3.0;
pub const PREIMAGE_HEIGHT: f64 = 3.0;

const PX_PER_UNIT: f64 = 60.0;
const VIEW_DEPTH: f64 = 6.0;

/// Images under φ₀ of the horizontal and vertical lines of an `n × n` grid
/// in the upper half-plane. Each inner vector is one mapped grid line.
pub fn grid_images(map: &ExtremalMap, n: usize) -> Result<Vec<Vec<Complex64>>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let xs: Vec<f64> = (0..=2 * n)
        .map(|i| -PREIMAGE_HALF_WIDTH + PREIMAGE_HALF_WIDTH * i as f64 / n as f64)
        .collect();
    let ys: Vec<f64> = (1..=n)
        .map(|j| PREIMAGE_HEIGHT * j as f64 / n as f64)
        .collect();

    let mut lines = Vec::with_capacity(xs.len() + ys.len());
    for &y in &ys {
        lines.push(
            xs.iter()
                .map(|&x| eval_phi(Complex64::new(x, y), map))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    for &x in &xs {
        lines.push(
            ys.iter()
                .map(|&y| eval_phi(Complex64::new(x, y), map))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(lines)
}

/// SVG document with the boundary rays `{Re = 0, ±b; Im ≤ 0}`,
/// `{Im = 0, |Re| ≥ b}` and the mapped grid lines.
pub fn render_region(map: &ExtremalMap, grid_n: usize) -> Result<String> {
    let b = map.b();
    let half_width = b + 3.0;
    let top = PREIMAGE_HEIGHT + 1.0;
    let lines = grid_images(map, grid_n)?;

    let px = |w: Complex64| {
        (
            (w.re + half_width) * PX_PER_UNIT,
            (top - w.im) * PX_PER_UNIT,
        )
    };
    let width = 2.0 * half_width * PX_PER_UNIT;
    let height = (top + VIEW_DEPTH) * PX_PER_UNIT;

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" data-b="{b}">"#,
        w = sig12(width),
        h = sig12(height),
        b = sig12(b),
    )
    .unwrap();
    svg.push_str("  <title>Extremal region</title>\n");
    svg.push_str(
        r#"  <clipPath id="view"><rect x="0" y="0" width="100%" height="100%"/></clipPath>"#,
    );
    svg.push('\n');

    svg.push_str(r#"  <g id="boundary" stroke="black" stroke-width="2" fill="none">"#);
    svg.push('\n');
    let rays = [
        (
            "central-slit",
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -VIEW_DEPTH),
        ),
        (
            "right-slit",
            Complex64::new(b, 0.0),
            Complex64::new(b, -VIEW_DEPTH),
        ),
        (
            "left-slit",
            Complex64::new(-b, 0.0),
            Complex64::new(-b, -VIEW_DEPTH),
        ),
        (
            "right-axis",
            Complex64::new(b, 0.0),
            Complex64::new(half_width, 0.0),
        ),
        (
            "left-axis",
            Complex64::new(-b, 0.0),
            Complex64::new(-half_width, 0.0),
        ),
    ];
    for (id, from, to) in rays {
        let (x1, y1) = px(from);
        let (x2, y2) = px(to);
        writeln!(
            svg,
            r#"    <line id="{id}" data-re="{re}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            sig12(x1),
            sig12(y1),
            sig12(x2),
            sig12(y2),
            re = sig12(from.re),
        )
        .unwrap();
    }
    svg.push_str("  </g>\n");

    svg.push_str(
        r##"  <g id="grid" stroke="#3366aa" stroke-width="1" fill="none" clip-path="url(#view)">"##,
    );
    svg.push('\n');
    for line in &lines {
        let points: Vec<String> = line
            .iter()
            .map(|&w| {
                // Keep coordinates bounded near the logarithmic poles at z = ±1.
                let w = Complex64::new(w.re, w.im.max(-10.0 * VIEW_DEPTH));
                let (x, y) = px(w);
                format!("{},{}", sig12(x), sig12(y))
            })
            .collect();
        writeln!(svg, r#"    <polyline points="{}"/>"#, points.join(" ")).unwrap();
    }
    svg.push_str("  </g>\n</svg>\n");
    Ok(svg)
}
