use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use exttype_core::density::CountingFunction;
use exttype_core::witness::{self, test_grid, ZeroConfig};
use exttype_core::{
    classical_bounds, density_profile, eval_defect, eval_phi, jump_at_one, place_zeros,
    pv_residual, scaled_log_modulus, solve_extremal_constant, solve_parameter, trace_boundary,
    ExtremalMap,
};
use num_complex::Complex64;

use crate::args::{parse_complex, Cli, Command, Format, WitnessExport};
use crate::output::{Csv, Json};
use crate::render;

/// Failure classes with distinct exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(exttype_core::Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Numeric(_) => "numeric",
            CliError::Io(_) => "io",
        }
    }

    /// One-line JSON error record.
    pub fn record(&self) -> String {
        let record = serde_json::json!({
            "error": { "kind": self.kind(), "code": self.exit_code(), "message": self.to_string() }
        });
        record.to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Numeric(e) => write!(f, "{e}"),
        }
    }
}

impl From<exttype_core::Error> for CliError {
    fn from(e: exttype_core::Error) -> Self {
        CliError::Numeric(e)
    }
}

type Outcome = Result<String, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn extremal_map(tol: f64) -> Result<ExtremalMap, CliError> {
    let constants = solve_extremal_constant(tol.min(1e-10))?;
    Ok(ExtremalMap::new(constants)?)
}

/// Runs the parsed command and returns the rendered document.
pub fn run(cli: &Cli) -> Outcome {
    if !(cli.sigma > 0.0 && cli.sigma.is_finite()) {
        return Err(usage(format!(
            "--sigma must be positive, got {}",
            cli.sigma
        )));
    }
    if !(cli.tol > 0.0 && cli.tol < 1.0) {
        return Err(usage(format!("--tol must lie in (0, 1), got {}", cli.tol)));
    }
    let format = cli.format.unwrap_or_else(|| cli.command.default_format());
    if !cli.command.accepts(format) {
        return Err(usage(format!(
            "format {} is not available for `{}`",
            format!("{format:?}").to_lowercase(),
            cli.command.name()
        )));
    }

    match &cli.command {
        Command::Constant => constant(cli, format),
        Command::MapEval { z } => map_eval(cli, format, *z),
        Command::CheckPv { k } => check_pv(cli, format, *k),
        Command::Jump { eps } => jump(cli, format, eps),
        Command::Boundary { segment, n } => boundary(cli, format, (*segment).into(), *n),
        Command::DensityProfile { rmin, rmax, n } => profile(cli, format, *rmin, *rmax, *n),
        Command::Witness {
            scale,
            r_max_factor,
            config,
            export,
            thetas,
            radii,
        } => {
            let cfg = match config {
                Some(path) => ZeroConfig::from_json(&read_file(path)?)
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?,
                None => place_zeros(*scale, &extremal_map(cli.tol)?, *r_max_factor)?,
            };
            witness_export(cli, format, &cfg, *export, *thetas, radii)
        }
        Command::Project { zeros, input } => {
            let mut all = zeros.clone();
            if let Some(path) = input {
                for line in read_file(path)?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                {
                    all.push(parse_complex(line).map_err(usage)?);
                }
            }
            project(format, &all)
        }
        Command::RenderRegion { grid_n } => {
            Ok(render::render_region(&extremal_map(cli.tol)?, *grid_n)?)
        }
    }
}

fn key_value_csv(pairs: &[(&'static str, f64)]) -> String {
    let header: Vec<&'static str> = pairs.iter().map(|p| p.0).collect();
    let mut t = Csv::new(&header);
    t.row(pairs.iter().map(|p| p.1).collect());
    t.render()
}

fn flat(format: Format, pairs: &[(&'static str, f64)]) -> String {
    match format {
        Format::Csv => key_value_csv(pairs),
        _ => pairs
            .iter()
            .fold(Json::obj(), |j, (k, v)| j.with(k, *v))
            .render(),
    }
}

fn constant(cli: &Cli, format: Format) -> Outcome {
    let k = solve_extremal_constant(cli.tol)?;
    let bounds = classical_bounds()?;
    let sigma = cli.sigma;
    Ok(flat(
        format,
        &[
            ("c", k.c),
            ("k", k.k),
            ("b", k.b),
            ("defect", eval_defect(k.c)?),
            ("sine_density", bounds.sine_density * sigma),
            ("jensen", bounds.jensen * sigma),
            ("extremal_density", k.c * sigma),
            ("sigma", sigma),
        ],
    ))
}

fn map_eval(cli: &Cli, format: Format, z: Complex64) -> Outcome {
    let w = eval_phi(z, &extremal_map(cli.tol)?)?;
    Ok(flat(
        format,
        &[("z_re", z.re), ("z_im", z.im), ("re", w.re), ("im", w.im)],
    ))
}

fn check_pv(cli: &Cli, format: Format, k: Option<f64>) -> Outcome {
    match k {
        Some(k) => Ok(flat(format, &[("k", k), ("pv_residual", pv_residual(k)?)])),
        None => {
            let k = solve_parameter(cli.tol)?;
            let c = ((k - 1.0) * (k + 1.0)).sqrt();
            Ok(flat(
                format,
                &[
                    ("k", k),
                    ("pv_residual", pv_residual(k)?),
                    ("c", c),
                    ("b", PI * c / 2.0),
                ],
            ))
        }
    }
}

fn jump(cli: &Cli, format: Format, eps: &[f64]) -> Outcome {
    let map = extremal_map(cli.tol)?;
    let j = jump_at_one(&map, eps)?;
    match format {
        Format::Csv => {
            let mut t = Csv::new(&["eps", "integral_jump"]);
            for &(e, v) in &j.table {
                t.row(vec![e, v]);
            }
            Ok(t.render())
        }
        _ => Ok(Json::obj()
            .with("integral_jump", j.integral)
            .with("phi_jump", j.phi)
            .with("pi_c", PI * map.c())
            .with(
                "table",
                j.table
                    .iter()
                    .map(|&(e, v)| Json::obj().with("eps", e).with("jump", v))
                    .collect::<Vec<_>>(),
            )
            .render()),
    }
}

fn boundary(cli: &Cli, format: Format, label: exttype_core::SegmentLabel, n: usize) -> Outcome {
    let trace = trace_boundary(&extremal_map(cli.tol)?, label, n)?;
    match format {
        Format::Csv => {
            let mut t = Csv::new(&["preimage", "re", "im", "residual"]);
            for s in &trace.samples {
                t.row(vec![s.preimage, s.image.re, s.image.im, s.residual]);
            }
            Ok(t.render())
        }
        _ => Ok(Json::obj()
            .with("segment", label.as_str())
            .with("max_residual", trace.max_residual())
            .with(
                "samples",
                trace
                    .samples
                    .iter()
                    .map(|s| {
                        Json::obj()
                            .with("preimage", s.preimage)
                            .with("re", s.image.re)
                            .with("im", s.image.im)
                            .with("residual", s.residual)
                    })
                    .collect::<Vec<_>>(),
            )
            .render()),
    }
}

/// Linear grid on `[rmin, rmax]` with `r = 1` inserted when in range.
pub fn profile_grid(rmin: f64, rmax: f64, n: usize) -> Result<Vec<f64>, CliError> {
    if !(rmin > 0.0 && rmin <= 1.0 && rmax >= 1.0 && rmin < rmax) {
        return Err(usage("need 0 < rmin ≤ 1 ≤ rmax with rmin < rmax"));
    }
    if n < 2 {
        return Err(usage("--n must be at least 2"));
    }
    let mut grid: Vec<f64> = (0..n)
        .map(|i| rmin + (rmax - rmin) * i as f64 / (n - 1) as f64)
        .collect();
    grid.push(1.0);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    Ok(grid)
}

fn profile(cli: &Cli, format: Format, rmin: f64, rmax: f64, n: usize) -> Outcome {
    let grid = profile_grid(rmin, rmax, n)?;
    let p = density_profile(&grid, &extremal_map(cli.tol)?)?;
    let sigma = cli.sigma;
    // f(σz) has n_σ(r) = n(σr): radii shrink by σ, ratios grow by σ.
    let radii: Vec<f64> = p.radii.iter().map(|r| r / sigma).collect();
    let ratio: Vec<f64> = p.ratio.iter().map(|q| q * sigma).collect();
    match format {
        Format::Csv => {
            let mut t = Csv::new(&["r", "n_over_r"]);
            for (r, q) in radii.iter().zip(&ratio) {
                t.row(vec![*r, *q]);
            }
            Ok(t.render())
        }
        _ => Ok(Json::obj()
            .with("r", radii)
            .with("n_over_r", ratio)
            .render()),
    }
}

fn witness_export(
    cli: &Cli,
    format: Format,
    cfg: &ZeroConfig,
    export: WitnessExport,
    n_thetas: usize,
    radii: &[f64],
) -> Outcome {
    match export {
        WitnessExport::Config => {
            if format == Format::Csv {
                let mut t = Csv::new(&["radius"]);
                for &x in &cfg.radii {
                    t.row(vec![x]);
                }
                return Ok(t.render());
            }
            Ok(Json::obj()
                .with("scale", cfg.scale)
                .with("truncation_radius", cfg.truncation_radius)
                .with("radii", cfg.radii.clone())
                .render())
        }
        WitnessExport::Summary => {
            let t = cfg.scale;
            let zeros_at_t = cfg.count_zeros(t);
            let map = extremal_map(cli.tol)?;
            let cf = CountingFunction::from_map(&map);
            Ok(flat(
                format,
                &[
                    ("scale", t),
                    ("pairs", cfg.radii.len() as f64),
                    ("zeros_in_disc_T", zeros_at_t as f64),
                    ("density_at_T", zeros_at_t as f64 / t * cli.sigma),
                    ("extremal_density", cf.atom_mass * cli.sigma),
                ],
            ))
        }
        WitnessExport::Indicator => {
            if n_thetas < 2 {
                return Err(usage("--thetas must be at least 2"));
            }
            let thetas: Vec<f64> = (0..n_thetas)
                .map(|i| 0.01 + (PI - 0.02) * i as f64 / (n_thetas - 1) as f64)
                .collect();
            let profile = witness::indicator_estimate(cfg, &thetas, radii)?;
            let mut t = Csv::new(&["theta", "h_est", "abs_sin"]);
            for (&th, &h) in profile.thetas.iter().zip(&profile.h_est) {
                t.row(vec![th, h * cli.sigma, th.sin().abs() * cli.sigma]);
            }
            match format {
                Format::Csv => Ok(t.render()),
                _ => Ok(Json::obj()
                    .with("theta", profile.thetas.clone())
                    .with(
                        "h_est",
                        profile
                            .h_est
                            .iter()
                            .map(|h| h * cli.sigma)
                            .collect::<Vec<_>>(),
                    )
                    .with("radii", profile.radii_used.clone())
                    .render()),
            }
        }
        WitnessExport::Modulus => {
            let map = extremal_map(cli.tol)?;
            let mut t = Csv::new(&["re", "im", "v_t", "im_phi", "deviation"]);
            let mut worst: f64 = 0.0;
            for z in test_grid(0.3, 3.0, 0.25) {
                let v = scaled_log_modulus(cfg, z);
                let target = eval_phi(z, &map)?.im;
                worst = worst.max((v - target).abs());
                t.row(vec![z.re, z.im, v, target, (v - target).abs()]);
            }
            match format {
                Format::Csv => Ok(t.render()),
                _ => Ok(Json::obj()
                    .with("scale", cfg.scale)
                    .with("max_deviation", worst)
                    .render()),
            }
        }
    }
}

fn project(format: Format, zeros: &[Complex64]) -> Outcome {
    let moduli = witness::radial_project(zeros);
    let preserved = moduli
        .iter()
        .all(|&r| witness::planar_count(zeros, r) == moduli.partition_point(|&m| m <= r));
    match format {
        Format::Csv => {
            let mut t = Csv::new(&["modulus"]);
            for &m in &moduli {
                t.row(vec![m]);
            }
            Ok(t.render())
        }
        _ => Ok(Json::obj()
            .with("moduli", moduli)
            .with("counts_preserved", preserved)
            .render()),
    }
}
