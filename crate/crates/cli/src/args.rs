use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use exttype_core::SegmentLabel;
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(
    name = "exttype",
    version,
    about = "Extremal zero density for entire functions with indicator diagram in [-iσ, iσ]"
)]
pub struct Cli {
    /// Width parameter σ of the indicator diagram; densities are reported per this σ.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub sigma: f64,

    /// Solver tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,

    /// Output file (stdout when omitted).
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Output format; defaults to svg for render-region and json otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Segment {
    CentralSlit,
    RightSlitEdge,
    RealAxisTail,
}

impl From<Segment> for SegmentLabel {
    fn from(s: Segment) -> Self {
        match s {
            Segment::CentralSlit => SegmentLabel::CentralSlit,
            Segment::RightSlitEdge => SegmentLabel::RightSlitEdge,
            Segment::RealAxisTail => SegmentLabel::RealAxisTail,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessExport {
    /// The zero configuration itself ({"scale", "truncation_radius", "radii"}).
    Config,
    /// Density at the critical radius and size figures.
    Summary,
    /// Indicator estimates over a θ grid.
    Indicator,
    /// Scaled log-modulus against Im φ₀ on the test grid.
    Modulus,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for c and report k, b and the classical bounds.
    Constant,
    /// Evaluate φ₀ at a point of the closed upper half-plane.
    MapEval {
        /// Point as `a+bi` / `a-bi` (no spaces).
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
    },
    /// Principal-value residual of the map condition; solves for k when --k is omitted.
    CheckPv {
        #[arg(long)]
        k: Option<f64>,
    },
    /// Real-part jump of the map integral at x = 1.
    Jump {
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.05, 0.025, 0.0125])]
        eps: Vec<f64>,
    },
    /// Boundary correspondence on one segment of the real axis.
    Boundary {
        #[arg(long, value_enum)]
        segment: Segment,
        #[arg(long, default_value_t = 16)]
        n: usize,
    },
    /// n(r)/r of the extremal measure on a linear grid (r = 1 is always included).
    DensityProfile {
        #[arg(long, default_value_t = 0.5)]
        rmin: f64,
        #[arg(long, default_value_t = 50.0)]
        rmax: f64,
        #[arg(long, default_value_t = 200)]
        n: usize,
    },
    /// Build or load a near-extremal zero configuration and export diagnostics.
    Witness {
        /// Scale T.
        #[arg(long = "scale", short = 'T', default_value_t = 100.0)]
        scale: f64,
        #[arg(long, default_value_t = exttype_core::witness::DEFAULT_R_MAX_FACTOR)]
        r_max_factor: f64,
        /// Load the configuration from a JSON file instead of building it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = WitnessExport::Config)]
        export: WitnessExport,
        /// Number of θ samples in (0, π) for the indicator export.
        #[arg(long, default_value_t = 64)]
        thetas: usize,
        /// Scaled radii for the indicator export.
        #[arg(long, value_delimiter = ',', default_values_t = [2.0, 3.0, 4.0, 6.0, 8.0])]
        radii: Vec<f64>,
    },
    /// Radial projection of a finite zero set.
    Project {
        /// Comma-separated zeros, e.g. `1+1i,-2`.
        #[arg(long, value_delimiter = ',', value_parser = parse_complex, allow_hyphen_values = true)]
        zeros: Vec<Complex64>,
        /// File with one zero per line (same syntax).
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// SVG of the extremal region with the image of a half-plane grid.
    RenderRegion {
        /// Grid lines per unit direction; 0 draws the boundary only.
        #[arg(long, default_value_t = 12)]
        grid_n: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Constant => "constant",
            Command::MapEval { .. } => "map-eval",
            Command::CheckPv { .. } => "check-pv",
            Command::Jump { .. } => "jump",
            Command::Boundary { .. } => "boundary",
            Command::DensityProfile { .. } => "density-profile",
            Command::Witness { .. } => "witness",
            Command::Project { .. } => "project",
            Command::RenderRegion { .. } => "render-region",
        }
    }

    pub fn default_format(&self) -> Format {
        match self {
            Command::RenderRegion { .. } => Format::Svg,
            _ => Format::Json,
        }
    }

    pub fn accepts(&self, format: Format) -> bool {
        match self {
            Command::RenderRegion { .. } => format == Format::Svg,
            _ => format != Format::Svg,
        }
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (also `i`, `-i`, exponents in parts).
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s = text.trim();
    if s.is_empty() || s.contains(char::is_whitespace) {
        return Err(format!("`{text}` is not of the form a+bi"));
    }
    let bad = || format!("`{text}` is not of the form a+bi");
    let imag = |part: &str| -> Result<f64, String> {
        let coeff = part.strip_suffix('i').ok_or_else(bad)?;
        match coeff {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            c => c.parse::<f64>().map_err(|_| bad()),
        }
    };

    if !s.ends_with('i') {
        return s
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    }
    // Split at the last sign that is not the leading one or part of an exponent.
    let bytes = s.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let re = s[..i].parse::<f64>().map_err(|_| bad())?;
            Ok(Complex64::new(re, imag(&s[i..])?))
        }
        None => Ok(Complex64::new(0.0, imag(s)?)),
    }
}
