use num_complex::Complex64;
use thiserror::Error;

/// Failures raised by the numerical kernel and the layers built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (partial estimate {estimate}, error estimate {err_estimate:e})"
    )]
    QuadratureNonConvergence {
        estimate: Complex64,
        err_estimate: f64,
        subdivisions: usize,
    },

    #[error("integrand is not finite at {at}")]
    NonFiniteIntegrand { at: Complex64 },

    #[error("pole {pole} is not strictly inside ({a}, {b})")]
    PoleNotInterior { a: f64, b: f64, pole: f64 },

    #[error("no sign change on [{lo}, {hi}]: F(lo) = {f_lo:e}, F(hi) = {f_hi:e}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("root finder did not converge in {iterations} iterations (last bracket [{lo}, {hi}])")]
    RootNonConvergence { iterations: usize, lo: f64, hi: f64 },

    #[error("circle mean on radius {radius}: non-finite sample at angle {theta}")]
    NonFiniteSample { radius: f64, theta: f64 },

    #[error("circle mean on radius {radius} did not converge (last difference {difference:e})")]
    CircleMeanNonConvergence { radius: f64, difference: f64 },

    #[error("jump extrapolation did not converge; table (eps, jump): {table:?}")]
    JumpExtrapolation { table: Vec<(f64, f64)> },

    #[error("quantile inversion failed at mass {mass}")]
    QuantileInversion { mass: f64 },

    #[error("{point} is a singular point of the map")]
    SingularPoint { point: Complex64 },

    #[error("invalid argument `{name}` = {value}: {reason}")]
    InvalidArgument {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidArgument {
            name,
            value,
            reason,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
