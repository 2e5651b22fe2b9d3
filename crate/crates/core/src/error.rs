use core::fmt;

use crate::mittag_leffler::EvalResult;

/// Errors raised by the evaluation routines and solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument violates the documented domain of the operation.
    Domain(&'static str),
    /// Γ(x) was requested at a pole (zero or a negative integer).
    GammaPole { x: f64 },
    /// The power series hit `max_terms` before the truncation criterion held.
    /// The best partial sum is carried along.
    SeriesNotConverged { partial: EvalResult },
    /// Doubling the contour nodes moved the value by more than ten times the
    /// combined error estimates.
    ContourUnstable { result: EvalResult, doubled: f64 },
    /// Adaptive quadrature ran out of subdivisions.
    QuadratureNotConverged { estimate: f64, abs_err: f64 },
    /// The tail of the Laplace integral could not be bounded below tolerance.
    TailTruncation { bound: f64, tol: f64 },
    /// A time grid is not strictly increasing or has fewer than two points.
    InvalidGrid(&'static str),
    /// The time-stepping scheme left the admissible band.
    Unstable { index: usize, t: f64, value: f64, step: f64 },
    /// The step-size controller could not meet the local tolerance.
    StepRejected { t: f64, step: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "{msg}"),
            Error::GammaPole { x } => write!(f, "gamma function has a pole at x = {x}"),
            Error::SeriesNotConverged { partial } => write!(
                f,
                "power series did not converge (partial sum {}, last term {:e})",
                partial.value, partial.err_estimate
            ),
            Error::ContourUnstable { result, doubled } => write!(
                f,
                "contour quadrature unstable: {} vs {} with doubled nodes",
                result.value, doubled
            ),
            Error::QuadratureNotConverged { estimate, abs_err } => write!(
                f,
                "adaptive quadrature did not converge (estimate {estimate}, error {abs_err:e})"
            ),
            Error::TailTruncation { bound, tol } => {
                write!(f, "Laplace tail bound {bound:e} exceeds tolerance {tol:e}")
            }
            Error::InvalidGrid(msg) => write!(f, "invalid time grid: {msg}"),
            Error::Unstable { index, t, value, step } => write!(
                f,
                "solution left (-0.1, 1.1) at node {index} (t = {t}, value {value}); \
                 step {step:e} is too coarse"
            ),
            Error::StepRejected { t, step } => {
                write!(f, "step rejected at t = {t}: step {step:e} below minimum")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
