//! Two-parameter Mittag-Leffler function E_{α,β}(z) on the real half-line z ≤ 0.
//!
//! E_{α,β}(z) = Σ_{n≥0} z^n / Γ(αn + β), restricted here to 0 < α ≤ 1,
//! β > 0 and z ≤ 0. Four routes are available:
//!
//! * [`ml_series`]: the defining power series with compensated summation.
//!   Accurate while the alternating terms do not cancel catastrophically,
//!   roughly |z|^{1/α} ≲ 12.
//! * [`ml_asymptotic`]: the algebraic expansion −Σ_{k≥1} z^{−k}/Γ(β − αk)
//!   with optimal truncation, valid for α < 1 and large |z|^{1/α}.
//! * [`ml_spectral`]: a real integral along the collapsed Hankel contour
//!   whose integrand has no cancellation; covers the band where neither
//!   of the above reaches the target accuracy.
//! * [`ml_contour`]: trapezoidal inversion of the Laplace transform
//!   s^{α−β}/(s^α − z) on a parabolic contour. Kept as an independent
//!   reference and never used by [`ml_eval`].
//!
//! [`ml_eval`] picks among the first three by their a posteriori error
//! estimates, with α = β = 1 short-circuited to `exp`.

mod asymptotic;
mod contour;
mod series;
mod spectral;

pub use asymptotic::ml_asymptotic;
pub use contour::ml_contour;
pub use series::ml_series;
pub use spectral::ml_spectral;

use crate::error::{Error, Result};

/// Rounding allowance applied on top of every truncation estimate.
pub(crate) const ROUNDING_ULPS: f64 = 10.0 * f64::EPSILON;

/// The index pair (α, β).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlParams {
    alpha: f64,
    beta: f64,
}

impl MlParams {
    /// Requires 0 < α ≤ 1 and β > 0.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Domain("alpha must lie in (0, 1]"));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::Domain("beta must be positive"));
        }
        Ok(Self { alpha, beta })
    }

    /// The one-parameter function E_α (β = 1).
    pub fn one(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn is_exponential(&self) -> bool {
        self.alpha == 1.0 && self.beta == 1.0
    }
}

/// Which evaluation route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Series,
    Asymptotic,
    /// Real-axis integral representation (collapsed Hankel contour).
    Spectral,
    Contour,
    ClosedForm,
}

impl core::fmt::Display for Regime {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let s = match self {
            Regime::Series => "Series",
            Regime::Asymptotic => "Asymptotic",
            Regime::Spectral => "Spectral",
            Regime::Contour => "Contour",
            Regime::ClosedForm => "ClosedForm",
        };
        f.write_str(s)
    }
}

/// Non-fatal conditions attached to an otherwise usable result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalWarning {
    /// Asymptotic terms stopped decreasing before the requested count;
    /// only `used_terms` were summed.
    TruncationNotOptimal { used_terms: usize },
    /// No route met `target_abs_err`; the most accurate one was returned.
    TargetMissed,
}

/// A value with an absolute error bound claim and its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub err_estimate: f64,
    pub regime: Regime,
    pub warning: Option<EvalWarning>,
}

impl EvalResult {
    pub(crate) fn new(value: f64, err_estimate: f64, regime: Regime) -> Self {
        Self { value, err_estimate, regime, warning: None }
    }
}

/// Tunables for the evaluation routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Relative truncation threshold for the power series.
    pub series_tol: f64,
    /// |z| below which the power series is tried first.
    pub crossover_radius: f64,
    pub max_terms: usize,
    /// Cap on the number of asymptotic terms.
    pub asymptotic_terms: usize,
    pub contour_nodes: usize,
    /// A route whose error estimate is at or below this is accepted by [`ml_eval`].
    pub target_abs_err: f64,
    /// Absolute tolerance for the spectral integral.
    pub quad_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            series_tol: 1e-16,
            crossover_radius: 5.0,
            max_terms: 500,
            asymptotic_terms: 60,
            contour_nodes: 32,
            target_abs_err: 1e-12,
            quad_tol: 1e-15,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.series_tol > 0.0) {
            return Err(Error::Domain("series_tol must be positive"));
        }
        if !(self.crossover_radius > 0.0) {
            return Err(Error::Domain("crossover_radius must be positive"));
        }
        if self.max_terms < 2 {
            return Err(Error::Domain("max_terms must be at least 2"));
        }
        if self.asymptotic_terms < 1 {
            return Err(Error::Domain("asymptotic_terms must be at least 1"));
        }
        if self.contour_nodes < 16 {
            return Err(Error::Domain("contour_nodes must be at least 16"));
        }
        if !(self.target_abs_err > 0.0) || !(self.quad_tol > 0.0) {
            return Err(Error::Domain("tolerances must be positive"));
        }
        Ok(())
    }
}

pub(crate) fn check_nonpositive(z: f64) -> Result<()> {
    if z.is_nan() {
        return Err(Error::Domain("z is NaN"));
    }
    if z > 0.0 {
        return Err(Error::Domain("z must be ≤ 0"));
    }
    Ok(())
}

/// E_{α,β}(z) for z ≤ 0, choosing the route by a posteriori error.
///
/// The route tried first depends on |z| against `crossover_radius`; the
/// other expansion is tried next and the spectral integral last. The first
/// result with `err_estimate ≤ target_abs_err` is returned, otherwise the
/// one with the smallest estimate, flagged [`EvalWarning::TargetMissed`].
pub fn ml_eval(params: MlParams, z: f64, cfg: &SolverConfig) -> Result<EvalResult> {
    check_nonpositive(z)?;
    if params.is_exponential() {
        let v = libm::exp(z);
        return Ok(EvalResult::new(v, ROUNDING_ULPS * v, Regime::ClosedForm));
    }
    if z == 0.0 {
        return ml_series(params, z, cfg);
    }

    let fractional = params.alpha < 1.0;
    let series_first = libm::fabs(z) < cfg.crossover_radius || !fractional;
    let mut best: Option<EvalResult> = None;
    let consider = |candidate: Result<EvalResult>, best: &mut Option<EvalResult>| -> Option<EvalResult> {
        let r = match candidate {
            Ok(r) => r,
            Err(Error::SeriesNotConverged { partial }) => partial,
            Err(_) => return None,
        };
        if !r.value.is_finite() || !r.err_estimate.is_finite() {
            return None;
        }
        if r.err_estimate <= cfg.target_abs_err {
            return Some(r);
        }
        if best.is_none_or(|b| r.err_estimate < b.err_estimate) {
            *best = Some(r);
        }
        None
    };

    let order: [Regime; 2] = if series_first {
        [Regime::Series, Regime::Asymptotic]
    } else {
        [Regime::Asymptotic, Regime::Series]
    };
    for regime in order {
        let candidate = match regime {
            Regime::Series => ml_series(params, z, cfg),
            Regime::Asymptotic if fractional => ml_asymptotic(params, z, cfg),
            _ => continue,
        };
        if let Some(r) = consider(candidate, &mut best) {
            return Ok(r);
        }
    }
    if spectral::applies(params) {
        if let Some(r) = consider(ml_spectral(params, z, cfg), &mut best) {
            return Ok(r);
        }
    }
    match best {
        Some(mut r) => {
            r.warning = Some(EvalWarning::TargetMissed);
            Ok(r)
        }
        None => Err(Error::Domain("no evaluation route produced a finite value")),
    }
}
