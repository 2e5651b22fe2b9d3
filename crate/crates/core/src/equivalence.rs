//! The first-order relaxation equation Ψ′ = −r(t) Ψ with a time-varying
//! coefficient, and its equivalence with the fractional problem.
//!
//! With r = r_α = −Φ_α/Ψ_α the solution exp(−∫_0^t r) must coincide with
//! Ψ_α = E_α(−t^α). Two independent integrations of r_α are provided: a
//! quadrature for R(t) = ∫_0^t r and a one-step ODE integrator on log Ψ.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gamma::rgamma;
use crate::grid::TimeGrid;
use crate::mittag_leffler::SolverConfig;
use crate::quad::{integrate, QuadOptions};
use crate::relaxation::{psi, relax_coeff};
use crate::trajectory::{Provenance, RelaxationTrajectory};

/// A relaxation coefficient r(t) > 0 with r(t) ~ c·t^p as t → 0⁺.
#[derive(Clone)]
pub struct CoefficientProfile<F> {
    pub evaluator: F,
    /// p ∈ (−1, 0]; integrability of r at the origin.
    pub small_t_exponent: f64,
    /// c ≥ 0.
    pub small_t_constant: f64,
}

impl<F: Fn(f64) -> f64> CoefficientProfile<F> {
    pub fn new(evaluator: F, small_t_exponent: f64, small_t_constant: f64) -> Result<Self> {
        if !(small_t_exponent > -1.0 && small_t_exponent <= 0.0) {
            return Err(Error::Domain("small-t exponent must lie in (-1, 0]"));
        }
        if !(small_t_constant >= 0.0 && small_t_constant.is_finite()) {
            return Err(Error::Domain("small-t constant must be finite and ≥ 0"));
        }
        Ok(Self { evaluator, small_t_exponent, small_t_constant })
    }

    fn eval(&self, t: f64) -> f64 {
        (self.evaluator)(t)
    }

    /// The integrand of R in the variable u = t^{p+1}, in which the
    /// t^p singularity at the origin becomes a finite limit c/(p+1).
    fn smoothed(&self, u: f64) -> f64 {
        let q = self.small_t_exponent + 1.0;
        if q == 1.0 {
            return self.eval(u);
        }
        let t = libm::pow(u, 1.0 / q);
        if t == 0.0 {
            return self.small_t_constant / q;
        }
        // t^{−p} r(t) / (p + 1)
        self.eval(t) * libm::pow(t, 1.0 - q) / q
    }
}

/// The coefficient r_α of the fractional relaxation solution, evaluated
/// through the Mittag-Leffler routines. Failed evaluations surface as NaN,
/// which the integrators report as non-convergence.
pub fn relaxation_profile(
    alpha: f64,
    cfg: &SolverConfig,
) -> Result<CoefficientProfile<impl Fn(f64) -> f64 + '_>> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain("alpha must lie in (0, 1]"));
    }
    let eval = move |t: f64| relax_coeff(alpha, t, cfg).map_or(f64::NAN, |r| r.value);
    CoefficientProfile::new(eval, alpha - 1.0, rgamma(alpha))
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Domain("tolerance must be positive"));
    }
    Ok(())
}

fn segment<F: Fn(f64) -> f64>(profile: &CoefficientProfile<F>, a: f64, b: f64, tol: f64) -> Result<f64> {
    let q = profile.small_t_exponent + 1.0;
    let (ua, ub) = (libm::pow(a, q), libm::pow(b, q));
    let opts = QuadOptions { abs_tol: tol, rel_tol: 0.0, ..QuadOptions::default() };
    let res = integrate(|u| profile.smoothed(u), ua, ub, &opts)?;
    if !res.value.is_finite() {
        return Err(Error::QuadratureNotConverged { estimate: res.value, abs_err: res.abs_err });
    }
    Ok(res.value)
}

/// R(t) = ∫_0^t r by adaptive quadrature, with absolute error ≤ `tol`.
pub fn cumulative_r<F: Fn(f64) -> f64>(profile: &CoefficientProfile<F>, t: f64, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain("t must be finite and ≥ 0"));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    segment(profile, 0.0, t, tol)
}

/// R at every point of `times` (nondecreasing, ≥ 0), accumulated panel by
/// panel; the total absolute error stays within `tol`.
pub fn cumulative_r_grid<F: Fn(f64) -> f64>(
    profile: &CoefficientProfile<F>,
    times: &[f64],
    tol: f64,
) -> Result<Vec<f64>> {
    check_tol(tol)?;
    if times.iter().any(|&t| !(t >= 0.0 && t.is_finite())) || times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidGrid("times must be finite, ≥ 0 and nondecreasing"));
    }
    let panel_tol = tol / (times.len().max(1) as f64);
    let mut out = Vec::with_capacity(times.len());
    let (mut prev, mut acc) = (0.0, 0.0);
    for &t in times {
        if t > prev {
            acc += segment(profile, prev, t, panel_tol)?;
        }
        out.push(acc);
        prev = t;
    }
    Ok(out)
}

/// One classical RK4 step for (log Ψ)′ = −r(t); since the right side does
/// not involve Ψ this is Simpson's rule on r.
fn rk4_log_step<F: Fn(f64) -> f64>(profile: &CoefficientProfile<F>, t: f64, h: f64) -> f64 {
    let k1 = profile.eval(t);
    let k2 = profile.eval(t + 0.5 * h);
    let k4 = profile.eval(t + h);
    -h / 6.0 * (k1 + 4.0 * k2 + k4)
}

/// Integrates log Ψ across [a, b] with step doubling; the local error per
/// unit time is held below `tol_rate`.
fn rk4_log_adaptive<F: Fn(f64) -> f64>(
    profile: &CoefficientProfile<F>,
    a: f64,
    b: f64,
    tol_rate: f64,
    h_hint: &mut f64,
) -> Result<f64> {
    let mut t = a;
    let mut acc = 0.0;
    let mut h = h_hint.min(b - a);
    while t < b {
        if b - t <= h * (1.0 + 1e-12) {
            h = b - t;
        }
        let big = rk4_log_step(profile, t, h);
        let fine = rk4_log_step(profile, t, 0.5 * h) + rk4_log_step(profile, t + 0.5 * h, 0.5 * h);
        let err = libm::fabs(fine - big) / 15.0;
        if !err.is_finite() {
            return Err(Error::StepRejected { t, step: h });
        }
        let allowed = tol_rate * h;
        if err <= allowed {
            acc += fine + (fine - big) / 15.0;
            t = if b - t <= h { b } else { t + h };
            let grow = if err == 0.0 { 4.0 } else { (0.9 * libm::pow(allowed / err, 0.2)).clamp(0.2, 4.0) };
            *h_hint = h * grow;
            h = *h_hint;
        } else {
            h *= (0.9 * libm::pow(allowed / err, 0.2)).clamp(0.1, 0.9);
            if h <= 1e-14 * t.max(1.0) {
                return Err(Error::StepRejected { t, step: h });
            }
        }
    }
    Ok(acc)
}

/// Solves Ψ′ = −r(t)Ψ on `grid` from Ψ(t_0) = `start_value`, integrating
/// log Ψ with error-controlled RK4 so that the accumulated error in log Ψ
/// stays within about `tol`. From t_0 = 0 with a singular coefficient the
/// first panel is crossed with Ψ(t_1) = Ψ(0)·exp(−R(t_1)).
pub fn ode_solve<F: Fn(f64) -> f64>(
    profile: &CoefficientProfile<F>,
    grid: TimeGrid,
    start_value: f64,
    tol: f64,
) -> Result<RelaxationTrajectory> {
    check_tol(tol)?;
    if !(start_value > 0.0 && start_value.is_finite()) {
        return Err(Error::Domain("start value must be positive"));
    }
    let t = grid.points();
    let span = grid.t_end() - grid.t_start();
    let tol_rate = 0.5 * tol / span;
    let mut log_psi = libm::log(start_value);
    let mut vals = Vec::with_capacity(t.len());
    vals.push(start_value);
    let mut h_hint = t[1] - t[0];
    for j in 1..t.len() {
        let (a, b) = (t[j - 1], t[j]);
        log_psi += if a == 0.0 && profile.small_t_exponent < 0.0 {
            -segment(profile, 0.0, b, 0.5 * tol)?
        } else {
            rk4_log_adaptive(profile, a, b, tol_rate, &mut h_hint)?
        };
        vals.push(libm::exp(log_psi));
    }
    Ok(RelaxationTrajectory::new(
        profile.small_t_exponent + 1.0,
        grid,
        vals,
        Provenance::OdeEquivalent,
    ))
}

/// Which first-order route is compared with the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceRoute {
    /// `ode_solve` on r_α.
    Ode,
    /// exp(−R) with R from `cumulative_r_grid`.
    Quadrature,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub alpha: f64,
    pub grid: TimeGrid,
    pub max_abs_deviation: f64,
    pub per_point_deviation: Vec<f64>,
    pub routes_compared: (Provenance, Provenance),
}

/// Compares the ODE route driven by r_α with Ψ_α on `grid`.
pub fn equivalence_check(alpha: f64, grid: TimeGrid, tol: f64) -> Result<EquivalenceReport> {
    equivalence_check_with(alpha, grid, tol, EquivalenceRoute::Ode, &SolverConfig::default())
}

pub fn equivalence_check_with(
    alpha: f64,
    grid: TimeGrid,
    tol: f64,
    route: EquivalenceRoute,
    cfg: &SolverConfig,
) -> Result<EquivalenceReport> {
    let profile = relaxation_profile(alpha, cfg)?;
    let t0 = grid.t_start();
    let start = psi(alpha, t0, cfg)?.value;
    let first_order: Vec<f64> = match route {
        EquivalenceRoute::Ode => ode_solve(&profile, grid.clone(), start, tol)?.psi_vals,
        EquivalenceRoute::Quadrature => cumulative_r_grid(&profile, grid.points(), tol)?
            .into_iter()
            .map(|r| libm::exp(-r))
            .collect(),
    };
    let per_point_deviation = grid
        .points()
        .iter()
        .zip(&first_order)
        .map(|(&t, &v)| psi(alpha, t, cfg).map(|p| libm::fabs(v - p.value)))
        .collect::<Result<Vec<_>>>()?;
    let max_abs_deviation = per_point_deviation.iter().copied().fold(0.0, f64::max);
    Ok(EquivalenceReport {
        alpha,
        grid,
        max_abs_deviation,
        per_point_deviation,
        routes_compared: (Provenance::OdeEquivalent, Provenance::ClosedForm),
    })
}
