//! Verification suites: equivalence of the first-order route, the Laplace
//! identity, and the fractional time-stepper against the closed form.

use std::fmt;
use std::str::FromStr;

use fracrelax_core::equivalence::{
    cumulative_r_grid, equivalence_check_with, relaxation_profile, EquivalenceRoute,
};
use fracrelax_core::fde::solve_fde;
use fracrelax_core::laplace::{laplace_check, laplace_closed_form};
use fracrelax_core::{big_r, psi, SolverConfig, TimeGrid};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::figures::{figure_times, FigureId};

pub const LAPLACE_S: [f64; 4] = [0.5, 1.0, 2.0, 4.0];
pub const DEFAULT_FDE_STEPS: usize = 16_384;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Equivalence,
    Laplace,
    FdeCrossCheck,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "equivalence" => Ok(Self::Equivalence),
            "laplace" => Ok(Self::Laplace),
            "fde-cross-check" => Ok(Self::FdeCrossCheck),
            "all" => Ok(Self::All),
            _ => Err(format!("unknown suite '{s}' (equivalence, laplace, fde-cross-check, all)")),
        }
    }
}

/// One tolerance-table entry.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub label: String,
    pub value: f64,
    pub tolerance: f64,
    /// `true` when `value` must be at least `tolerance` instead of below it.
    pub lower_bound: bool,
}

impl Check {
    fn below(suite: &'static str, label: String, value: f64, tolerance: f64) -> Self {
        Self { suite, label, value, tolerance, lower_bound: false }
    }

    fn above(suite: &'static str, label: String, value: f64, tolerance: f64) -> Self {
        Self { suite, label, value, tolerance, lower_bound: true }
    }

    pub fn passed(&self) -> bool {
        if self.lower_bound {
            self.value >= self.tolerance
        } else {
            self.value < self.tolerance
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.lower_bound { ">=" } else { "<" };
        write!(
            f,
            "{:<16} {:<40} {:>12.3e} {rel} {:<9.1e} {}",
            self.suite,
            self.label,
            self.value,
            self.tolerance,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

fn per_alpha<T: Send>(
    alphas: &[f64],
    f: impl Fn(f64) -> Result<T, CliError> + Sync,
) -> Result<Vec<T>, CliError> {
    std::thread::scope(|scope| {
        let f = &f;
        let handles: Vec<_> = alphas.iter().map(|&a| scope.spawn(move || f(a))).collect();
        handles.into_iter().map(|h| h.join().expect("verification worker panicked")).collect()
    })
}

/// Largest magnitude; NaN propagates instead of being skipped.
fn max_abs(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, |m, x| if x.abs() > m || x.is_nan() { x.abs() } else { m })
}

/// Deviation allowed between exp(−R) and Ψ: the t^{α−1} singularity makes
/// α = 1/4 the hardest case.
pub fn equivalence_tolerance(alpha: f64) -> f64 {
    if alpha <= 0.25 {
        1e-5
    } else {
        1e-6
    }
}

pub fn equivalence_suite(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    let times = figure_times(FigureId::Psi, cfg);
    let solver = &cfg.solver;
    let rows = per_alpha(&cfg.alphas, |alpha| {
        let profile = relaxation_profile(alpha, solver)?;
        let r_grid = cumulative_r_grid(&profile, &times, 1e-9)?;
        let (mut dev_psi, mut dev_r) = (Vec::new(), Vec::new());
        for (&t, &r) in times.iter().zip(&r_grid) {
            dev_psi.push((-r).exp() - psi(alpha, t, solver)?.value);
            dev_r.push(r - big_r(alpha, t, solver)?.value);
        }
        let (dev_psi, dev_r) = (max_abs(dev_psi.into_iter()), max_abs(dev_r.into_iter()));
        let grid = TimeGrid::from_points(times.clone())?;
        let ode = equivalence_check_with(alpha, grid, 1e-9, EquivalenceRoute::Ode, solver)?;
        let tol = equivalence_tolerance(alpha);
        Ok(vec![
            Check::below("equivalence", format!("alpha={alpha} |exp(-R) - psi|"), dev_psi, tol),
            Check::below("equivalence", format!("alpha={alpha} |R - big_r|"), dev_r, 1e-6),
            Check::below("equivalence", format!("alpha={alpha} |ode - psi|"), ode.max_abs_deviation, tol),
        ])
    })?;
    Ok(rows.into_iter().flatten().collect())
}

pub fn laplace_suite(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    let rows = per_alpha(&cfg.alphas, |alpha| {
        LAPLACE_S
            .iter()
            .map(|&s| {
                let tol = 1e-9 * laplace_closed_form(alpha, s);
                let (num, exact) = laplace_check(alpha, s, tol, &cfg.solver)?;
                Ok(Check::below(
                    "laplace",
                    format!("alpha={alpha} s={s} relative"),
                    ((num - exact) / exact).abs(),
                    1e-6,
                ))
            })
            .collect::<Result<Vec<_>, CliError>>()
    })?;
    Ok(rows.into_iter().flatten().collect())
}

/// Max |Ψ_fde − Ψ| over a uniform grid on [0, t_end] with `steps` intervals.
pub fn fde_error(alpha: f64, t_end: f64, steps: usize, solver: &SolverConfig) -> Result<f64, CliError> {
    let traj = solve_fde(alpha, TimeGrid::uniform(0.0, t_end, steps)?)?;
    let dev = traj
        .times()
        .iter()
        .zip(&traj.psi_vals)
        .map(|(&t, &y)| Ok(y - psi(alpha, t, solver)?.value))
        .collect::<Result<Vec<f64>, CliError>>()?;
    Ok(max_abs(dev.into_iter()))
}

pub fn fde_suite(cfg: &RunConfig, steps: usize) -> Result<Vec<Check>, CliError> {
    if steps < 4 {
        return Err(CliError::Domain("--n must be at least 4".into()));
    }
    let rows = per_alpha(&cfg.alphas, |alpha| {
        let fine = fde_error(alpha, cfg.t_end, steps, &cfg.solver)?;
        let coarse = fde_error(alpha, cfg.t_end, steps / 2, &cfg.solver)?;
        Ok(vec![
            Check::below("fde-cross-check", format!("alpha={alpha} N={steps} max error"), fine, 1e-4),
            Check::above(
                "fde-cross-check",
                format!("alpha={alpha} error(N/2)/error(N)"),
                coarse / fine,
                2.0,
            ),
        ])
    })?;
    Ok(rows.into_iter().flatten().collect())
}

pub fn run_suite(cfg: &RunConfig, suite: Suite, fde_steps: usize) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Equivalence | Suite::All) {
        checks.extend(equivalence_suite(cfg)?);
    }
    if matches!(suite, Suite::Laplace | Suite::All) {
        checks.extend(laplace_suite(cfg)?);
    }
    if matches!(suite, Suite::FdeCrossCheck | Suite::All) {
        checks.extend(fde_suite(cfg, fde_steps)?);
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_semantics() {
        assert!(Check::below("x", "a".into(), 1e-7, 1e-6).passed());
        assert!(!Check::below("x", "a".into(), f64::NAN, 1e-6).passed());
        assert!(Check::above("x", "a".into(), 2.5, 2.0).passed());
        assert!(!Check::above("x", "a".into(), 1.5, 2.0).passed());
        assert!(format!("{}", Check::below("x", "a".into(), 2.0, 1.0)).ends_with("FAIL"));
    }

    #[test]
    fn nan_is_never_hidden() {
        assert!(max_abs([1.0, f64::NAN, 0.5].into_iter()).is_nan());
    }

    #[test]
    fn suite_names() {
        assert_eq!("fde-cross-check".parse::<Suite>().unwrap(), Suite::FdeCrossCheck);
        assert!("bogus".parse::<Suite>().is_err());
    }
}
