//! Numerical check of the Laplace transform L[Ψ_α](s) = s^{α−1}/(s^α + 1).

use crate::error::{Error, Result};
use crate::gamma::rgamma;
use crate::mittag_leffler::SolverConfig;
use crate::quad::{integrate, QuadOptions};
use crate::relaxation::psi;

/// Largest truncation point tried before giving up on the tail.
const T_MAX: f64 = 1e4;

/// s^{α−1}/(s^α + 1).
pub fn laplace_closed_form(alpha: f64, s: f64) -> f64 {
    let sa = libm::pow(s, alpha);
    sa / (s * (sa + 1.0))
}

/// Returns (numeric transform of Ψ_α at s, closed form), the numeric side
/// accurate to about `tol` in absolute terms.
///
/// The integral is truncated at T where the monotonicity bound
/// ∫_T^∞ e^{−st}Ψ ≤ Ψ(T) e^{−sT}/s falls below tol/2, and the remainder is
/// modelled by the algebraic tail ∫_T^∞ e^{−st} t^{−α}/Γ(1−α) dt.
pub fn laplace_check(alpha: f64, s: f64, tol: f64, cfg: &SolverConfig) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain("alpha must lie in (0, 1]"));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Domain("s must be positive"));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Domain("tolerance must be positive"));
    }
    let psi_at = |t: f64| psi(alpha, t, cfg).map_or(f64::NAN, |p| p.value);

    let mut big_t = (libm::log(2.0 / (tol * s)) / s).max(1.0);
    let bound = |t: f64| psi_at(t) * libm::exp(-s * t) / s;
    // Ψ ≤ 1 makes the first guess sufficient in exact arithmetic; the loop
    // only guards against a bound evaluated in rounding.
    while !(bound(big_t) < 0.5 * tol) {
        big_t *= 2.0;
        if big_t > T_MAX {
            return Err(Error::TailTruncation { bound: bound(T_MAX), tol });
        }
    }

    let opts = QuadOptions { abs_tol: 0.25 * tol, rel_tol: 0.0, max_subdivisions: 4000 };
    let body = integrate(|t| libm::exp(-s * t) * psi_at(t), 0.0, big_t, &opts)?;
    if !body.value.is_finite() || body.abs_err > 0.5 * tol {
        return Err(Error::QuadratureNotConverged { estimate: body.value, abs_err: body.abs_err });
    }

    let tail = if alpha < 1.0 {
        let c = rgamma(1.0 - alpha);
        let span = libm::log(2.0 / tol) / s + 1.0;
        let res = integrate(
            |t| c * libm::exp(-s * (t - big_t)) * libm::pow(t, -alpha),
            big_t,
            big_t + span,
            &opts,
        )?;
        res.value * libm::exp(-s * big_t)
    } else {
        0.0
    };
    Ok((body.value + tail, laplace_closed_form(alpha, s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(laplace_closed_form(1.0, 1.0), 0.5);
        assert!((laplace_closed_form(0.5, 4.0) - 1.0 / 6.0).abs() < 1e-16);
        assert_eq!(laplace_closed_form(0.5, 1.0), 0.5);
    }

    #[test]
    fn numeric_side_agrees() {
        let cfg = SolverConfig::default();
        for (alpha, s) in [(1.0, 1.0), (0.5, 4.0), (0.5, 1.0), (0.25, 0.5)] {
            let (num, exact) = laplace_check(alpha, s, 1e-9, &cfg).unwrap();
            assert!((num / exact - 1.0).abs() < 1e-6, "α={alpha} s={s}: {num} vs {exact}");
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let cfg = SolverConfig::default();
        assert!(laplace_check(0.5, 0.0, 1e-9, &cfg).is_err());
        assert!(laplace_check(0.5, 1.0, 0.0, &cfg).is_err());
        assert!(laplace_check(1.5, 1.0, 1e-9, &cfg).is_err());
    }
}
