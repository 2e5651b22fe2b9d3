//! The fractional relaxation solution and the quantities derived from it.
//!
//! * Ψ_α(t) = E_α(−t^α), the solution of the Caputo relaxation problem
//!   with Ψ_α(0) = 1;
//! * Φ_α(t) = Ψ_α′(t) = −t^{α−1} E_{α,α}(−t^α);
//! * r_α(t) = −Φ_α/Ψ_α, the coefficient of the first-order problem
//!   Ψ′ = −r_α(t) Ψ with the same solution;
//! * R_α(t) = −ln Ψ_α(t) = ∫_0^t r_α.
//!
//! At α = 1 all four reduce to closed forms (e^{−t}, −e^{−t}, 1, t).

use crate::error::{Error, Result};
use crate::mittag_leffler::{ml_eval, EvalResult, MlParams, Regime, SolverConfig, ROUNDING_ULPS};

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain("alpha must lie in (0, 1]"));
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain("t must be finite and ≥ 0"));
    }
    Ok(())
}

/// Ψ_α(t) = E_α(−t^α).
pub fn psi(alpha: f64, t: f64, cfg: &SolverConfig) -> Result<EvalResult> {
    check_alpha(alpha)?;
    check_time(t)?;
    if t == 0.0 {
        return Ok(EvalResult::new(1.0, 0.0, Regime::ClosedForm));
    }
    if alpha == 1.0 {
        let v = libm::exp(-t);
        return Ok(EvalResult::new(v, ROUNDING_ULPS * v, Regime::ClosedForm));
    }
    ml_eval(MlParams::one(alpha)?, -libm::pow(t, alpha), cfg)
}

/// Φ_α(t) = −t^{α−1} E_{α,α}(−t^α); negative for every t > 0.
pub fn phi(alpha: f64, t: f64, cfg: &SolverConfig) -> Result<EvalResult> {
    check_alpha(alpha)?;
    check_time(t)?;
    if alpha == 1.0 {
        let v = -libm::exp(-t);
        return Ok(EvalResult::new(v, ROUNDING_ULPS * libm::fabs(v), Regime::ClosedForm));
    }
    if t == 0.0 {
        return Err(Error::Domain("phi diverges at t = 0 for alpha < 1"));
    }
    let e = ml_eval(MlParams::new(alpha, alpha)?, -libm::pow(t, alpha), cfg)?;
    let scale = libm::pow(t, alpha - 1.0);
    let value = -scale * e.value;
    Ok(EvalResult {
        value,
        err_estimate: scale * e.err_estimate + ROUNDING_ULPS * libm::fabs(value),
        ..e
    })
}

/// r_α(t) = t^{α−1} E_{α,α}(−t^α) / E_α(−t^α); identically 1 at α = 1.
pub fn relax_coeff(alpha: f64, t: f64, cfg: &SolverConfig) -> Result<EvalResult> {
    check_alpha(alpha)?;
    check_time(t)?;
    if alpha == 1.0 {
        return Ok(EvalResult::new(1.0, 0.0, Regime::ClosedForm));
    }
    if t == 0.0 {
        return Err(Error::Domain("relaxation coefficient diverges at t = 0 for alpha < 1"));
    }
    let num = phi(alpha, t, cfg)?;
    let den = psi(alpha, t, cfg)?;
    let value = -num.value / den.value;
    let rel = num.err_estimate / libm::fabs(num.value) + den.err_estimate / libm::fabs(den.value);
    Ok(EvalResult {
        value,
        err_estimate: libm::fabs(value) * (rel + ROUNDING_ULPS),
        regime: den.regime,
        warning: den.warning.or(num.warning),
    })
}

/// R_α(t) = −ln Ψ_α(t); R_α(0) = 0 and R_1(t) = t.
pub fn big_r(alpha: f64, t: f64, cfg: &SolverConfig) -> Result<EvalResult> {
    check_alpha(alpha)?;
    check_time(t)?;
    if alpha == 1.0 || t == 0.0 {
        return Ok(EvalResult::new(t, ROUNDING_ULPS * t, Regime::ClosedForm));
    }
    let p = psi(alpha, t, cfg)?;
    let value = -libm::log(p.value);
    Ok(EvalResult {
        value,
        err_estimate: p.err_estimate / p.value + ROUNDING_ULPS * libm::fabs(value),
        ..p
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // e·erfc(1) and 1/√π − e·erfc(1)
    const PSI_HALF_1: f64 = 0.427_583_576_155_807;
    const EAA_HALF_1: f64 = 0.136_606_007_391_949_28;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn psi_examples() {
        assert!((psi(1.0, 1.0, &cfg()).unwrap().value - 0.367_879_441_171_442_3).abs() < 1e-16);
        for a in [0.1, 0.5, 0.99, 1.0] {
            assert_eq!(psi(a, 0.0, &cfg()).unwrap().value, 1.0);
        }
        assert!((psi(0.5, 1.0, &cfg()).unwrap().value - PSI_HALF_1).abs() < 1e-15);
        assert!(psi(0.0, 1.0, &cfg()).is_err());
        assert!(psi(0.5, -1.0, &cfg()).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(1.0, 0.0, &cfg()).unwrap().value, -1.0);
        assert!((phi(0.5, 1.0, &cfg()).unwrap().value + EAA_HALF_1).abs() < 1e-15);
        assert!(phi(0.5, 0.0, &cfg()).is_err());
        // Leading small-t behaviour −t^{−1/2}/Γ(1/2).
        let t = 1e-8;
        let lead = -1.0 / (libm::sqrt(t) * 1.772_453_850_905_516);
        assert!((phi(0.5, t, &cfg()).unwrap().value / lead - 1.0).abs() < 1e-3);
    }

    #[test]
    fn relax_coeff_examples() {
        for t in [1e-3, 0.5, 7.0, 1e3] {
            assert_eq!(relax_coeff(1.0, t, &cfg()).unwrap().value, 1.0);
        }
        let r = relax_coeff(0.5, 1.0, &cfg()).unwrap();
        assert!((r.value - EAA_HALF_1 / PSI_HALF_1).abs() < 1e-14);
        assert!((r.value - 0.319_483).abs() < 1e-6);
        let r = relax_coeff(0.5, 1e-6, &cfg()).unwrap();
        assert!((r.value - 1e3 / 1.772_453_850_905_516).abs() / r.value < 2e-3, "{}", r.value);
        assert!(relax_coeff(0.5, 0.0, &cfg()).is_err());
    }

    #[test]
    fn big_r_examples() {
        assert_eq!(big_r(1.0, 2.5, &cfg()).unwrap().value, 2.5);
        assert_eq!(big_r(0.3, 0.0, &cfg()).unwrap().value, 0.0);
        let r = big_r(0.5, 1.0, &cfg()).unwrap();
        assert!((r.value + libm::log(PSI_HALF_1)).abs() < 1e-14);
        assert!((r.value - 0.849_605_509_933_248_2).abs() < 1e-14);
    }
}
