use alloc::vec::Vec;

use super::{EvalResult, EvalWarning, MlParams, Regime, SolverConfig, ROUNDING_ULPS};
use crate::error::{Error, Result};
use crate::gamma::rgamma;
use crate::numeric::CompensatedSum;

/// Algebraic expansion E_{α,β}(z) ≈ −Σ_{k=1}^{K} z^{−k} / Γ(β − αk), z < 0, 0 < α < 1.
///
/// Terms whose Γ argument is a pole are exactly zero. Because 1/Γ oscillates
/// through zero, a single small term says little about the remainder; the
/// error of cutting after `c` terms is taken as the largest omitted term in
/// the next ⌈1/α⌉ + 1 positions. The cut `c ≤ K` minimising that envelope is
/// used; if it falls short of `K` the result carries
/// [`EvalWarning::TruncationNotOptimal`]. Past the smallest term the
/// remainder of a divergent series can exceed that term by a factor growing
/// like √cut, so the envelope is scaled by √cut in that case.
///
/// For α > 2/3 the negative axis lies near a Stokes line, and the
/// exponentially small contributions of the roots z^{1/α} e^{±iπ/α}, which
/// no algebraic term captures, are added to the estimate:
/// (2/α) exp(|z|^{1/α} cos(π/α)).
pub fn ml_asymptotic(params: MlParams, z: f64, cfg: &SolverConfig) -> Result<EvalResult> {
    let (alpha, beta) = (params.alpha(), params.beta());
    if alpha >= 1.0 {
        return Err(Error::Domain("asymptotic expansion requires 0 < alpha < 1"));
    }
    if z.is_nan() || z >= 0.0 {
        return Err(Error::Domain("asymptotic expansion requires z < 0"));
    }
    let k_max = cfg.asymptotic_terms;
    let window = libm::ceil(1.0 / alpha) as usize + 1;

    // terms[k-1] holds the k-th term.
    let inv = 1.0 / z;
    let mut power = 1.0;
    let mut terms = Vec::with_capacity(k_max + window);
    for k in 1..=(k_max + window) {
        power *= inv;
        let t = -power * rgamma(beta - alpha * k as f64);
        if !t.is_finite() {
            break;
        }
        terms.push(t);
    }
    let envelope = |cut: usize| -> f64 {
        terms.iter().skip(cut).take(window).fold(0.0, |m: f64, t| m.max(libm::fabs(*t)))
    };

    let usable = k_max.min(terms.len().saturating_sub(window));
    let mut cut = usable;
    let mut cut_err = envelope(usable);
    for c in (0..usable).rev() {
        let e = envelope(c);
        if e < cut_err {
            cut = c;
            cut_err = e;
        }
    }

    if cut < k_max {
        cut_err *= libm::sqrt(cut.max(1) as f64);
    }

    if alpha > 2.0 / 3.0 {
        let f = libm::pow(-z, 1.0 / alpha);
        cut_err += 2.0 / alpha * libm::exp(f * libm::cos(core::f64::consts::PI / alpha));
    }

    let sum: CompensatedSum = terms[..cut].iter().copied().collect();
    let abs: f64 = terms[..cut].iter().map(|t| libm::fabs(*t)).sum();
    let value = sum.value();
    let mut r = EvalResult::new(value, cut_err + ROUNDING_ULPS * (abs + libm::fabs(value)), Regime::Asymptotic);
    if cut < k_max {
        r.warning = Some(EvalWarning::TruncationNotOptimal { used_terms: cut });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma_real;

    #[test]
    fn single_term_is_leading_power() {
        let cfg = SolverConfig { asymptotic_terms: 1, ..SolverConfig::default() };
        let r = ml_asymptotic(MlParams::one(0.25).unwrap(), -10.0, &cfg).unwrap();
        let expected = 0.1 / gamma_real(0.75).unwrap();
        assert!((r.value - expected).abs() < 1e-16);
        assert!((r.value - 0.081_604).abs() < 1e-6);
        assert!(r.warning.is_none());
        // Next term 10^{-2}/Γ(0.5) bounds the error.
        assert!(r.err_estimate >= 0.01 / 1.772_453_850_905_516 - 1e-15);
    }

    #[test]
    fn half_order_at_minus_ten() {
        // e^{100} erfc(10), 30-digit reference.
        let r = ml_asymptotic(MlParams::one(0.5).unwrap(), -10.0, &SolverConfig::default()).unwrap();
        assert!((r.value - 0.056_140_992_743_822_59).abs() < 1e-15, "{r:?}");
        assert!(r.err_estimate < 1e-14);
    }

    #[test]
    fn pole_terms_vanish() {
        // α = 1/2, β = 1: the k = 2 term has Γ(0) in the denominator.
        let cfg = SolverConfig { asymptotic_terms: 2, ..SolverConfig::default() };
        let one = SolverConfig { asymptotic_terms: 1, ..SolverConfig::default() };
        let p = MlParams::one(0.5).unwrap();
        let a = ml_asymptotic(p, -10.0, &cfg).unwrap();
        let b = ml_asymptotic(p, -10.0, &one).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn domain_errors() {
        let cfg = SolverConfig::default();
        assert!(ml_asymptotic(MlParams::one(1.0).unwrap(), -10.0, &cfg).is_err());
        assert!(ml_asymptotic(MlParams::one(0.5).unwrap(), 0.0, &cfg).is_err());
    }

    #[test]
    fn divergence_is_flagged() {
        // At |z| = 2 with α = 0.9 the terms turn around after a few steps.
        let r = ml_asymptotic(MlParams::one(0.9).unwrap(), -2.0, &SolverConfig::default()).unwrap();
        assert!(matches!(r.warning, Some(EvalWarning::TruncationNotOptimal { .. })));
        assert!(r.err_estimate > 1e-3);
    }
}
