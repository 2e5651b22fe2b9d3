use super::{check_nonpositive, EvalResult, MlParams, Regime, SolverConfig, ROUNDING_ULPS};
use crate::error::{Error, Result};
use crate::gamma::rgamma;
use crate::numeric::CompensatedSum;

/// Above this Γ argument the term is formed in log space.
const LOG_FORM_ARG: f64 = 160.0;

/// Power series Σ z^n / Γ(αn + β) with relative truncation.
///
/// Summation stops once the next term is below `series_tol·|partial sum|`;
/// that term's magnitude is the truncation part of `err_estimate`. The
/// rounding part scales with Σ|term|, so heavy cancellation shows up in the
/// estimate rather than silently in the value.
pub fn ml_series(params: MlParams, z: f64, cfg: &SolverConfig) -> Result<EvalResult> {
    check_nonpositive(z)?;
    let (alpha, beta) = (params.alpha(), params.beta());
    if z == 0.0 {
        let v = rgamma(beta);
        return Ok(EvalResult::new(v, ROUNDING_ULPS * libm::fabs(v), Regime::Series));
    }

    let ln_abs_z = libm::log(-z);
    let mut sum = CompensatedSum::new();
    let mut rounding: f64 = 0.0;
    let mut power: f64 = 1.0;
    let mut last = 0.0;
    for n in 0..cfg.max_terms {
        let nf = n as f64;
        let arg = alpha * nf + beta;
        let term = if arg < LOG_FORM_ARG && power.is_finite() {
            power * rgamma(arg)
        } else {
            let mag = libm::exp(nf * ln_abs_z - libm::lgamma(arg));
            if n % 2 == 0 {
                mag
            } else {
                -mag
            }
        };
        let partial = sum.value();
        if n >= 1 && libm::fabs(term) < cfg.series_tol * libm::fabs(partial) {
            let err = libm::fabs(term) + rounding + ROUNDING_ULPS * libm::fabs(partial);
            return Ok(EvalResult::new(partial, err, Regime::Series));
        }
        if !term.is_finite() {
            break;
        }
        sum.add(term);
        // Relative error of a term grows with the number of multiplications
        // and with the size of its logarithm.
        let ln_mag = if term == 0.0 { 0.0 } else { libm::fabs(libm::log(libm::fabs(term))) };
        rounding += f64::EPSILON * (10.0 + nf + ln_mag) * libm::fabs(term);
        power *= z;
        last = term;
    }
    let partial = sum.value();
    Err(Error::SeriesNotConverged {
        partial: EvalResult::new(partial, libm::fabs(last) + rounding, Regime::Series),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn exponential_case() {
        let r = ml_series(MlParams::one(1.0).unwrap(), -1.0, &cfg()).unwrap();
        assert!((r.value - 0.367_879_441_171_442_3).abs() < 2e-16);
        assert_eq!(r.regime, Regime::Series);
    }

    #[test]
    fn zero_argument_is_reciprocal_gamma() {
        for (a, b) in [(0.3, 1.0), (0.5, 0.5), (0.9, 2.5)] {
            let r = ml_series(MlParams::new(a, b).unwrap(), 0.0, &cfg()).unwrap();
            assert_eq!(r.value, rgamma(b));
        }
    }

    #[test]
    fn half_order_matches_erfc_identity() {
        // E_{1/2}(−1) = e·erfc(1); E_{1/2,1/2}(−1) = 1/√π − e·erfc(1)
        let r = ml_series(MlParams::one(0.5).unwrap(), -1.0, &cfg()).unwrap();
        assert!((r.value - 0.427_583_576_155_807).abs() < 1e-15);
        assert!(r.err_estimate < 5e-14, "{r:?}");
        let r = ml_series(MlParams::new(0.5, 0.5).unwrap(), -1.0, &cfg()).unwrap();
        assert!((r.value - 0.136_606_007_391_949_28).abs() < 1e-15);
    }

    #[test]
    fn error_estimate_exposes_cancellation() {
        // |z|^{1/α} = 400 makes the series useless in double precision.
        let r = ml_series(MlParams::one(0.5).unwrap(), -20.0, &cfg());
        let est = match r {
            Ok(r) => r.err_estimate,
            Err(Error::SeriesNotConverged { partial }) => partial.err_estimate,
            Err(e) => panic!("{e}"),
        };
        assert!(est > 1e-3);
    }

    #[test]
    fn non_convergence_is_reported_with_partial_sum() {
        let small = SolverConfig { max_terms: 5, ..cfg() };
        match ml_series(MlParams::one(0.5).unwrap(), -2.0, &small) {
            Err(Error::SeriesNotConverged { partial }) => {
                assert!(partial.value.is_finite());
                assert!(partial.err_estimate > 0.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
