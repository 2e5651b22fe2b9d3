use core::f64::consts::PI;

use super::{EvalResult, MlParams, Regime, SolverConfig, ROUNDING_ULPS};
use crate::error::{Error, Result};
use crate::numeric::{cos_pi, sin_pi};
use crate::quad::{integrate_with_breaks, QuadOptions};

/// Beyond w^{1/α} = this the factor exp(−w^{1/α}) is below 1e-34.
const DECAY_CUTOFF: f64 = 80.0;

pub(crate) fn applies(params: MlParams) -> bool {
    params.alpha() < 1.0 && params.beta() < 1.0 + params.alpha()
}

/// E_{α,β}(−x), x > 0, from the real-axis representation
///
/// ```text
/// E_{α,β}(−x) = 1/(απ) ∫_0^∞ w^{(1−β)/α} exp(−w^{1/α})
///               · [w sin πβ − x sin π(α−β)] / (w² + 2xw cos πα + x²) dw
/// ```
///
/// obtained by collapsing the Hankel contour onto the negative real axis and
/// substituting r = w^{1/α}. Requires 0 < α < 1 and β < 1 + α. For β ≤ 1 the
/// integrand is bounded; it peaks near w = x|cos πα|, which is passed to the
/// quadrature as a break point.
pub fn ml_spectral(params: MlParams, z: f64, cfg: &SolverConfig) -> Result<EvalResult> {
    let (alpha, beta) = (params.alpha(), params.beta());
    if !applies(params) {
        return Err(Error::Domain("spectral representation requires alpha < 1 and beta < 1 + alpha"));
    }
    if z.is_nan() || z >= 0.0 {
        return Err(Error::Domain("spectral representation requires z < 0"));
    }
    let x = -z;
    let sin_b = sin_pi(beta);
    let sin_ab = sin_pi(alpha - beta);
    // 1 + cos πα = 2cos²(πα/2), kept separate to avoid cancellation near α = 1.
    let half = cos_pi(0.5 * alpha);
    let one_plus_cos = 2.0 * half * half;
    let power = (1.0 - beta) / alpha;
    let inv_alpha = 1.0 / alpha;

    let integrand = |w: f64| -> f64 {
        let d = w - x;
        let denom = d * d + 2.0 * x * w * one_plus_cos;
        let decay = libm::exp(-libm::pow(w, inv_alpha));
        let weight = if power == 0.0 { 1.0 } else { libm::pow(w, power) };
        weight * decay * (w * sin_b - x * sin_ab) / denom
    };

    let upper = libm::pow(DECAY_CUTOFF, alpha);
    let mut breaks = [0.0, 0.0, 0.0, upper];
    let mut n = 1;
    let peak = x * libm::fabs(cos_pi(alpha));
    for p in [peak.min(x), peak.max(x)] {
        if p > breaks[n - 1] && p < upper {
            breaks[n] = p;
            n += 1;
        }
    }
    breaks[n] = upper;
    let opts = QuadOptions { abs_tol: cfg.quad_tol, rel_tol: 1e-14, max_subdivisions: 400 };
    let q = integrate_with_breaks(integrand, &breaks[..=n], &opts)?;
    let scale = 1.0 / (alpha * PI);
    let value = q.value * scale;
    let err = (q.abs_err + ROUNDING_ULPS * q.abs_integral) * scale;
    Ok(EvalResult::new(value, err, Regime::Spectral))
}
