//! Gamma function on the real line with an explicit reciprocal view.
//!
//! Series and asymptotic Mittag-Leffler terms divide by Γ at arguments that
//! can land exactly on a pole (β − αk = 0, −1, …). Those terms must vanish,
//! so callers work with [`rgamma`], which is an entire function and returns
//! exactly zero there. [`gamma_real`] is the strict variant that reports the
//! pole instead.

use crate::error::{Error, Result};
use crate::numeric::sin_pi;
use core::f64::consts::PI;

/// Largest argument for which Γ(x) is finite in double precision.
const GAMMA_OVERFLOW: f64 = 171.624_376_956_302_7;

/// True for x ∈ {0, −1, −2, …}.
#[inline]
pub fn is_gamma_pole(x: f64) -> bool {
    x <= 0.0 && x == libm::floor(x)
}

/// Γ(x) for real `x`.
///
/// Poles are reported as [`Error::GammaPole`]; NaN input is a domain error.
pub fn gamma_real(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma argument is NaN"));
    }
    if is_gamma_pole(x) {
        return Err(Error::GammaPole { x });
    }
    Ok(libm::tgamma(x))
}

/// 1/Γ(x), defined for every real `x`; zero at the poles of Γ and for
/// arguments beyond the overflow threshold.
pub fn rgamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_gamma_pole(x) {
        return 0.0;
    }
    if x > GAMMA_OVERFLOW - 1.0 {
        return libm::exp(-libm::lgamma(x));
    }
    if x < -(GAMMA_OVERFLOW - 2.0) {
        // Reflection: 1/Γ(x) = Γ(1 − x) sin(πx) / π, with Γ(1 − x) possibly
        // beyond double range, so combine in log space.
        let s = sin_pi(x);
        let mag = libm::exp(libm::lgamma(1.0 - x) + libm::log(libm::fabs(s) / PI));
        return if s < 0.0 { -mag } else { mag };
    }
    1.0 / libm::tgamma(x)
}

/// ln|Γ(x)| together with the sign of Γ(x).
pub fn lgamma_signed(x: f64) -> (f64, f64) {
    let (lg, sign) = libm::lgamma_r(x);
    (lg, if sign < 0 { -1.0 } else { 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(gamma_real(1.0).unwrap(), 1.0);
        assert_eq!(gamma_real(5.0).unwrap(), 24.0);
        let sqrt_pi = 1.772_453_850_905_516;
        assert!((gamma_real(0.5).unwrap() - sqrt_pi).abs() < 4e-16);
        assert!((gamma_real(-0.5).unwrap() + 3.544_907_701_811_032).abs() < 1e-15);
        assert!((gamma_real(1.5).unwrap() - 0.886_226_925_452_758_0).abs() < 4e-16);
        // Γ(0.25) = 3.6256099082219083119...
        assert!((gamma_real(0.25).unwrap() - 3.625_609_908_221_908).abs() < 2e-15);
    }

    #[test]
    fn poles_are_distinct_errors() {
        for x in [0.0, -1.0, -2.0, -17.0] {
            assert_eq!(gamma_real(x), Err(Error::GammaPole { x }));
            assert_eq!(rgamma(x), 0.0);
        }
        assert!(matches!(gamma_real(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn reciprocal_matches_inverse_and_extends() {
        for x in [0.1, 0.75, 2.3, 10.5, -0.25, -1.5, -3.7] {
            let g = gamma_real(x).unwrap();
            assert!((rgamma(x) * g - 1.0).abs() < 1e-14, "x = {x}");
        }
        // 1/Γ(200) underflows gracefully rather than dividing by infinity.
        assert!(rgamma(200.0) >= 0.0 && rgamma(200.0) < 1e-300);
        // Reflection branch: 1/Γ(-180.5) = Γ(181.5) sin(-180.5π)/π (huge, finite or inf).
        let r = rgamma(-170.5);
        assert!(r.is_finite() && r.abs() > 1e300);
    }

    #[test]
    fn signed_log_gamma() {
        let (lg, s) = lgamma_signed(-0.5);
        assert_eq!(s, -1.0);
        assert!((lg - libm::log(3.544_907_701_811_032)).abs() < 1e-15);
    }
}
