//! The k-gamma family.
//!
//! Everything is computed through the classical functions using
//! `Γ_k(t) = k^{t/k − 1} Γ(t/k)`, which gives
//!
//! * `ln Γ_k(t) = (t/k − 1) ln k + ln Γ(t/k)`
//! * `Ψ_k(t) = ln(k)/k + ψ(t/k)/k`
//! * `Ψ_k′(t) = ψ′(t/k)/k²`
//!
//! The defining integral `∫₀^∞ s^{t−1} e^{−s^k/k} ds` and the series
//! `Ψ_k(t) = (ln k − γ)/k − 1/t + Σ_{n≥1} t/(nk(nk + t))` are only used as
//! test oracles.

use crate::classical;
use crate::math;
use crate::{Error, Result};

pub use crate::classical::EULER_GAMMA;

/// Largest `x` with `exp(x)` finite.
const LN_MAX: f64 = 709.782_712_893_384;

/// A validated `(t, k)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KGammaArg {
    pub t: f64,
    pub k: f64,
}

impl KGammaArg {
    /// Accepts any finite `t` with `k > 0`; the per-function domain is
    /// checked by the function itself.
    pub fn new(t: f64, k: f64) -> Result<Self> {
        check_k(k)?;
        if !t.is_finite() {
            return Err(Error::DomainError("argument must be finite"));
        }
        Ok(Self { t, k })
    }

    fn positive(t: f64, k: f64) -> Result<Self> {
        let arg = Self::new(t, k)?;
        if t <= 0.0 {
            return Err(Error::DomainError("argument must be positive"));
        }
        Ok(arg)
    }
}

pub(crate) fn check_k(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter("k must be positive"))
    }
}

/// k-Pochhammer symbol `(x)_{n,k} = x (x + k) ⋯ (x + (n − 1)k)`.
pub fn k_pochhammer(x: f64, n: u32, k: f64) -> Result<f64> {
    check_k(k)?;
    let value = (0..n).fold(1.0, |acc, i| acc * (x + f64::from(i) * k));
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow)
    }
}

/// `ln Γ_k(t)` for `t > 0`.
pub fn ln_k_gamma(t: f64, k: f64) -> Result<f64> {
    let arg = KGammaArg::positive(t, k)?;
    Ok(ln_k_gamma_unchecked(arg.t, arg.k))
}

pub(crate) fn ln_k_gamma_unchecked(t: f64, k: f64) -> f64 {
    let z = t / k;
    (z - 1.0) * math::ln(k) + classical::ln_gamma(z)
}

/// `Γ_k(t)` for `t > 0`, and for `t ∈ (−k, 0)` through `Γ_k(t) = Γ_k(t + k)/t`.
pub fn k_gamma(t: f64, k: f64) -> Result<f64> {
    let arg = KGammaArg::new(t, k)?;
    let (t, k) = (arg.t, arg.k);
    if t > 0.0 {
        let ln = ln_k_gamma_unchecked(t, k);
        if ln > LN_MAX {
            return Err(Error::Overflow);
        }
        Ok(math::exp(ln))
    } else if t == 0.0 {
        Err(Error::DomainError("k-gamma has a pole at 0"))
    } else if t > -k {
        let shifted = k_gamma(t + k, k)?;
        let value = shifted / t;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Overflow)
        }
    } else {
        Err(Error::DomainError("k-gamma is only extended to t > -k"))
    }
}

/// k-digamma `Ψ_k(t) = Γ_k′(t)/Γ_k(t)` for `t > 0`.
pub fn k_digamma(t: f64, k: f64) -> Result<f64> {
    let arg = KGammaArg::positive(t, k)?;
    Ok((math::ln(arg.k) + classical::digamma(arg.t / arg.k)) / arg.k)
}

/// k-trigamma `Ψ_k′(t) = Σ_{n≥0} 1/(nk + t)²` for `t > 0`.
pub fn k_trigamma(t: f64, k: f64) -> Result<f64> {
    let arg = KGammaArg::positive(t, k)?;
    Ok(classical::trigamma(arg.t / arg.k) / (arg.k * arg.k))
}

/// k-beta `B_k(x, y) = Γ_k(x) Γ_k(y) / Γ_k(x + y)`.
pub fn k_beta(x: f64, y: f64, k: f64) -> Result<f64> {
    let ln = ln_k_beta(x, y, k)?;
    if ln > LN_MAX {
        return Err(Error::Overflow);
    }
    Ok(math::exp(ln))
}

/// `ln B_k(x, y)`, symmetric in `x` and `y` bit for bit.
pub fn ln_k_beta(x: f64, y: f64, k: f64) -> Result<f64> {
    KGammaArg::positive(x, k)?;
    KGammaArg::positive(y, k)?;
    let (a, b) = (ln_k_gamma_unchecked(x, k), ln_k_gamma_unchecked(y, k));
    Ok((a + b) - ln_k_gamma_unchecked(x + y, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn pochhammer_basics() {
        assert_eq!(k_pochhammer(2.0, 0, 1.0).unwrap(), 1.0);
        assert_eq!(k_pochhammer(2.0, 3, 1.0).unwrap(), 24.0);
        assert_eq!(k_pochhammer(-1.0, 2, 1.0).unwrap(), -0.0);
        assert!(matches!(k_pochhammer(1.0, 2, 0.0), Err(Error::InvalidParameter(_))));
        assert_eq!(k_pochhammer(1e200, 3, 1.0), Err(Error::Overflow));
    }

    #[test]
    fn unit_values() {
        for k in [0.5, 1.0, 2.0] {
            assert_eq!(ln_k_gamma(k, k).unwrap(), 0.0);
        }
        assert_eq!(ln_k_gamma(5.0, 1.0).unwrap(), 24.0_f64.ln());
        assert_eq!(k_gamma(2.0, 2.0).unwrap(), 1.0);
        assert_eq!(k_gamma(1.0, 1.0).unwrap(), 1.0);
        assert_eq!(k_beta(1.0, 1.0, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn negative_extension() {
        let got = k_gamma(-0.5, 1.0).unwrap();
        let want = -2.0 * PI.sqrt();
        assert!((got - want).abs() < 1e-14 * want.abs());
        assert!(matches!(k_gamma(0.0, 1.0), Err(Error::DomainError(_))));
        assert!(matches!(k_gamma(-1.0, 1.0), Err(Error::DomainError(_))));
        assert!(matches!(k_gamma(-2.5, 2.0), Err(Error::DomainError(_))));
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(k_gamma(200.0, 1.0), Err(Error::Overflow));
        assert!(ln_k_gamma(200.0, 1.0).unwrap().is_finite());
    }

    #[test]
    fn digamma_reductions() {
        assert_eq!(k_digamma(1.0, 1.0).unwrap(), -EULER_GAMMA);
        assert_eq!(k_digamma(2.0, 1.0).unwrap(), 1.0 - EULER_GAMMA);
        let z = k_trigamma(1.0, 1.0).unwrap();
        assert!((z - PI * PI / 6.0).abs() < 1e-15);
        let z = k_trigamma(2.0, 1.0).unwrap();
        assert!((z - (PI * PI / 6.0 - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(ln_k_gamma(1.0, -1.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(ln_k_gamma(-1.0, 1.0), Err(Error::DomainError(_))));
        assert!(matches!(k_digamma(0.0, 1.0), Err(Error::DomainError(_))));
        assert!(matches!(k_beta(1.0, f64::NAN, 1.0), Err(Error::DomainError(_))));
        assert!(matches!(KGammaArg::new(1.0, f64::INFINITY), Err(Error::InvalidParameter(_))));
    }
}
