//! Integral representations of `W^k_{ν,c}` for `c = ±α²` and general `c`.
//!
//! ```text
//! W^k_{ν,α²}(x)  = 2 / (√(πk) Γ_k(ν + k/2)) (x/2)^{ν/k} ∫₀¹ (1 − t²)^{ν/k − 1/2} cos(αxt/√k) dt
//! W^k_{ν,−α²}(x) = same with cosh
//! W^k_{ν,c}(x)   = 2 / (k Γ_k(ν)) (x/2)^{ν/k} ∫₀¹ t (1 − t²)^{ν/k − 1} K_c(xt/√k) dt
//! ```
//!
//! with `K_c(u) = Σ_r (−c)^r (u/2)^{2r} / (r!)²`. The endpoint powers are
//! absorbed into Gauss–Jacobi weights, so `ν/k` may sit anywhere in the
//! admissible range without degrading convergence.

use crate::kgamma::{check_k, ln_k_gamma_unchecked};
use crate::math;
use crate::quadrature::{Quadrature, Refined};
use crate::sum::Compensated;
use crate::{Error, Result};

/// Parameters of the cos/cosh representations: `c = ±α²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralRepParams {
    k: f64,
    nu: f64,
    alpha: f64,
    x: f64,
}

impl IntegralRepParams {
    /// Requires `k > 0`, `α ≥ 0` and `x > 0`. The admissible `ν` depends on
    /// the representation and is checked there.
    pub fn new(k: f64, nu: f64, alpha: f64, x: f64) -> Result<Self> {
        check_k(k)?;
        if !nu.is_finite() {
            return Err(Error::InvalidParameter("nu must be finite"));
        }
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter("alpha must be non-negative"));
        }
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::DomainError("x must be positive"));
        }
        Ok(Self { k, nu, alpha, x })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn x(&self) -> f64 {
        self.x
    }
}

/// Even kernels used by the cos/cosh representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvenKernel {
    Cos,
    Cosh,
}

impl EvenKernel {
    fn eval(self, u: f64) -> f64 {
        match self {
            EvenKernel::Cos => math::cos(u),
            EvenKernel::Cosh => math::cosh(u),
        }
    }
}

/// `∫₀¹ (1 − t²)^a q(βt) dt` for `a > −1`, with `q` the chosen kernel.
pub fn even_weighted_integral(
    a: f64,
    beta: f64,
    kernel: EvenKernel,
    quad: &mut Quadrature,
) -> Result<Refined> {
    if !(a > -1.0) {
        return Err(Error::InvalidParameter("weight exponent must exceed -1"));
    }
    // the integrand is even, so ∫₀¹ = ½ ∫_{−1}^{1}
    let full = quad.integrate(a, a, |t| kernel.eval(beta * t))?;
    Ok(Refined { value: full.value / 2.0, nodes: full.nodes, change: full.change / 2.0 })
}

fn scaled(ln_prefactor: f64, r: Refined) -> Result<Refined> {
    let factor = math::exp(ln_prefactor);
    let value = factor * r.value;
    if !value.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(Refined { value, nodes: r.nodes, change: factor * r.change })
}

fn cos_family(p: &IntegralRepParams, kernel: EvenKernel, quad: &mut Quadrature) -> Result<Refined> {
    let e = p.nu / p.k;
    if !(e > -0.5) {
        return Err(Error::InvalidParameter("cos/cosh representation needs nu/k > -1/2"));
    }
    let beta = p.alpha * p.x / math::sqrt(p.k);
    let integral = even_weighted_integral(e - 0.5, beta, kernel, quad)?;
    let ln_pref = math::LN_2 - 0.5 * math::ln(math::PI * p.k)
        - ln_k_gamma_unchecked(p.nu + p.k / 2.0, p.k)
        + e * math::ln(p.x / 2.0);
    scaled(ln_pref, integral)
}

/// `W^k_{ν,α²}(x)` through the cosine representation.
pub fn eval_w_cos(p: &IntegralRepParams, quad: &mut Quadrature) -> Result<Refined> {
    cos_family(p, EvenKernel::Cos, quad)
}

/// `W^k_{ν,−α²}(x)` through the hyperbolic cosine representation.
pub fn eval_w_cosh(p: &IntegralRepParams, quad: &mut Quadrature) -> Result<Refined> {
    cos_family(p, EvenKernel::Cosh, quad)
}

/// `Σ_r (−z)^r / (r!)²`: the zeroth-order kernel as a series in `z = c u²/4`.
fn kernel_series(z: f64) -> f64 {
    let mut acc = Compensated::default();
    let mut term = 1.0_f64;
    let mut r = 0.0_f64;
    loop {
        acc.add(term);
        r += 1.0;
        term *= -z / (r * r);
        if math::abs(term) <= 1e-18 * math::abs(acc.value()) || term == 0.0 {
            acc.add(term);
            return acc.value();
        }
    }
}

/// `W^k_{ν,c}(x)` through the zeroth-order kernel representation. Needs
/// `ν > 0`. `p.alpha()` is ignored; `c` is passed directly.
pub fn eval_w_bessel_kernel(p: &IntegralRepParams, c: f64, quad: &mut Quadrature) -> Result<Refined> {
    if !(p.nu > 0.0) {
        return Err(Error::InvalidParameter("kernel representation needs nu > 0"));
    }
    if !c.is_finite() {
        return Err(Error::InvalidParameter("c must be finite"));
    }
    let e = p.nu / p.k;
    let b = e - 1.0;
    // t² = s = (1 + y)/2 maps ∫₀¹ t(1−t²)^b K dt to 2^{−b−2} ∫ (1−y)^b K̃ dy
    let z_per_s = c * p.x * p.x / (4.0 * p.k);
    let integral = quad.integrate(b, 0.0, |y| kernel_series(z_per_s * (1.0 + y) / 2.0))?;
    let ln_pref = math::LN_2 - math::ln(p.k) - ln_k_gamma_unchecked(p.nu, p.k)
        + e * math::ln(p.x / 2.0)
        - (b + 2.0) * math::LN_2;
    scaled(ln_pref, integral)
}

/// Outcome of comparing `sin(αx/√k)` (or `sinh`) with `√(πx/2) W^k_{k/2,±α²}(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfOrderRelation {
    /// `sin(αx/√k)` or `sinh(αx/√k)`.
    pub lhs: f64,
    /// `W^k_{k/2,±α²}(x)` from the series.
    pub w: f64,
    /// `lhs − (α/k) √(πx/2) W`.
    pub residual_alpha_over_k: f64,
    /// `lhs − α √(πx/2) W`.
    pub residual_alpha: f64,
    /// The constant `C` with `lhs = C √(πx/2) W`.
    pub fitted_constant: f64,
}

fn half_order_relation(k: f64, alpha: f64, x: f64, c: f64, lhs: f64) -> Result<HalfOrderRelation> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::DomainError("x must be positive"));
    }
    let p = crate::KBesselParams::new(k, k / 2.0, c)?;
    let w = crate::kbessel::eval_w(&p, x, &crate::SeriesConfig::default())?.value;
    let base = math::sqrt(math::PI * x / 2.0) * w;
    Ok(HalfOrderRelation {
        lhs,
        w,
        residual_alpha_over_k: lhs - alpha / k * base,
        residual_alpha: lhs - alpha * base,
        fitted_constant: lhs / base,
    })
}

/// Compares `sin(αx/√k)` with `√(πx/2) W^k_{k/2,α²}(x)`.
pub fn sin_relation_check(k: f64, alpha: f64, x: f64) -> Result<HalfOrderRelation> {
    check_k(k)?;
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter("alpha must be positive"));
    }
    half_order_relation(k, alpha, x, alpha * alpha, math::sin(alpha * x / math::sqrt(k)))
}

/// Compares `sinh(αx/√k)` with `√(πx/2) W^k_{k/2,−α²}(x)`.
pub fn sinh_relation_check(k: f64, alpha: f64, x: f64) -> Result<HalfOrderRelation> {
    check_k(k)?;
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter("alpha must be positive"));
    }
    half_order_relation(k, alpha, x, -alpha * alpha, math::sinh(alpha * x / math::sqrt(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadConfig;

    fn quad() -> Quadrature {
        Quadrature::new(QuadConfig::default()).unwrap()
    }

    #[test]
    fn half_order_closed_forms() {
        let p = IntegralRepParams::new(1.0, 0.5, 1.0, 1.0).unwrap();
        let j = eval_w_cos(&p, &mut quad()).unwrap().value;
        let i = eval_w_cosh(&p, &mut quad()).unwrap().value;
        let s = (2.0 / core::f64::consts::PI).sqrt();
        assert!((j - s * 1f64.sin()).abs() < 1e-14);
        assert!((i - s * 1f64.sinh()).abs() < 1e-14);
    }

    #[test]
    fn alpha_zero_is_single_term() {
        let mut q = quad();
        for (k, nu) in [(1.0, 0.3), (2.0, -0.5), (0.5, 1.0)] {
            let p = IntegralRepParams::new(k, nu, 0.0, 1.0).unwrap();
            let got = eval_w_cos(&p, &mut q).unwrap().value;
            let want = (0.5f64.powf(nu / k) / crate::kgamma::k_gamma(nu + k, k).unwrap()) as f64;
            assert!((got - want).abs() < 1e-13 * want, "{k} {nu}: {got} vs {want}");
        }
    }

    #[test]
    fn kernel_path_needs_positive_order() {
        let p = IntegralRepParams::new(1.0, 0.0, 1.0, 1.0).unwrap();
        assert!(matches!(eval_w_bessel_kernel(&p, 1.0, &mut quad()), Err(Error::InvalidParameter(_))));
        let p = IntegralRepParams::new(1.0, -0.5, 1.0, 1.0).unwrap();
        assert!(eval_w_cos(&p, &mut quad()).is_err());
        assert!(IntegralRepParams::new(1.0, 1.0, -1.0, 1.0).is_err());
        assert!(IntegralRepParams::new(1.0, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn sin_relation_constant_is_alpha() {
        let r = sin_relation_check(1.0, 1.0, 1.0).unwrap();
        assert!(r.residual_alpha.abs() < 1e-14);
        assert!(r.residual_alpha_over_k.abs() < 1e-14);
        let r = sinh_relation_check(4.0, 2.0, 0.5).unwrap();
        assert!((r.fitted_constant - 2.0).abs() < 1e-14);
        assert!(r.residual_alpha_over_k.abs() > 0.1);
    }
}
