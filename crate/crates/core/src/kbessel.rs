//! Series evaluation of the generalized k-Bessel function `W^k_{ν,c}`.
//!
//! Every evaluation goes through the *normalized* series
//!
//! ```text
//! S(x) = Σ_r ρ_r,   ρ_0 = 1,   ρ_{r+1} = ρ_r · (−c)(x/2)² / ((r + 1)(rk + ν + k))
//! ```
//!
//! so that `W = (x/2)^{ν/k} / Γ_k(ν + k) · S`. Only the leading factor is
//! formed in log space; the ratio recurrence keeps the relative error of
//! each term at a few ulps, which matters for the alternating (`c > 0`) case.

use alloc::vec::Vec;

use crate::kgamma::{check_k, ln_k_gamma_unchecked};
use crate::math;
use crate::sum::Compensated;
use crate::{Error, Result};

/// The family parameters `(k, ν, c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KBesselParams {
    k: f64,
    nu: f64,
    c: f64,
}

impl KBesselParams {
    /// Requires `k > 0` and `ν > −k`.
    pub fn new(k: f64, nu: f64, c: f64) -> Result<Self> {
        check_k(k)?;
        if !nu.is_finite() || nu <= -k {
            return Err(Error::InvalidParameter("nu must exceed -k"));
        }
        if !c.is_finite() {
            return Err(Error::InvalidParameter("c must be finite"));
        }
        Ok(Self { k, nu, c })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Same `k` and `c`, different order.
    pub fn with_nu(&self, nu: f64) -> Result<Self> {
        Self::new(self.k, nu, self.c)
    }

    /// `ν/k`, the exponent of the leading power `(x/2)^{ν/k}`.
    pub fn exponent(&self) -> f64 {
        self.nu / self.k
    }
}

/// Truncation policy for the power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    /// Stop once two consecutive terms are below `rel_tol · |partial sum|`.
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-14, max_terms: 500 }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return Err(Error::InvalidParameter("rel_tol must be positive"));
        }
        if self.max_terms == 0 {
            return Err(Error::InvalidParameter("max_terms must be at least 1"));
        }
        Ok(())
    }
}

/// A value together with the work spent and a bound on the discarded tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub terms_used: usize,
    pub est_error: f64,
}

impl EvalResult {
    fn exact(value: f64) -> Self {
        Self { value, terms_used: 1, est_error: 0.0 }
    }
}

/// `W`, `W′` and `W″` from term-wise differentiation of the series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WithDerivatives {
    pub value: f64,
    pub first: f64,
    pub second: f64,
    pub terms_used: usize,
}

fn term_ratio(k: f64, nu: f64, c: f64, q: f64, r: usize) -> f64 {
    let r = r as f64;
    -c * q / ((r + 1.0) * (r * k + nu + k))
}

/// Sum of the normalized series `Σ ρ_r` with `q = (x/2)²`.
fn normalized_sum(k: f64, nu: f64, c: f64, q: f64, cfg: &SeriesConfig) -> Result<EvalResult> {
    cfg.validate()?;
    let mut acc = Compensated::default();
    let mut term = 1.0_f64;
    let mut small_run = 0;
    for r in 0..cfg.max_terms {
        acc.add(term);
        let ratio = term_ratio(k, nu, c, q, r);
        let next = term * ratio;
        if !next.is_finite() || !acc.value().is_finite() {
            return Err(Error::Overflow);
        }
        if next == 0.0 {
            return Ok(EvalResult { value: acc.value(), terms_used: r + 1, est_error: 0.0 });
        }
        if math::abs(term) <= cfg.rel_tol * math::abs(acc.value()) {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 2 {
            return Ok(EvalResult {
                value: acc.value(),
                terms_used: r + 1,
                est_error: tail_bound(next, term_ratio(k, nu, c, q, r + 1)),
            });
        }
        term = next;
    }
    Err(Error::NonConvergence { terms: cfg.max_terms, last_term: term })
}

/// Bound on the discarded tail given the first omitted term and the ratio
/// that produces the one after it. Ratios shrink in magnitude with `r`, so
/// an alternating tail is bounded by its first term and a positive tail by
/// a geometric series.
fn tail_bound(first_omitted: f64, next_ratio: f64) -> f64 {
    let magnitude = math::abs(first_omitted);
    if next_ratio > 0.0 && next_ratio < 1.0 {
        magnitude / (1.0 - next_ratio)
    } else {
        magnitude
    }
}

/// `ln((x/2)^{ν/k} / Γ_k(ν + k))` for `x > 0`.
fn ln_leading(p: &KBesselParams, x: f64) -> f64 {
    let power = if p.nu == 0.0 { 0.0 } else { p.exponent() * math::ln(x / 2.0) };
    power - ln_k_gamma_unchecked(p.nu + p.k, p.k)
}

/// Multiplies `scaled` by `exp(ln_factor)` without spurious under/overflow.
fn apply_leading(ln_factor: f64, scaled: f64) -> Result<f64> {
    let factor = math::exp(ln_factor);
    let value = if factor.is_finite() && factor >= f64::MIN_POSITIVE {
        factor * scaled
    } else if scaled == 0.0 {
        0.0
    } else {
        math::copysign(math::exp(ln_factor + math::ln(math::abs(scaled))), scaled)
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow)
    }
}

fn check_x(x: f64) -> Result<()> {
    if x.is_nan() || x < 0.0 || x == f64::INFINITY {
        Err(Error::DomainError("x must be finite and non-negative"))
    } else {
        Ok(())
    }
}

/// Value at `x = 0`, defined by the limit of the leading power.
fn value_at_origin(p: &KBesselParams) -> Result<EvalResult> {
    if p.nu > 0.0 {
        Ok(EvalResult::exact(0.0))
    } else if p.nu == 0.0 {
        Ok(EvalResult::exact(math::exp(-ln_k_gamma_unchecked(p.k, p.k))))
    } else {
        Err(Error::DomainError("x = 0 requires nu >= 0"))
    }
}

/// `W^k_{ν,c}(x)` for `x ≥ 0`.
pub fn eval_w(p: &KBesselParams, x: f64, cfg: &SeriesConfig) -> Result<EvalResult> {
    check_x(x)?;
    if x == 0.0 {
        return value_at_origin(p);
    }
    let half = x / 2.0;
    let s = normalized_sum(p.k, p.nu, p.c, half * half, cfg)?;
    let ln_lead = ln_leading(p, x);
    Ok(EvalResult {
        value: apply_leading(ln_lead, s.value)?,
        terms_used: s.terms_used,
        est_error: if s.est_error == 0.0 { 0.0 } else { apply_leading(ln_lead, s.est_error)? },
    })
}

/// The normalized series `(2/x)^{ν/k} Γ_k(ν + k) W^k_{ν,c}(x) = Σ_r (−c)^r f_r x^{2r}`
/// for any real `x`. It is even in `x` and equals 1 at the origin.
pub fn eval_normalized(p: &KBesselParams, x: f64, cfg: &SeriesConfig) -> Result<EvalResult> {
    if !x.is_finite() {
        return Err(Error::DomainError("x must be finite"));
    }
    let q = x * x / 4.0;
    normalized_sum(p.k, p.nu, p.c, q, cfg)
}

/// `𝕀^k_ν(x) = Σ_r f_r(ν) x^{2r}`, `f_r(ν) = Γ_k(ν + k) / (Γ_k(rk + ν + k) 4^r r!)`:
/// the normalized function for `c = −1`.
pub fn eval_normalized_i(k: f64, nu: f64, x: f64, cfg: &SeriesConfig) -> Result<EvalResult> {
    eval_normalized(&KBesselParams::new(k, nu, -1.0)?, x, cfg)
}

/// `𝒥^k_ν(x) = Σ_r (−1)^r f_r(ν) x^{2r}`: the normalized function for `c = 1`.
pub fn eval_normalized_j(k: f64, nu: f64, x: f64, cfg: &SeriesConfig) -> Result<EvalResult> {
    eval_normalized(&KBesselParams::new(k, nu, 1.0)?, x, cfg)
}

/// `W`, `dW/dx` and `d²W/dx²` at `x > 0`, differentiating each power of `x`
/// in the series analytically.
pub fn eval_w_with_derivatives(
    p: &KBesselParams,
    x: f64,
    cfg: &SeriesConfig,
) -> Result<WithDerivatives> {
    cfg.validate()?;
    check_x(x)?;
    if x == 0.0 {
        return Err(Error::DomainError("derivatives need x > 0"));
    }
    let half = x / 2.0;
    let q = half * half;
    let e = p.exponent();
    let mut sums = [Compensated::default(); 3];
    let mut term = 1.0_f64;
    let mut small_run = 0;
    let mut used = None;
    for r in 0..cfg.max_terms {
        let power = 2.0 * r as f64 + e;
        let parts = [term, term * power, term * power * (power - 1.0)];
        for (acc, part) in sums.iter_mut().zip(parts) {
            acc.add(part);
        }
        let negligible = parts
            .iter()
            .zip(&sums)
            .all(|(part, acc)| math::abs(*part) <= cfg.rel_tol * math::abs(acc.value()));
        small_run = if negligible { small_run + 1 } else { 0 };
        let next = term * term_ratio(p.k, p.nu, p.c, q, r);
        if small_run >= 2 || next == 0.0 {
            used = Some(r + 1);
            break;
        }
        term = next;
    }
    let terms_used =
        used.ok_or(Error::NonConvergence { terms: cfg.max_terms, last_term: term })?;
    let ln_lead = ln_leading(p, x);
    Ok(WithDerivatives {
        value: apply_leading(ln_lead, sums[0].value())?,
        first: apply_leading(ln_lead, sums[1].value())? / x,
        second: apply_leading(ln_lead, sums[2].value())? / (x * x),
        terms_used,
    })
}

/// One term `weight · W_{order}` of a finite linear combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderTerm {
    pub order: f64,
    pub weight: f64,
}

fn binomial(m: u32, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * f64::from(m - i) / f64::from(i + 1))
}

/// Coefficients of
/// `dᵐW_ν/dxᵐ = (2k)^{−m} Σ_{n=0}^{m} (−1)^n C(m, n) (ck)^n W_{ν−mk+2nk}`.
pub fn derivative_terms(p: &KBesselParams, m: u32) -> Result<Vec<OrderTerm>> {
    if m == 0 {
        return Err(Error::InvalidParameter("derivative order must be positive"));
    }
    let lowest = p.nu - f64::from(m) * p.k;
    if lowest <= -p.k {
        return Err(Error::InvalidParameter("every order nu - m k + 2 n k must exceed -k"));
    }
    let ck = p.c * p.k;
    let denom = (0..m).fold(1.0, |acc, _| acc * (2.0 * p.k));
    Ok((0..=m)
        .map(|n| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let ck_pow = (0..n).fold(1.0, |acc, _| acc * ck);
            let shift = 2 * i64::from(n) - i64::from(m);
            OrderTerm {
                order: p.nu + shift as f64 * p.k,
                weight: sign * binomial(m, n) * ck_pow / denom,
            }
        })
        .collect())
}

/// `dᵐ/dxᵐ W^k_{ν,c}(x)` as a finite combination of shifted orders. Fails
/// when some shifted order is `≤ −k`; [`deriv_w_termwise`] covers that case.
pub fn deriv_w(p: &KBesselParams, x: f64, m: u32, cfg: &SeriesConfig) -> Result<EvalResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::DomainError("derivatives need x > 0"));
    }
    let terms = derivative_terms(p, m)?;
    let mut acc = Compensated::default();
    let mut est_error = 0.0;
    let mut terms_used = 0;
    for t in &terms {
        let w = eval_w(&p.with_nu(t.order)?, x, cfg)?;
        acc.add(t.weight * w.value);
        est_error += math::abs(t.weight) * w.est_error;
        terms_used = terms_used.max(w.terms_used);
    }
    Ok(EvalResult { value: acc.value(), terms_used, est_error })
}

/// `(p)(p − 1)⋯(p − m + 1)`.
fn falling(p: f64, m: u32) -> f64 {
    (0..m).fold(1.0, |acc, i| acc * (p - f64::from(i)))
}

/// `dᵐW/dxᵐ` from the series with each `x^{2r+ν/k}` differentiated exactly.
/// Valid for every admissible order.
pub fn deriv_w_termwise(p: &KBesselParams, x: f64, m: u32, cfg: &SeriesConfig) -> Result<EvalResult> {
    cfg.validate()?;
    if m == 0 {
        return Err(Error::InvalidParameter("derivative order must be positive"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::DomainError("derivatives need x > 0"));
    }
    let half = x / 2.0;
    let q = half * half;
    let e = p.exponent();
    let mut acc = Compensated::default();
    let mut term = 1.0_f64;
    let mut small_run = 0;
    for r in 0..cfg.max_terms {
        let part = term * falling(2.0 * r as f64 + e, m);
        acc.add(part);
        let next = term * term_ratio(p.k, p.nu, p.c, q, r);
        if !next.is_finite() || !acc.value().is_finite() {
            return Err(Error::Overflow);
        }
        // leading parts may vanish identically for integer exponents
        let settled = 2 * r as u64 >= u64::from(m);
        if settled && math::abs(part) <= cfg.rel_tol * math::abs(acc.value()) {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 2 || next == 0.0 {
            let next_part = next * falling(2.0 * (r + 1) as f64 + e, m);
            let ln_lead = ln_leading(p, x) - f64::from(m) * math::ln(x);
            let tail = tail_bound(next_part, term_ratio(p.k, p.nu, p.c, q, r + 1));
            return Ok(EvalResult {
                value: apply_leading(ln_lead, acc.value())?,
                terms_used: r + 1,
                est_error: if tail == 0.0 { 0.0 } else { apply_leading(ln_lead, tail)? },
            });
        }
        term = next;
    }
    Err(Error::NonConvergence { terms: cfg.max_terms, last_term: term })
}

/// `W_{ν+k}` from `W_{ν−k}` and `W_ν` via `2ν W_ν = x W_{ν−k} + x c k W_{ν+k}`.
///
/// Like the classical upward Bessel recurrence this loses accuracy quickly
/// for `c > 0` once the order exceeds the argument; it exists to check the
/// identity, not to generate orders.
pub fn recurrence_step_up(p: &KBesselParams, x: f64, w_lo: f64, w_mid: f64) -> Result<f64> {
    if p.c == 0.0 {
        return Err(Error::InvalidParameter("upward recurrence divides by c"));
    }
    if p.nu <= 0.0 {
        return Err(Error::InvalidParameter("upward recurrence needs nu > 0"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::DomainError("upward recurrence needs x > 0"));
    }
    Ok((2.0 * p.nu * w_mid / x - w_lo) / (p.c * p.k))
}

/// `(2/x) Σ_{r<terms} s^r (ν + 2rk) W_{ν+2rk}(x)` with `s` the ratio between
/// consecutive weights.
pub(crate) fn multisection_sum(
    p: &KBesselParams,
    x: f64,
    terms: usize,
    step: f64,
    cfg: &SeriesConfig,
) -> Result<EvalResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::DomainError("multisection needs x > 0"));
    }
    if terms == 0 {
        return Err(Error::InvalidParameter("multisection needs at least one term"));
    }
    let term_at = |r: usize| -> Result<f64> {
        let order = p.nu + 2.0 * r as f64 * p.k;
        let w = eval_w(&p.with_nu(order)?, x, cfg)?;
        let scale = (0..r).fold(1.0, |acc, _| acc * step);
        Ok(scale * order * w.value)
    };
    let mut acc = Compensated::default();
    let mut last = 0.0;
    for r in 0..terms {
        last = term_at(r)?;
        acc.add(last);
    }
    let omitted = term_at(terms)?;
    if omitted != 0.0 && math::abs(omitted) >= math::abs(last) {
        return Err(Error::NonConvergence { terms, last_term: omitted });
    }
    Ok(EvalResult {
        value: 2.0 / x * acc.value(),
        terms_used: terms,
        est_error: 2.0 / x * math::abs(omitted),
    })
}

/// Right-hand side of the multisection identity
/// `W_{ν−k}(x) = (2/x) Σ_{r≥0} (−ck)^r (ν + 2rk) W_{ν+2rk}(x)`, truncated
/// after `terms` terms.
pub fn multisection_lhs(
    p: &KBesselParams,
    x: f64,
    terms: usize,
    cfg: &SeriesConfig,
) -> Result<EvalResult> {
    multisection_sum(p, x, terms, -p.c * p.k, cfg)
}
