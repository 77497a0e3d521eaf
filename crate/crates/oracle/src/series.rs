//! Brute-force power series with double-double accumulation.

use crate::gamma::{gamma, ln_gamma};
use crate::Dd;

/// Terms used by the classical Bessel oracles.
pub const CLASSICAL_TERMS: usize = 60;

fn classical(nu: f64, x: f64, sign: f64) -> f64 {
    let q = Dd::new(x / 2.0) * Dd::new(x / 2.0);
    let mut term = Dd::ONE;
    let mut acc = Dd::ONE;
    for r in 0..CLASSICAL_TERMS - 1 {
        let r = r as f64;
        term = term * q * sign / ((r + 1.0) * (r + nu + 1.0));
        acc = acc + term;
    }
    let lead = (x / 2.0).powf(nu) / gamma(nu + 1.0);
    (acc * lead).to_f64()
}

/// `J_ν(x) = Σ (−1)^r (x/2)^{2r+ν} / (r! Γ(r + ν + 1))`, 60 terms.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    classical(nu, x, -1.0)
}

/// `I_ν(x) = Σ (x/2)^{2r+ν} / (r! Γ(r + ν + 1))`, 60 terms.
pub fn bessel_i(nu: f64, x: f64) -> f64 {
    classical(nu, x, 1.0)
}

/// `Σ_{r<terms} (−c)^r x^{2r} / (4^r r! (ν+k)(ν+2k)⋯(ν+rk))` in double-double.
pub fn normalized(k: f64, nu: f64, c: f64, x: f64, terms: usize) -> Dd {
    let q = Dd::new(x) * Dd::new(x) / 4.0;
    let mut term = Dd::ONE;
    let mut acc = Dd::ONE;
    for r in 1..terms {
        let rf = r as f64;
        term = term * q * (-c) / (Dd::new(rf) * (Dd::new(nu) + Dd::new(rf * k)));
        acc = acc + term;
    }
    acc
}

/// `W^k_{ν,c}(x)` for `x > 0` from the double-double normalized series.
pub fn k_bessel(k: f64, nu: f64, c: f64, x: f64, terms: usize) -> f64 {
    let e = nu / k;
    let ln_lead = e * (x / 2.0).ln() - ((nu + k) / k - 1.0) * k.ln() - ln_gamma((nu + k) / k);
    (normalized(k, nu, c, x, terms) * ln_lead.exp()).to_f64()
}
