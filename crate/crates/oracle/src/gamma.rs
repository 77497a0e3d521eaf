//! Gamma, digamma and trigamma by methods independent of the library.

use crate::Dd;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` by the Lanczos approximation (`g = 7`, 9 terms).
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0);
    if x < 0.5 {
        // reflection keeps the series argument ≥ 1/2
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let a = LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS[0], |acc, (i, c)| acc + c / (z + (i + 1) as f64));
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}

/// `Γ(x)` for `x > 0`, or `x < 0` non-integer by reflection.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    ln_gamma(x).exp()
}

/// `Γ_k(t) = k^{t/k − 1} Γ(t/k)` with the Lanczos gamma.
pub fn k_gamma(t: f64, k: f64) -> f64 {
    (((t / k) - 1.0) * k.ln() + ln_gamma(t / k)).exp()
}

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Terms summed directly before the Euler–Maclaurin tail.
const DIRECT_TERMS: usize = 2000;

/// `Ψ_k(t) = (ln k − γ)/k − 1/t + Σ_{n≥1} t/(nk(nk + t))`, summed directly
/// with an Euler–Maclaurin tail.
pub fn k_digamma_series(t: f64, k: f64) -> f64 {
    let a = t / k;
    let mut acc = Dd::new((k.ln() - EULER_GAMMA) / k) - Dd::new(1.0 / t);
    for n in 1..=DIRECT_TERMS {
        let nk = n as f64 * k;
        acc = acc + Dd::new(t) / (Dd::new(nk) * (Dd::new(nk) + t));
    }
    // f(n) = (1/n − 1/(n + a))/k; Σ_{n>N} f = ∫_N^∞ f − f(N)/2 − f′(N)/12 + f‴(N)/720
    let n = DIRECT_TERMS as f64;
    let f = (1.0 / n - 1.0 / (n + a)) / k;
    let f1 = (-1.0 / (n * n) + 1.0 / ((n + a) * (n + a))) / k;
    let f3 = (-6.0 / n.powi(4) + 6.0 / (n + a).powi(4)) / k;
    let integral = ((n + a) / n).ln() / k;
    (acc + (integral - f / 2.0 - f1 / 12.0 + f3 / 720.0)).to_f64()
}

/// `Ψ_k′(t) = Σ_{n≥0} 1/(nk + t)²`, summed directly with an
/// Euler–Maclaurin tail.
pub fn k_trigamma_series(t: f64, k: f64) -> f64 {
    let mut acc = Dd::ZERO;
    for n in 0..DIRECT_TERMS {
        let d = Dd::new(n as f64 * k) + t;
        acc = acc + Dd::ONE / (d * d);
    }
    let d = DIRECT_TERMS as f64 * k + t;
    let g = 1.0 / (d * d);
    let g1 = -2.0 * k / d.powi(3);
    let g3 = -24.0 * k.powi(3) / d.powi(5);
    let integral = 1.0 / (k * d);
    (acc + (integral + g / 2.0 - g1 / 12.0 + g3 / 720.0)).to_f64()
}

/// Classical `ψ(x)`.
pub fn digamma(x: f64) -> f64 {
    k_digamma_series(x, 1.0)
}

/// Classical `ψ′(x)`.
pub fn trigamma(x: f64) -> f64 {
    k_trigamma_series(x, 1.0)
}
