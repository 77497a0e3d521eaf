//! Classical `ln Γ`, digamma `ψ` and trigamma `ψ′` on the positive real axis.
//!
//! All three shift the argument up to [`ASYMPTOTIC_FROM`] with the
//! functional equation and then use the Stirling (Bernoulli) expansion.
//! Small positive integers are special-cased so that `ln Γ(1) = ln Γ(2) = 0`
//! and `ψ(n) = H_{n−1} − γ` hold exactly.

use crate::math;

/// Euler–Mascheroni constant γ (20 significant digits: 0.57721566490153286061).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_78;

/// Below this the argument is shifted upward before the asymptotic series.
const ASYMPTOTIC_FROM: f64 = 10.0;

/// B_{2j} / (2j (2j − 1)), j = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// B_{2j} / (2j), j = 1..7.
const DIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

/// B_{2j}, j = 1..7.
const TRIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

fn small_positive_integer(x: f64, max: f64) -> Option<u32> {
    (x >= 1.0 && x <= max && math::floor(x) == x).then_some(x as u32)
}

/// Evaluates `Σ coeffs[j] · z^j` by Horner's scheme.
fn horner(coeffs: &[f64], z: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * z + c)
}

/// `ln Γ(x)` for `x > 0`. Returns NaN for other inputs; callers validate.
pub fn ln_gamma(x: f64) -> f64 {
    if !(x > 0.0) || !x.is_finite() {
        return if x == f64::INFINITY { f64::INFINITY } else { f64::NAN };
    }
    if let Some(n) = small_positive_integer(x, 19.0) {
        // (n−1)! is exact in f64 for n ≤ 19.
        let fact = (1..n).fold(1.0_f64, |acc, i| acc * i as f64);
        return math::ln(fact);
    }
    let mut z = x;
    let mut prod = 1.0;
    while z < ASYMPTOTIC_FROM {
        prod *= z;
        z += 1.0;
    }
    let inv = 1.0 / z;
    let series = inv * horner(&STIRLING, inv * inv);
    (z - 0.5) * math::ln(z) - z + HALF_LN_2PI + series - math::ln(prod)
}

/// Digamma `ψ(x) = Γ′(x)/Γ(x)` for `x > 0`.
pub fn digamma(x: f64) -> f64 {
    if !(x > 0.0) || !x.is_finite() {
        return if x == f64::INFINITY { f64::INFINITY } else { f64::NAN };
    }
    if let Some(n) = small_positive_integer(x, ASYMPTOTIC_FROM) {
        let harmonic: f64 = (1..n).map(|i| 1.0 / i as f64).sum();
        return harmonic - EULER_GAMMA;
    }
    let mut z = x;
    let mut shift = 0.0;
    while z < ASYMPTOTIC_FROM {
        shift += 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    math::ln(z) - 0.5 / z - inv2 * horner(&DIGAMMA_ASYMPTOTIC, inv2) - shift
}

/// Trigamma `ψ′(x)` for `x > 0`.
pub fn trigamma(x: f64) -> f64 {
    if !(x > 0.0) || !x.is_finite() {
        return if x == f64::INFINITY { 0.0 } else { f64::NAN };
    }
    let mut z = x;
    let mut shift = 0.0;
    while z < ASYMPTOTIC_FROM {
        shift += 1.0 / (z * z);
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    inv + 0.5 * inv2 + inv * inv2 * horner(&TRIGAMMA_ASYMPTOTIC, inv2) + shift
}

#[cfg(test)]
mod tests {
    use super::*;

    // 40-digit reference values (mpmath), rounded to 25 significant digits.
    const LN_GAMMA: [(f64, f64); 12] = [
        (0.001, 6.907178885383853682512345),
        (0.1, 2.252712651734205959869702),
        (0.5, 0.5723649429247000870717137),
        (1.5, -0.1207822376352452223455184),
        (2.5, 0.2846828704729191596324947),
        (3.7, 1.428072326665387921872381),
        (7.25, 7.052185450738539444925749),
        (10.0, 12.80182748008146961120772),
        (12.5, 18.73434751193644570163412),
        (33.3, 82.60372358165495292832303),
        (100.5, 361.4355404677776215552519),
        (250.0, 1128.523770872990714198292),
    ];

    // (x, ψ(x), ψ′(x))
    const POLYGAMMA: [(f64, f64, f64); 10] = [
        (0.01, -100.560885457868674497481, 10001.62121352831322012336),
        (0.3, -3.502524222200132988964495, 12.2453645461077304654736),
        (0.9, -0.754926949947051391886384, 1.922539959477203516479194),
        (1.3, -0.1691908888667996556311612, 1.134253434996619354362492),
        (2.5, 0.7031566406452431872256903, 0.4903577561002348649728011),
        (4.75, 1.449204055278462895308178, 0.2342287415791419643746873),
        (9.99, 2.250700372831201099537518, 0.1052769501482417867458087),
        (15.0, 2.67434666166079370172005, 0.06893822784768380622615522),
        (60.2, 4.089343710513311834128987, 0.01675002715105856187448682),
        (400.0, 5.990214026274974173401642, 0.002503127604163411472865386),
    ];

    #[test]
    fn ln_gamma_matches_high_precision_fixtures() {
        for (x, want) in LN_GAMMA {
            let got = ln_gamma(x);
            assert!(
                (got - want).abs() <= 4e-15 * want.abs().max(1.0),
                "lnΓ({x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn polygamma_matches_high_precision_fixtures() {
        for (x, psi, psi1) in POLYGAMMA {
            let got = digamma(x);
            assert!((got - psi).abs() <= 4e-15 * psi.abs().max(1.0), "ψ({x}) = {got}");
            let got = trigamma(x);
            assert!((got - psi1).abs() <= 4e-15 * psi1.abs(), "ψ′({x}) = {got}");
        }
    }

    #[test]
    fn integer_arguments_are_exact() {
        assert_eq!(ln_gamma(1.0), 0.0);
        assert_eq!(ln_gamma(2.0), 0.0);
        assert_eq!(ln_gamma(5.0), 24.0_f64.ln());
        assert_eq!(digamma(1.0), -EULER_GAMMA);
        assert_eq!(digamma(2.0), 1.0 - EULER_GAMMA);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(ln_gamma(0.0).is_nan());
        assert!(digamma(-1.0).is_nan());
        assert!(trigamma(f64::NAN).is_nan());
    }
}
