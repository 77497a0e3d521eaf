//! Gauss–Jacobi quadrature on `[−1, 1]` with weight `(1 − y)^α (1 + y)^β`.
//!
//! Nodes and weights come from the Golub–Welsch eigenproblem of the Jacobi
//! matrix, solved with implicit-shift QL iterations that only carry the
//! first component of each eigenvector. Gauss–Legendre is the case
//! `α = β = 0`.
//!
//! Absorbing the endpoint power into the weight leaves smooth (here,
//! entire) integrands, so doubling the node count is a reliable
//! convergence test even when the weight is singular.

use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::vec;
use alloc::vec::Vec;

use crate::classical::ln_gamma;
use crate::math;
use crate::{Error, Result};

/// Node-doubling policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    /// Node count of the first rule.
    pub nodes: usize,
    /// Two successive rules must agree to `abs_tol · max(1, |value|)`.
    pub abs_tol: f64,
    /// How many times the node count may be doubled.
    pub max_refinements: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { nodes: 128, abs_tol: 1e-12, max_refinements: 8 }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nodes < 2 {
            return Err(Error::InvalidParameter("quadrature needs at least 2 nodes"));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter("abs_tol must be positive"));
        }
        Ok(())
    }
}

/// An `n`-point Gauss–Jacobi rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussJacobi {
    alpha: f64,
    beta: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussJacobi {
    /// Builds the rule for `α, β > −1`.
    pub fn new(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("quadrature needs at least 1 node"));
        }
        if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParameter("Jacobi exponents must exceed -1"));
        }
        let (mut diag, mut off) = jacobi_matrix(n, alpha, beta);
        let mut first = vec![0.0; n];
        first[0] = 1.0;
        ql_first_components(&mut diag, &mut off, &mut first)?;

        let ab = alpha + beta;
        let ln_mu0 = (ab + 1.0) * math::LN_2 + ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0)
            - ln_gamma(ab + 2.0);
        let mu0 = math::exp(ln_mu0);
        let mut pairs: Vec<(f64, f64)> =
            diag.into_iter().zip(first).map(|(x, z)| (x, mu0 * z * z)).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        Ok(Self { alpha, beta, nodes, weights })
    }

    /// Gauss–Legendre rule.
    pub fn legendre(n: usize) -> Result<Self> {
        Self::new(n, 0.0, 0.0)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ w_i f(y_i) ≈ ∫_{−1}^{1} (1 − y)^α (1 + y)^β f(y) dy`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        let mut acc = crate::sum::Compensated::default();
        for (&y, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(y));
        }
        acc.value()
    }
}

/// Diagonal and off-diagonal of the symmetric Jacobi matrix for the
/// Jacobi polynomials `P^{(α,β)}`.
fn jacobi_matrix(n: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let diff2 = beta * beta - alpha * alpha;
    let diag = (0..n)
        .map(|i| {
            if i == 0 {
                (beta - alpha) / (ab + 2.0)
            } else {
                let s = 2.0 * i as f64 + ab;
                diff2 / (s * (s + 2.0))
            }
        })
        .collect();
    let off = (1..n)
        .map(|i| {
            let m = i as f64;
            let s = 2.0 * m + ab;
            if i == 1 {
                // closed form avoids 0/0 when α + β = −1
                math::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)))
            } else {
                math::sqrt(
                    4.0 * m * (m + alpha) * (m + beta) * (m + ab) / (s * s * (s + 1.0) * (s - 1.0)),
                )
            }
        })
        .collect();
    (diag, off)
}

/// Eigenvalues of the symmetric tridiagonal matrix (`diag`, `off`) by
/// implicit QL. On return `diag` holds the eigenvalues and `first` the
/// first components of the matching normalized eigenvectors.
fn ql_first_components(diag: &mut [f64], off: &mut Vec<f64>, first: &mut [f64]) -> Result<()> {
    let n = diag.len();
    off.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = math::abs(diag[m]) + math::abs(diag[m + 1]);
                if math::abs(off[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NonConvergence { terms: iter, last_term: off[l] });
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = math::hypot(g, 1.0);
            g = diag[m] - diag[l] + off[l] / (g + math::copysign(r, g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = math::hypot(f, g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                let z = first[i + 1];
                first[i + 1] = s * first[i] + c * z;
                first[i] = c * first[i] - s * z;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    off.pop();
    Ok(())
}

/// Result of a node-doubling run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refined {
    pub value: f64,
    /// Node count of the accepted rule.
    pub nodes: usize,
    /// `|Q_{2n} − Q_n|` for the accepted pair.
    pub change: f64,
}

/// Node-doubling integrator that caches the rules it builds.
#[derive(Debug, Clone, Default)]
pub struct Quadrature {
    cfg: QuadConfig,
    cache: BTreeMap<(usize, u64, u64), GaussJacobi>,
}

impl Quadrature {
    pub fn new(cfg: QuadConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self { cfg, cache: BTreeMap::new() })
    }

    pub fn config(&self) -> &QuadConfig {
        &self.cfg
    }

    /// The `n`-point rule for `(α, β)`, built on first use.
    pub fn rule(&mut self, n: usize, alpha: f64, beta: f64) -> Result<&GaussJacobi> {
        let key = (n, alpha.to_bits(), beta.to_bits());
        Ok(match self.cache.entry(key) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(GaussJacobi::new(n, alpha, beta)?),
        })
    }

    /// Integrates `f` against the Jacobi weight `(α, β)`, doubling the node
    /// count until two successive rules agree.
    pub fn integrate<F: Fn(f64) -> f64>(&mut self, alpha: f64, beta: f64, f: F) -> Result<Refined> {
        let cfg = self.cfg;
        let mut n = cfg.nodes;
        let mut prev = self.rule(n, alpha, beta)?.integrate(&f);
        let mut change = f64::INFINITY;
        for _ in 0..cfg.max_refinements {
            n *= 2;
            let next = self.rule(n, alpha, beta)?.integrate(&f);
            change = math::abs(next - prev);
            if !next.is_finite() {
                break;
            }
            if change <= cfg.abs_tol * math::abs(next).max(1.0) {
                return Ok(Refined { value: next, nodes: n, change });
            }
            prev = next;
        }
        Err(Error::QuadratureFailure { nodes: n, difference: change })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_low_order_exact() {
        let rule = GaussJacobi::legendre(2).unwrap();
        let x = 1.0 / 3.0_f64.sqrt();
        assert!((rule.nodes()[0] + x).abs() < 1e-15);
        assert!((rule.nodes()[1] - x).abs() < 1e-15);
        assert!((rule.weights()[0] - 1.0).abs() < 1e-15);
        let rule = GaussJacobi::legendre(3).unwrap();
        assert!(rule.nodes()[1].abs() < 1e-15);
        assert!((rule.weights()[1] - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn integrates_polynomials_exactly() {
        // ∫ (1−y)^α (1+y)^β y² dy for α = −0.9, β = −0.5 by the beta function
        let (a, b) = (-0.9_f64, -0.5_f64);
        let rule = GaussJacobi::new(5, a, b).unwrap();
        let got = rule.integrate(|y| y * y);
        // y² = 1 − 2(1−y)(1+y)/2 ... evaluate via moments of t = (1+y)/2
        let beta_fn = |p: f64, q: f64| (ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q)).exp();
        let scale = 2f64.powf(a + b + 1.0);
        // y = 2t − 1 → y² = 4t² − 4t + 1
        let m = |j: f64| scale * beta_fn(b + 1.0 + j, a + 1.0);
        let want = 4.0 * m(2.0) - 4.0 * m(1.0) + m(0.0);
        assert!((got - want).abs() < 1e-13 * want.abs(), "{got} vs {want}");
    }

    #[test]
    fn chebyshev_case_has_equal_weights() {
        // α = β = −1/2: nodes cos((2i−1)π/2n), weights π/n
        let n = 7;
        let rule = GaussJacobi::new(n, -0.5, -0.5).unwrap();
        for (i, (&y, &w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
            let want = (((2 * (n - i) - 1) as f64) * core::f64::consts::PI / (2 * n) as f64).cos();
            assert!((y - want).abs() < 1e-14);
            assert!((w - core::f64::consts::PI / n as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn refinement_converges_and_caches() {
        let mut quad = Quadrature::new(QuadConfig { nodes: 8, ..QuadConfig::default() }).unwrap();
        let res = quad.integrate(0.0, 0.0, |y| y.exp()).unwrap();
        assert!((res.value - (1f64.exp() - (-1f64).exp())).abs() < 1e-14);
        assert_eq!(quad.cache.len(), 2);
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(GaussJacobi::new(4, -1.0, 0.0).is_err());
        assert!(GaussJacobi::new(0, 0.0, 0.0).is_err());
        assert!(QuadConfig { nodes: 1, ..QuadConfig::default() }.validate().is_err());
    }

    #[test]
    fn refinement_reports_failure() {
        let cfg = QuadConfig { nodes: 2, abs_tol: 1e-15, max_refinements: 1 };
        let mut quad = Quadrature::new(cfg).unwrap();
        let res = quad.integrate(0.0, 0.0, |y| (40.0 * y).cos());
        assert!(matches!(res, Err(Error::QuadratureFailure { .. })));
    }
}
