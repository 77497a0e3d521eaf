//! Grid-driven numerical certification of the identities and inequalities
//! satisfied by `W^k_{ν,c}` and the normalized functions `𝕀^k_ν`, `𝒥^k_ν`.
//!
//! A [`GridSpec`] is expanded into [`Job`]s in a fixed order; each job is
//! a pure function of its parameters and yields one or more
//! [`VerifyReport`]s. Identities report a non-negative residual
//! (`passed ⇔ residual ≤ tolerance`); inequalities report a margin
//! `RHS − LHS` (`passed ⇔ margin ≥ −tolerance`). Points outside a check's
//! admissible range are reported as skipped with a reason.
//!
//! [`run_grid`] runs jobs sequentially; callers that want parallelism can
//! [`plan`] and [`run_job`] themselves and keep the plan order.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::integral::{self, EvenKernel, IntegralRepParams};
use crate::kbessel::{
    deriv_w, eval_normalized_i, eval_normalized_j, eval_w, eval_w_with_derivatives,
    multisection_lhs, multisection_sum, recurrence_step_up,
};
use crate::kgamma::{k_digamma, k_trigamma};
use crate::math;
use crate::quadrature::{QuadConfig, Quadrature};
use crate::{Error, KBesselParams, Result, SeriesConfig};

/// Tolerances shared by the checks.
pub mod tol {
    /// Relative residual of exact identities.
    pub const IDENTITY: f64 = 1e-10;
    /// Relative residual of the differential equation.
    pub const ODE: f64 = 1e-8;
    /// Relative slack for inequality margins.
    pub const INEQUALITY: f64 = 1e-12;
    /// Absolute error of first-derivative finite-difference checks.
    pub const FINITE_DIFFERENCE: f64 = 1e-6;
    /// Absolute error of the higher-derivative finite-difference checks.
    pub const DERIVATIVE: f64 = 1e-5;
    /// Absolute error of the truncated multisection sum.
    pub const MULTISECTION: f64 = 1e-8;
    /// Absolute-or-relative agreement of quadrature and series.
    pub const INTEGRAL: f64 = 1e-9;
}

/// Terms kept in the multisection sum.
pub const MULTISECTION_TERMS: usize = 40;
/// The multisection check only runs for `x` up to this value.
pub const MULTISECTION_MAX_X: f64 = 1.0;
/// Integral checks skip points with `αx/√k` above this value.
pub const MAX_OSCILLATION: f64 = 20.0;
/// Highest coefficient index in the coefficient checks.
pub const COEFFICIENT_MAX_R: u32 = 30;
/// Guard added to `|a| − k` in the Turán precondition.
pub const TURAN_GUARD: f64 = 1e-9;

/// The available checks, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Ode,
    Rr1,
    Rr2,
    Rr3,
    Rr4,
    Rr5,
    Rr6,
    Rr7,
    Rr8,
    Integral,
    SinRelation,
    SinhRelation,
    RatioX,
    OrderRatio,
    NuLogconvex,
    Turan,
    Chebyshev,
    Coefficients,
}

impl Check {
    pub const ALL: [Check; 18] = [
        Check::Ode,
        Check::Rr1,
        Check::Rr2,
        Check::Rr3,
        Check::Rr4,
        Check::Rr5,
        Check::Rr6,
        Check::Rr7,
        Check::Rr8,
        Check::Integral,
        Check::SinRelation,
        Check::SinhRelation,
        Check::RatioX,
        Check::OrderRatio,
        Check::NuLogconvex,
        Check::Turan,
        Check::Chebyshev,
        Check::Coefficients,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Ode => "ode",
            Check::Rr1 => "rr1",
            Check::Rr2 => "rr2",
            Check::Rr3 => "rr3",
            Check::Rr4 => "rr4",
            Check::Rr5 => "rr5",
            Check::Rr6 => "rr6",
            Check::Rr7 => "rr7",
            Check::Rr8 => "rr8",
            Check::Integral => "integral",
            Check::SinRelation => "sin_relation",
            Check::SinhRelation => "sinh_relation",
            Check::RatioX => "ratio_x",
            Check::OrderRatio => "order_ratio",
            Check::NuLogconvex => "nu_logconvex",
            Check::Turan => "turan",
            Check::Chebyshev => "chebyshev",
            Check::Coefficients => "coefficients",
        }
    }

    pub fn from_name(name: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == name)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An order `ν = fixed + per_k · k`, so one grid can follow `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Order {
    pub fixed: f64,
    pub per_k: f64,
}

impl Order {
    pub const fn absolute(nu: f64) -> Self {
        Self { fixed: nu, per_k: 0.0 }
    }

    pub const fn relative(per_k: f64) -> Self {
        Self { fixed: 0.0, per_k }
    }

    pub fn at(&self, k: f64) -> f64 {
        self.fixed + self.per_k * k
    }
}

/// Parameter lists expanded into grid points.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub k_values: Vec<f64>,
    pub nu_values: Vec<Order>,
    /// `c` for the series checks.
    pub c_values: Vec<f64>,
    /// `α` for the integral and half-order checks (`c = ±α²`).
    pub alpha_values: Vec<f64>,
    pub x_values: Vec<f64>,
    /// Turán shifts `a`.
    pub shifts: Vec<f64>,
    /// Log-convexity interpolation weights in `[0, 1]`.
    pub weights: Vec<f64>,
}

fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| start + (stop - start) * i as f64 / (n - 1) as f64).collect()
}

impl GridSpec {
    /// The default grid for one family of checks.
    pub fn default_for(check: Check) -> GridSpec {
        let near_lower = Order { fixed: 0.1, per_k: -0.5 };
        let base = GridSpec {
            k_values: vec![0.5, 1.0, 2.0],
            nu_values: vec![near_lower, Order::absolute(0.7), Order::absolute(1.0), Order::absolute(3.0)],
            c_values: vec![-1.0, 1.0, 2.0],
            alpha_values: vec![0.5, 1.0, 2.0],
            x_values: vec![0.3, 1.0, 2.0, 5.0],
            shifts: vec![0.0, 0.25, 0.5, 1.0],
            weights: vec![0.0, 0.25, 0.5, 0.75, 1.0],
        };
        match check {
            Check::Integral => GridSpec {
                nu_values: [-0.4, 0.0, 0.5, 1.0, 2.5].into_iter().map(Order::relative).collect(),
                x_values: vec![0.25, 1.0, 3.0],
                ..base
            },
            Check::SinRelation | Check::SinhRelation => GridSpec {
                k_values: vec![0.5, 1.0, 2.0, 4.0],
                x_values: vec![0.5, 1.0, 3.0],
                ..base
            },
            Check::RatioX
            | Check::OrderRatio
            | Check::NuLogconvex
            | Check::Turan
            | Check::Coefficients => GridSpec {
                nu_values: vec![
                    near_lower,
                    Order::absolute(0.0),
                    Order::absolute(0.7),
                    Order::absolute(1.5),
                    Order::absolute(3.0),
                ],
                x_values: linspace(0.1, 5.0, 25),
                ..base
            },
            Check::Chebyshev => GridSpec {
                nu_values: [-0.7, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0, 2.0]
                    .into_iter()
                    .map(Order::relative)
                    .chain([Order::absolute(3.0)])
                    .collect(),
                x_values: vec![0.25, 0.5, 1.0, 1.5, 3.0],
                ..base
            },
            _ => base,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let lists: [(&str, usize); 7] = [
            ("k_values", self.k_values.len()),
            ("nu_values", self.nu_values.len()),
            ("c_values", self.c_values.len()),
            ("alpha_values", self.alpha_values.len()),
            ("x_values", self.x_values.len()),
            ("shifts", self.shifts.len()),
            ("weights", self.weights.len()),
        ];
        if lists.iter().any(|(_, n)| *n == 0) {
            return Err(Error::InvalidParameter("every grid list must be non-empty"));
        }
        if self.k_values.iter().any(|k| !(*k > 0.0) || !k.is_finite()) {
            return Err(Error::InvalidParameter("grid k values must be positive"));
        }
        if self.x_values.iter().any(|x| !(*x > 0.0) || !x.is_finite()) {
            return Err(Error::InvalidParameter("grid x values must be positive"));
        }
        if self.weights.iter().any(|w| !(0.0..=1.0).contains(w)) {
            return Err(Error::InvalidParameter("grid weights must lie in [0, 1]"));
        }
        let finite = self.nu_values.iter().all(|o| o.fixed.is_finite() && o.per_k.is_finite())
            && self.c_values.iter().all(|c| c.is_finite())
            && self.alpha_values.iter().all(|a| a.is_finite())
            && self.shifts.iter().all(|a| a.is_finite());
        if !finite {
            return Err(Error::InvalidParameter("grid values must be finite"));
        }
        Ok(())
    }
}

/// Whether a report carries an identity residual or an inequality margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportKind {
    Residual,
    Margin,
}

/// One named coordinate of a grid point.
pub type Coordinate = (&'static str, f64);

/// Outcome of one check at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub check: Check,
    /// Sub-case within the check (for example the integral path), or empty.
    pub part: &'static str,
    pub point: Vec<Coordinate>,
    pub kind: ReportKind,
    /// Residual (`≥ 0`) or margin; NaN when the point errored or was skipped.
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub skipped: bool,
    pub notes: String,
}

impl VerifyReport {
    /// Evaluated and did not pass.
    pub fn failed(&self) -> bool {
        !self.passed && !self.skipped
    }

    fn residual(check: Check, part: &'static str, point: Vec<Coordinate>, value: f64, tolerance: f64) -> Self {
        Self {
            check,
            part,
            point,
            kind: ReportKind::Residual,
            value,
            tolerance,
            passed: value <= tolerance,
            skipped: false,
            notes: String::new(),
        }
    }

    fn margin(check: Check, part: &'static str, point: Vec<Coordinate>, value: f64, tolerance: f64) -> Self {
        Self {
            check,
            part,
            point,
            kind: ReportKind::Margin,
            value,
            tolerance,
            passed: value >= -tolerance,
            skipped: false,
            notes: String::new(),
        }
    }

    fn skip(check: Check, part: &'static str, point: Vec<Coordinate>, kind: ReportKind, reason: &str) -> Self {
        Self {
            check,
            part,
            point,
            kind,
            value: f64::NAN,
            tolerance: 0.0,
            passed: false,
            skipped: true,
            notes: reason.to_string(),
        }
    }

    fn error(check: Check, part: &'static str, point: Vec<Coordinate>, kind: ReportKind, err: &Error) -> Self {
        Self {
            check,
            part,
            point,
            kind,
            value: f64::NAN,
            tolerance: 0.0,
            passed: false,
            skipped: false,
            notes: format!("error: {err}"),
        }
    }

    fn with_notes(mut self, notes: String) -> Self {
        self.notes = notes;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Point {
    Series { k: f64, nu: f64, c: f64, x: f64 },
    Integral { k: f64, nu: f64, alpha: f64, x: f64 },
    HalfOrder { k: f64, alpha: f64, x: f64 },
    Path { k: f64, mu: f64, nu: f64, xs: Vec<f64> },
    Pair { k: f64, mu: f64, nu: f64, x: f64 },
    Convex { k: f64, nu1: f64, nu2: f64, x: f64, weights: Vec<f64> },
    Turan { k: f64, nu: f64, a: f64, x: f64 },
    Chebyshev { k: f64, nu: f64, x: f64 },
    Coefficients { k: f64, mu: f64, nu: f64 },
}

/// One unit of work: a check at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    check: Check,
    point: Point,
}

impl Job {
    pub fn check(&self) -> Check {
        self.check
    }
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn orders(spec: &GridSpec, k: f64) -> Vec<f64> {
    let v: Vec<f64> = spec.nu_values.iter().map(|o| o.at(k)).collect();
    sorted(&v)
}

fn ordered_pairs(nus: &[f64]) -> Vec<(f64, f64)> {
    let mut pairs = Vec::new();
    for (i, &lo) in nus.iter().enumerate() {
        for &hi in &nus[i..] {
            pairs.push((lo, hi));
        }
    }
    pairs
}

/// Expands the grid into jobs in deterministic order: by check, then
/// lexicographically in the grid tuple.
pub fn plan(spec: &GridSpec, checks: &[Check]) -> Result<Vec<Job>> {
    spec.validate()?;
    let ks = sorted(&spec.k_values);
    let cs = sorted(&spec.c_values);
    let alphas = sorted(&spec.alpha_values);
    let xs = sorted(&spec.x_values);
    let shifts = sorted(&spec.shifts);
    let weights = sorted(&spec.weights);
    let mut jobs = Vec::new();
    let mut checks = checks.to_vec();
    checks.sort();
    checks.dedup();
    for &check in &checks {
        let mut push = |point| jobs.push(Job { check, point });
        for &k in &ks {
            let nus = orders(spec, k);
            match check {
                Check::Ode
                | Check::Rr1
                | Check::Rr2
                | Check::Rr3
                | Check::Rr4
                | Check::Rr5
                | Check::Rr6
                | Check::Rr7
                | Check::Rr8 => {
                    for &nu in &nus {
                        for &c in &cs {
                            for &x in &xs {
                                push(Point::Series { k, nu, c, x });
                            }
                        }
                    }
                }
                Check::Integral => {
                    for &nu in &nus {
                        for &alpha in &alphas {
                            for &x in &xs {
                                push(Point::Integral { k, nu, alpha, x });
                            }
                        }
                    }
                }
                Check::SinRelation | Check::SinhRelation => {
                    for &alpha in &alphas {
                        for &x in &xs {
                            push(Point::HalfOrder { k, alpha, x });
                        }
                    }
                }
                Check::RatioX => {
                    for (mu, nu) in ordered_pairs(&nus) {
                        push(Point::Path { k, mu, nu, xs: xs.clone() });
                    }
                }
                Check::OrderRatio => {
                    for (mu, nu) in ordered_pairs(&nus) {
                        for &x in &xs {
                            push(Point::Pair { k, mu, nu, x });
                        }
                    }
                }
                Check::NuLogconvex => {
                    for (nu1, nu2) in ordered_pairs(&nus) {
                        for &x in &xs {
                            push(Point::Convex { k, nu1, nu2, x, weights: weights.clone() });
                        }
                    }
                }
                Check::Turan => {
                    for &nu in &nus {
                        for &a in &shifts {
                            for &x in &xs {
                                push(Point::Turan { k, nu, a, x });
                            }
                        }
                    }
                }
                Check::Chebyshev => {
                    for &nu in &nus {
                        for &x in &xs {
                            push(Point::Chebyshev { k, nu, x });
                        }
                    }
                }
                Check::Coefficients => {
                    for (mu, nu) in ordered_pairs(&nus) {
                        push(Point::Coefficients { k, mu, nu });
                    }
                }
            }
        }
    }
    Ok(jobs)
}

/// Plans every check on its own default grid.
pub fn plan_defaults(checks: &[Check]) -> Vec<Job> {
    let mut checks = checks.to_vec();
    checks.sort();
    checks.dedup();
    checks
        .into_iter()
        .flat_map(|check| plan(&GridSpec::default_for(check), &[check]).expect("default grids are valid"))
        .collect()
}

/// Runs every job sequentially in plan order.
pub fn run_grid(spec: &GridSpec, checks: &[Check]) -> Result<Vec<VerifyReport>> {
    Ok(plan(spec, checks)?.iter().flat_map(run_job).collect())
}

/// [`run_grid`] with each check on its default grid.
pub fn run_defaults(checks: &[Check]) -> Vec<VerifyReport> {
    plan_defaults(checks).iter().flat_map(run_job).collect()
}

/// Runs one job.
pub fn run_job(job: &Job) -> Vec<VerifyReport> {
    let check = job.check;
    match &job.point {
        &Point::Series { k, nu, c, x } => {
            let point = vec![("k", k), ("nu", nu), ("c", c), ("x", x)];
            match KBesselParams::new(k, nu, c) {
                Ok(p) => series_check(check, &p, x, point),
                Err(e) => vec![VerifyReport::error(check, "", point, ReportKind::Residual, &e)],
            }
        }
        &Point::Integral { k, nu, alpha, x } => check_integral(k, nu, alpha, x),
        &Point::HalfOrder { k, alpha, x } => vec![check_half_order(check, k, alpha, x)],
        Point::Path { k, mu, nu, xs } => vec![check_ratio_x_monotone(*k, *mu, *nu, xs)],
        &Point::Pair { k, mu, nu, x } => vec![check_order_ratio_monotone(k, mu, nu, x)],
        Point::Convex { k, nu1, nu2, x, weights } => {
            check_nu_decreasing_logconvex(*k, (*nu1, *nu2), weights, *x)
        }
        &Point::Turan { k, nu, a, x } => vec![check_turan(k, nu, a, x)],
        &Point::Chebyshev { k, nu, x } => vec![
            check_chebyshev_products(k, nu, x, EvenKernel::Cos),
            check_chebyshev_products(k, nu, x, EvenKernel::Cosh),
        ],
        &Point::Coefficients { k, mu, nu } => check_coefficients(k, mu, nu),
    }
}

fn cfg() -> SeriesConfig {
    SeriesConfig::default()
}

fn w_at(p: &KBesselParams, nu: f64, x: f64) -> Result<f64> {
    Ok(eval_w(&p.with_nu(nu)?, x, &cfg())?.value)
}

/// `W_{ν−k}` (when admissible), `W_ν`, `W_{ν+k}` and the shared scale.
struct Neighbours {
    lo: Option<f64>,
    mid: f64,
    hi: f64,
    scale: f64,
}

fn neighbours(p: &KBesselParams, x: f64) -> Result<Neighbours> {
    let lo = if p.nu() > 0.0 { Some(w_at(p, p.nu() - p.k(), x)?) } else { None };
    let mid = w_at(p, p.nu(), x)?;
    let hi = w_at(p, p.nu() + p.k(), x)?;
    let scale = math::abs(mid).max(math::abs(hi)).max(lo.map_or(0.0, math::abs)).max(1.0);
    Ok(Neighbours { lo, mid, hi, scale })
}

fn series_check(check: Check, p: &KBesselParams, x: f64, point: Vec<Coordinate>) -> Vec<VerifyReport> {
    let kind = ReportKind::Residual;
    let needs_lower = matches!(check, Check::Rr2 | Check::Rr3 | Check::Rr4 | Check::Rr5 | Check::Rr7);
    if needs_lower && p.nu() <= 0.0 {
        return vec![VerifyReport::skip(check, "", point, kind, "order nu - k must exceed -k (needs nu > 0)")];
    }
    let result = match check {
        Check::Ode => check_ode(p, x).map(|r| vec![r]),
        Check::Rr1 => rr1(p, x).map(|r| vec![r]),
        Check::Rr2 => rr2(p, x).map(|r| vec![r]),
        Check::Rr3 => rr3(p, x, &point).map(|r| vec![r]),
        Check::Rr4 => rr4(p, x).map(|r| vec![r]),
        Check::Rr5 => rr5(p, x).map(|r| vec![r]),
        Check::Rr6 => rr6(p, x).map(|r| vec![r]),
        Check::Rr7 => rr7(p, x, &point).map(|r| vec![r]),
        Check::Rr8 => Ok(rr8(p, x, &point)),
        _ => unreachable!("not a series check"),
    };
    match result {
        Ok(mut reports) => {
            for r in &mut reports {
                if r.point.is_empty() {
                    r.point = point.clone();
                }
            }
            reports
        }
        Err(e) => vec![VerifyReport::error(check, "", point, kind, &e)],
    }
}

/// Residual of `y″ + y′/x + (ck − ν²/x²) y / k² = 0` with term-wise
/// derivatives of the series.
pub fn check_ode(p: &KBesselParams, x: f64) -> Result<VerifyReport> {
    let d = eval_w_with_derivatives(p, x, &cfg())?;
    let (k, nu, c) = (p.k(), p.nu(), p.c());
    let potential = (c * k - nu * nu / (x * x)) / (k * k) * d.value;
    let residual = math::abs(d.second + d.first / x + potential);
    let scale = math::abs(d.second)
        .max(math::abs(d.first / x))
        .max(math::abs(d.value) / (x * x))
        .max(1.0);
    Ok(VerifyReport::residual(Check::Ode, "", Vec::new(), residual, tol::ODE * scale))
}

fn rr1(p: &KBesselParams, x: f64) -> Result<VerifyReport> {
    let n = neighbours(p, x)?;
    let (derivative, source) = if p.nu() > 0.0 {
        (deriv_w(p, x, 1, &cfg())?.value, "shifted orders")
    } else {
        (eval_w_with_derivatives(p, x, &cfg())?.first, "term-wise series")
    };
    let residual = math::abs(x * derivative - p.exponent() * n.mid + x * p.c() * n.hi);
    Ok(VerifyReport::residual(Check::Rr1, "", Vec::new(), residual, tol::IDENTITY * n.scale)
        .with_notes(format!("derivative from {source}")))
}

fn rr2(p: &KBesselParams, x: f64) -> Result<VerifyReport> {
    let n = neighbours(p, x)?;
    let lo = n.lo.expect("nu > 0 checked");
    let derivative = eval_w_with_derivatives(p, x, &cfg())?.first;
    let residual = math::abs(x * derivative - x / p.k() * lo + p.exponent() * n.mid);
    Ok(VerifyReport::residual(Check::Rr2, "", Vec::new(), residual, tol::IDENTITY * n.scale))
}

fn rr3(p: &KBesselParams, x: f64, point: &[Coordinate]) -> Result<VerifyReport> {
    if p.c() == 0.0 {
        return Ok(VerifyReport::skip(Check::Rr3, "", point.to_vec(), ReportKind::Residual, "recurrence divides by c"));
    }
    let n = neighbours(p, x)?;
    let stepped = recurrence_step_up(p, x, n.lo.expect("nu > 0 checked"), n.mid)?;
    let residual = math::abs(stepped - n.hi);
    Ok(VerifyReport::residual(Check::Rr3, "", Vec::new(), residual, tol::IDENTITY * n.scale))
}

fn rr4(p: &KBesselParams, x: f64) -> Result<VerifyReport> {
    let n = neighbours(p, x)?;
    let lo = n.lo.expect("nu > 0 checked");
    let derivative = eval_w_with_derivatives(p, x, &cfg())?.first;
    let residual = math::abs(2.0 * p.k() * derivative - lo + p.c() * p.k() * n.hi);
    Ok(VerifyReport::residual(Check::Rr4, "", Vec::new(), residual, tol::IDENTITY * n.scale))
}

fn rr5(p: &KBesselParams, x: f64) -> Result<VerifyReport> {
    let e = p.exponent();
    let f = |t: f64| Ok(math::powf(t, e) * eval_w(p, t, &cfg())?.value);
    let (numeric, err) = ridders_first(f, x, wavenumber(p))?;
    let exact = math::powf(x, e) / p.k() * w_at(p, p.nu() - p.k(), x)?;
    let residual = math::abs(numeric - exact);
    Ok(VerifyReport::residual(Check::Rr5, "", Vec::new(), residual, tol::FINITE_DIFFERENCE)
        .with_notes(format!("analytic {exact:e}, extrapolation error {err:e}")))
}

fn rr6(p: &KBesselParams, x: f64) -> Result<VerifyReport> {
    let e = p.exponent();
    let f = |t: f64| Ok(math::powf(t, -e) * eval_w(p, t, &cfg())?.value);
    let (numeric, err) = ridders_first(f, x, wavenumber(p))?;
    let exact = -p.c() * math::powf(x, -e) * w_at(p, p.nu() + p.k(), x)?;
    let residual = math::abs(numeric - exact);
    Ok(VerifyReport::residual(Check::Rr6, "", Vec::new(), residual, tol::FINITE_DIFFERENCE)
        .with_notes(format!("analytic {exact:e}, extrapolation error {err:e}")))
}

fn rr7(p: &KBesselParams, x: f64, point: &[Coordinate]) -> Result<VerifyReport> {
    if x > MULTISECTION_MAX_X {
        return Ok(VerifyReport::skip(
            Check::Rr7,
            "",
            point.to_vec(),
            ReportKind::Residual,
            "multisection sum only checked for x <= 1",
        ));
    }
    let target = w_at(p, p.nu() - p.k(), x)?;
    let sum = multisection_lhs(p, x, MULTISECTION_TERMS, &cfg())?;
    let residual = math::abs(sum.value - target);
    let unit_weights = multisection_sum(p, x, MULTISECTION_TERMS, -1.0, &cfg())
        .map(|s| format!("{:e}", math::abs(s.value - target)))
        .unwrap_or_else(|e| format!("error: {e}"));
    Ok(VerifyReport::residual(Check::Rr7, "", Vec::new(), residual, tol::MULTISECTION).with_notes(format!(
        "weights (-ck)^r; with weights (-1)^r the residual is {unit_weights}"
    )))
}

fn rr8(p: &KBesselParams, x: f64, point: &[Coordinate]) -> Vec<VerifyReport> {
    let mut reports = Vec::new();
    for (m, part) in [(1u32, "m=1"), (2, "m=2")] {
        let mut pt = point.to_vec();
        pt.push(("m", f64::from(m)));
        if p.nu() - f64::from(m) * p.k() <= -p.k() {
            reports.push(VerifyReport::skip(
                Check::Rr8,
                part,
                pt,
                ReportKind::Residual,
                "every order nu - m k + 2 n k must exceed -k",
            ));
            continue;
        }
        let f = |t: f64| Ok(eval_w(p, t, &cfg())?.value);
        let outcome = deriv_w(p, x, m, &cfg()).and_then(|exact| {
            let (numeric, _) = if m == 1 { ridders_first(f, x, wavenumber(p))? } else { ridders_second(f, x, wavenumber(p))? };
            Ok((exact.value, numeric))
        });
        reports.push(match outcome {
            Ok((exact, numeric)) => {
                let tolerance = if m == 1 { tol::FINITE_DIFFERENCE } else { tol::DERIVATIVE };
                VerifyReport::residual(Check::Rr8, part, pt, math::abs(exact - numeric), tolerance)
            }
            Err(e) => VerifyReport::error(Check::Rr8, part, pt, ReportKind::Residual, &e),
        });
    }
    reports
}

const RIDDERS_SHRINK: f64 = 1.4;
const RIDDERS_TABLE: usize = 10;

/// Polynomial extrapolation to `h → 0` of a difference quotient whose error
/// is a series in `h²`. Returns the estimate and its error.
fn ridders<F: FnMut(f64) -> Result<f64>>(mut quotient: F, h0: f64) -> Result<(f64, f64)> {
    let shrink2 = RIDDERS_SHRINK * RIDDERS_SHRINK;
    let mut table = [[0.0_f64; RIDDERS_TABLE]; RIDDERS_TABLE];
    let mut h = h0;
    table[0][0] = quotient(h)?;
    let mut best = table[0][0];
    let mut err = f64::INFINITY;
    for i in 1..RIDDERS_TABLE {
        h /= RIDDERS_SHRINK;
        table[0][i] = quotient(h)?;
        let mut fac = shrink2;
        for j in 1..=i {
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
            fac *= shrink2;
            let e = math::abs(table[j][i] - table[j - 1][i]).max(math::abs(table[j][i] - table[j - 1][i - 1]));
            if e <= err {
                err = e;
                best = table[j][i];
            }
        }
        if math::abs(table[i][i] - table[i - 1][i - 1]) >= 2.0 * err {
            break;
        }
    }
    Ok((best, err))
}

/// First step: well inside both the distance to the branch point at 0 and
/// one oscillation of wavenumber `freq`.
fn initial_step(x: f64, freq: f64) -> f64 {
    (x / 8.0).min(0.25 / freq.max(1.0))
}

fn ridders_first<F: Fn(f64) -> Result<f64>>(f: F, x: f64, freq: f64) -> Result<(f64, f64)> {
    ridders(|h| Ok((f(x + h)? - f(x - h)?) / (2.0 * h)), initial_step(x, freq))
}

fn ridders_second<F: Fn(f64) -> Result<f64>>(f: F, x: f64, freq: f64) -> Result<(f64, f64)> {
    let centre = f(x)?;
    ridders(|h| Ok((f(x + h)? - 2.0 * centre + f(x - h)?) / (h * h)), initial_step(x, freq))
}

/// Wavenumber of `W^k_{ν,c}` in `x`.
fn wavenumber(p: &KBesselParams) -> f64 {
    math::sqrt(math::abs(p.c()) / p.k())
}

fn check_integral(k: f64, nu: f64, alpha: f64, x: f64) -> Vec<VerifyReport> {
    let point = vec![("k", k), ("nu", nu), ("alpha", alpha), ("x", x)];
    let kind = ReportKind::Residual;
    let parts: [(&'static str, f64); 4] =
        [("cos", alpha * alpha), ("cosh", -alpha * alpha), ("kernel_cos", alpha * alpha), ("kernel_cosh", -alpha * alpha)];
    if alpha * x / math::sqrt(k) > MAX_OSCILLATION {
        return parts
            .iter()
            .map(|(part, _)| VerifyReport::skip(Check::Integral, part, point.clone(), kind, "alpha x / sqrt(k) exceeds 20"))
            .collect();
    }
    let mut quad = Quadrature::new(QuadConfig::default()).expect("default quadrature is valid");
    parts
        .iter()
        .map(|&(part, c)| {
            let admissible = if part.starts_with("kernel") { nu > 0.0 } else { nu / k > -0.5 };
            if !admissible {
                let reason = if part.starts_with("kernel") { "kernel path needs nu > 0" } else { "needs nu/k > -1/2" };
                return VerifyReport::skip(Check::Integral, part, point.clone(), kind, reason);
            }
            let outcome = IntegralRepParams::new(k, nu, alpha, x).and_then(|ip| {
                let quadrature = match part {
                    "cos" => integral::eval_w_cos(&ip, &mut quad)?,
                    "cosh" => integral::eval_w_cosh(&ip, &mut quad)?,
                    _ => integral::eval_w_bessel_kernel(&ip, c, &mut quad)?,
                };
                let series = eval_w(&KBesselParams::new(k, nu, c)?, x, &cfg())?.value;
                Ok((quadrature, series))
            });
            match outcome {
                Ok((q, series)) => VerifyReport::residual(
                    Check::Integral,
                    part,
                    point.clone(),
                    math::abs(q.value - series),
                    tol::INTEGRAL * math::abs(series).max(1.0),
                )
                .with_notes(format!("{} nodes, doubling change {:e}", q.nodes, q.change)),
                Err(e) => VerifyReport::error(Check::Integral, part, point.clone(), kind, &e),
            }
        })
        .collect()
}

fn check_half_order(check: Check, k: f64, alpha: f64, x: f64) -> VerifyReport {
    let point = vec![("k", k), ("alpha", alpha), ("x", x)];
    let relation = if check == Check::SinRelation {
        integral::sin_relation_check(k, alpha, x)
    } else {
        integral::sinh_relation_check(k, alpha, x)
    };
    match relation {
        Ok(r) => VerifyReport::residual(
            check,
            "",
            point,
            math::abs(r.residual_alpha),
            tol::IDENTITY * math::abs(r.lhs).max(1.0),
        )
        .with_notes(format!(
            "fitted constant {:.17e}; with constant alpha/k the residual is {:e}",
            r.fitted_constant, r.residual_alpha_over_k
        )),
        Err(e) => VerifyReport::error(check, "", point, ReportKind::Residual, &e),
    }
}

fn big_i(k: f64, nu: f64, x: f64) -> Result<f64> {
    Ok(eval_normalized_i(k, nu, x, &cfg())?.value)
}

fn big_j(k: f64, nu: f64, x: f64) -> Result<f64> {
    Ok(eval_normalized_j(k, nu, x, &cfg())?.value)
}

fn orders_admissible(k: f64, orders: &[f64]) -> bool {
    orders.iter().all(|&nu| nu > -k)
}

/// `x ↦ 𝕀_μ(x)/𝕀_ν(x)` is non-decreasing along `xs` for `ν ≥ μ > −k`.
/// The margin is the smallest consecutive increment.
pub fn check_ratio_x_monotone(k: f64, mu: f64, nu: f64, xs: &[f64]) -> VerifyReport {
    let point = vec![("k", k), ("mu", mu), ("nu", nu)];
    let kind = ReportKind::Margin;
    if !(nu >= mu) || !orders_admissible(k, &[mu]) {
        return VerifyReport::skip(Check::RatioX, "", point, kind, "needs nu >= mu > -k");
    }
    if xs.len() < 2 || xs.windows(2).any(|w| !(w[1] > w[0])) || !(xs[0] > 0.0) {
        return VerifyReport::skip(Check::RatioX, "", point, kind, "x grid must be positive and strictly increasing");
    }
    let ratios: Result<Vec<f64>> = xs.iter().map(|&x| Ok(big_i(k, mu, x)? / big_i(k, nu, x)?)).collect();
    match ratios {
        Ok(ratios) => {
            let margin = ratios.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
            let scale = ratios.iter().fold(1.0_f64, |m, r| m.max(math::abs(*r)));
            VerifyReport::margin(Check::RatioX, "", point, margin, tol::INEQUALITY * scale)
        }
        Err(e) => VerifyReport::error(Check::RatioX, "", point, kind, &e),
    }
}

/// `𝕀_{ν+k} 𝕀_μ ≥ 𝕀_ν 𝕀_{μ+k}` for `ν ≥ μ > −k`.
pub fn check_order_ratio_monotone(k: f64, mu: f64, nu: f64, x: f64) -> VerifyReport {
    let point = vec![("k", k), ("mu", mu), ("nu", nu), ("x", x)];
    let kind = ReportKind::Margin;
    if !(nu >= mu) || !orders_admissible(k, &[mu]) {
        return VerifyReport::skip(Check::OrderRatio, "", point, kind, "needs nu >= mu > -k");
    }
    let sides = (|| Ok((big_i(k, nu + k, x)? * big_i(k, mu, x)?, big_i(k, nu, x)? * big_i(k, mu + k, x)?)))();
    match sides {
        Ok((lhs, rhs)) => {
            let scale = math::abs(lhs).max(math::abs(rhs)).max(1.0);
            VerifyReport::margin(Check::OrderRatio, "", point, lhs - rhs, tol::INEQUALITY * scale)
        }
        Err(e) => VerifyReport::error(Check::OrderRatio, "", point, kind, &e),
    }
}

/// `ν ↦ 𝕀_ν(x)` is decreasing and log-convex: one "decreasing" margin
/// `𝕀_{ν₁} − 𝕀_{ν₂}` and one "log-convex" margin
/// `𝕀_{ν₁}^w 𝕀_{ν₂}^{1−w} − 𝕀_{wν₁+(1−w)ν₂}` per weight `w`.
pub fn check_nu_decreasing_logconvex(k: f64, nus: (f64, f64), weights: &[f64], x: f64) -> Vec<VerifyReport> {
    let (nu1, nu2) = nus;
    let point = vec![("k", k), ("nu1", nu1), ("nu2", nu2), ("x", x)];
    let kind = ReportKind::Margin;
    if !orders_admissible(k, &[nu1, nu2]) {
        return vec![VerifyReport::skip(Check::NuLogconvex, "decreasing", point, kind, "orders must exceed -k")];
    }
    let ends = (|| Ok((big_i(k, nu1, x)?, big_i(k, nu2, x)?)))();
    let (i1, i2) = match ends {
        Ok(v) => v,
        Err(e) => return vec![VerifyReport::error(Check::NuLogconvex, "decreasing", point, kind, &e)],
    };
    let (small, large) = if nu1 <= nu2 { (i1, i2) } else { (i2, i1) };
    let mut reports = vec![VerifyReport::margin(
        Check::NuLogconvex,
        "decreasing",
        point.clone(),
        small - large,
        tol::INEQUALITY * small.max(large).max(1.0),
    )];
    for &w in weights {
        let mut pt = point.clone();
        pt.push(("weight", w));
        let mixed = w * nu1 + (1.0 - w) * nu2;
        let bound = math::powf(i1, w) * math::powf(i2, 1.0 - w);
        reports.push(match big_i(k, mixed, x) {
            Ok(value) => VerifyReport::margin(
                Check::NuLogconvex,
                "log-convex",
                pt,
                bound - value,
                tol::INEQUALITY * bound.max(value).max(1.0),
            ),
            Err(e) => VerifyReport::error(Check::NuLogconvex, "log-convex", pt, kind, &e),
        });
    }
    reports
}

/// `𝕀_{ν−a} 𝕀_{ν+a} − 𝕀_ν² ≥ 0` for `ν ≥ |a| − k`.
pub fn check_turan(k: f64, nu: f64, a: f64, x: f64) -> VerifyReport {
    let point = vec![("k", k), ("nu", nu), ("a", a), ("x", x)];
    let kind = ReportKind::Margin;
    if !(nu >= math::abs(a) - k + TURAN_GUARD) {
        return VerifyReport::skip(Check::Turan, "", point, kind, "needs nu >= |a| - k");
    }
    let sides = (|| {
        let mid = big_i(k, nu, x)?;
        Ok((big_i(k, nu - a, x)? * big_i(k, nu + a, x)?, mid * mid))
    })();
    match sides {
        Ok((product, square)) => VerifyReport::margin(
            Check::Turan,
            "",
            point,
            product - square,
            tol::INEQUALITY * product.max(square).max(1.0),
        ),
        Err(e) => VerifyReport::error(Check::Turan, "", point, kind, &e),
    }
}

/// Which way the product inequality points for a given order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebyshevRegime {
    /// `(∫qf)(∫qg) ≤ (∫q)(∫qfg)`: `f`, `g` monotone in the same sense.
    Held,
    /// The reverse: `f` increasing, `g` decreasing.
    Reversed,
}

/// Regime for order `ν`, or `None` where `∫qf` diverges (`ν ≤ −k/2`).
pub fn chebyshev_regime(k: f64, nu: f64) -> Option<ChebyshevRegime> {
    if nu <= -k / 2.0 {
        None
    } else if nu < k / 2.0 {
        Some(ChebyshevRegime::Reversed)
    } else {
        Some(ChebyshevRegime::Held)
    }
}

/// The four integrals `∫q, ∫qf, ∫qg, ∫qfg` over `[0, 1]` with
/// `q(t) = cos(xt/√k)` or `cosh`, `f = (1−t²)^{ν/k−1/2}`, `g = (1−t²)^{ν/k+1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebyshevIntegrals {
    pub q: f64,
    pub qf: f64,
    pub qg: f64,
    pub qfg: f64,
}

impl ChebyshevIntegrals {
    pub fn compute(k: f64, nu: f64, x: f64, kernel: EvenKernel, quad: &mut Quadrature) -> Result<Self> {
        let e = nu / k;
        let beta = x / math::sqrt(k);
        let mut at = |a: f64| integral::even_weighted_integral(a, beta, kernel, quad).map(|r| r.value);
        Ok(Self { q: at(0.0)?, qf: at(e - 0.5)?, qg: at(e + 0.5)?, qfg: at(2.0 * e)? })
    }

    /// `(∫q)(∫qfg) − (∫qf)(∫qg)`.
    pub fn held_margin(&self) -> f64 {
        self.q * self.qfg - self.qf * self.qg
    }

    fn scale(&self) -> f64 {
        math::abs(self.q * self.qfg).max(math::abs(self.qf * self.qg)).max(1.0)
    }
}

/// Which closed form the probe evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ClosedForm {
    /// Middle order `ν + k/2` with `sin(x/k)` or `sinh(x/k)`.
    Stated,
    /// Middle order `ν + k` with `sin(x/√k)` or `sinh(x/√k)`, as the
    /// integrals `∫qg` and `∫q` come out.
    Derived,
}

/// Margin `rhs − lhs` of a closed form written with the normalized
/// functions (𝕀 with the sine, 𝒥 with sinh), oriented like the
/// integral-level check.
fn closed_form_margin(k: f64, nu: f64, x: f64, kernel: EvenKernel, form: ClosedForm) -> Result<f64> {
    type Normalized = fn(f64, f64, f64) -> Result<f64>;
    let (shift, arg) = match form {
        ClosedForm::Stated => (k / 2.0, x / k),
        ClosedForm::Derived => (k, x / math::sqrt(k)),
    };
    let (norm, trig): (Normalized, f64) = match kernel {
        EvenKernel::Cos => (big_i, math::sin(arg)),
        EvenKernel::Cosh => (big_j, math::sinh(arg)),
    };
    let lhs = norm(k, nu, x)? * norm(k, nu + shift, x)?;
    let rhs = math::sqrt(k) / x * trig * norm(k, 2.0 * nu + k / 2.0, x)?;
    Ok(rhs - lhs)
}

/// Chebyshev product inequality at the integral level, in the regime the
/// order dictates.
pub fn check_chebyshev_products(k: f64, nu: f64, x: f64, kernel: EvenKernel) -> VerifyReport {
    let part = match kernel {
        EvenKernel::Cos => "cos",
        EvenKernel::Cosh => "cosh",
    };
    let point = vec![("k", k), ("nu", nu), ("x", x)];
    let kind = ReportKind::Margin;
    let Some(regime) = chebyshev_regime(k, nu) else {
        return VerifyReport::skip(Check::Chebyshev, part, point, kind, "integral of q f diverges for nu <= -k/2");
    };
    if kernel == EvenKernel::Cos && x / math::sqrt(k) >= math::PI / 2.0 {
        return VerifyReport::skip(Check::Chebyshev, part, point, kind, "q changes sign on [0, 1]");
    }
    let mut quad = Quadrature::new(QuadConfig::default()).expect("default quadrature is valid");
    let integrals = match ChebyshevIntegrals::compute(k, nu, x, kernel, &mut quad) {
        Ok(v) => v,
        Err(e) => return VerifyReport::error(Check::Chebyshev, part, point, kind, &e),
    };
    let orient = if regime == ChebyshevRegime::Held { 1.0 } else { -1.0 };
    let margin = orient * integrals.held_margin();
    let probe = |form: ClosedForm, name: &str| match closed_form_margin(k, nu, x, kernel, form) {
        Ok(m) => {
            let m = orient * m;
            format!("{name} closed form {} (margin {m:e})", if m >= 0.0 { "holds" } else { "fails" })
        }
        Err(e) => format!("{name} closed form not evaluated: {e}"),
    };
    let probes = [probe(ClosedForm::Stated, "stated"), probe(ClosedForm::Derived, "derived")].join("; ");
    let label = if regime == ChebyshevRegime::Held { "held" } else { "reversed" };
    VerifyReport::margin(Check::Chebyshev, part, point, margin, tol::INEQUALITY * integrals.scale())
        .with_notes(format!("{label}; {probes}"))
}

/// Coefficient facts behind the monotonicity theorems, for `r ≤ 30`:
/// `(rk+μ+k)/(rk+ν+k) ≤ 1`, and when `μ = ν` also
/// `Ψ_k(ν+k) − Ψ_k(rk+ν+k) ≤ 0` and `Ψ_k′(ν+k) − Ψ_k′(rk+ν+k) ≥ 0`.
pub fn check_coefficients(k: f64, mu: f64, nu: f64) -> Vec<VerifyReport> {
    let point = vec![("k", k), ("mu", mu), ("nu", nu)];
    let kind = ReportKind::Margin;
    if !(nu >= mu) || !orders_admissible(k, &[mu]) {
        return vec![VerifyReport::skip(Check::Coefficients, "ratio", point, kind, "needs nu >= mu > -k")];
    }
    let rs = || (0..=COEFFICIENT_MAX_R).map(f64::from);
    let ratio_margin = rs().map(|r| 1.0 - (r * k + mu + k) / (r * k + nu + k)).fold(f64::INFINITY, f64::min);
    let mut reports =
        vec![VerifyReport::margin(Check::Coefficients, "ratio", point.clone(), ratio_margin, tol::INEQUALITY)];
    if mu == nu {
        let point = vec![("k", k), ("nu", nu)];
        let margins = (|| {
            let psi0 = k_digamma(nu + k, k)?;
            let tri0 = k_trigamma(nu + k, k)?;
            let mut first = f64::INFINITY;
            let mut second = f64::INFINITY;
            for r in rs() {
                first = first.min(k_digamma(r * k + nu + k, k)? - psi0);
                second = second.min(tri0 - k_trigamma(r * k + nu + k, k)?);
            }
            Ok((first, second, tri0))
        })();
        match margins {
            Ok((first, second, tri0)) => {
                reports.push(VerifyReport::margin(Check::Coefficients, "log-derivative", point.clone(), first, tol::INEQUALITY));
                reports.push(VerifyReport::margin(
                    Check::Coefficients,
                    "log-curvature",
                    point,
                    second,
                    tol::INEQUALITY * tri0.max(1.0),
                ));
            }
            Err(e) => reports.push(VerifyReport::error(Check::Coefficients, "log-derivative", point, kind, &e)),
        }
    }
    reports
}
