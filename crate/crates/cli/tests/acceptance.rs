//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::{Command, ExitCode};

use kbessel::integral::{eval_w_bessel_kernel, eval_w_cos, eval_w_cosh, EvenKernel, IntegralRepParams};
use kbessel::kbessel::eval_w;
use kbessel::kgamma::{k_gamma, ln_k_gamma};
use kbessel::quadrature::{QuadConfig, Quadrature};
use kbessel::verify::{
    chebyshev_regime, run_defaults, Check, ChebyshevIntegrals, ChebyshevRegime, ReportKind, VerifyReport,
};
use kbessel::{KBesselParams, SeriesConfig};
use kbessel_oracle::{gamma as oracle_gamma, series as oracle};

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict { passed, detail: detail.into() }
}

/// Pass iff every non-skipped report passes; summarises counts and the
/// worst residual or margin relative to its tolerance.
fn from_reports(reports: &[VerifyReport]) -> Verdict {
    let active: Vec<&VerifyReport> = reports.iter().filter(|r| !r.skipped).collect();
    let failed = active.iter().filter(|r| !r.passed).count();
    let worst = active
        .iter()
        .map(|r| match r.kind {
            ReportKind::Residual => r.value / r.tolerance,
            ReportKind::Margin => -r.value / r.tolerance + 0.0,
        })
        .fold(f64::NEG_INFINITY, f64::max);
    verdict(
        failed == 0 && !active.is_empty(),
        format!(
            "{} points, {failed} failed, {} skipped, worst value/tol {worst:.3e}",
            active.len(),
            reports.len() - active.len()
        ),
    )
}

fn checks(list: &[Check]) -> Verdict {
    from_reports(&run_defaults(list))
}

fn classical_reduction() -> Verdict {
    let cfg = SeriesConfig::default();
    let mut worst = 0.0f64;
    for nu in [0.0, 0.5, 1.0, 2.3] {
        for x in [0.25, 1.0, 2.0, 5.0, 10.0] {
            for (c, reference) in [(1.0, oracle::bessel_j(nu, x)), (-1.0, oracle::bessel_i(nu, x))] {
                let w = eval_w(&KBesselParams::new(1.0, nu, c).unwrap(), x, &cfg).unwrap().value;
                worst = worst.max((w - reference).abs() / reference.abs().max(1.0));
            }
        }
    }
    verdict(worst <= 1e-12, format!("40 points, worst scaled error {worst:.3e} (tol 1e-12)"))
}

fn k_gamma_identities() -> Verdict {
    let mut functional = 0.0f64;
    for k in [0.5, 1.0, 2.0, 3.0] {
        for i in 0..=499 {
            let t = 0.1 + 49.9 * f64::from(i) / 499.0;
            let lhs = k_gamma(t + k, k).unwrap();
            let rhs = t * k_gamma(t, k).unwrap();
            functional = functional.max((lhs - rhs).abs() / rhs.abs());
        }
    }
    let mut scaling = 0.0f64;
    for k in [0.5f64, 1.0, 2.0, 3.0] {
        for i in 0..=295 {
            let x = 0.5 + 0.1 * f64::from(i);
            let expected = (x - 1.0) * k.ln() + oracle_gamma::ln_gamma(x);
            scaling = scaling.max((ln_k_gamma(k * x, k).unwrap() - expected).abs());
        }
    }
    verdict(
        functional <= 1e-12 && scaling <= 1e-12,
        format!("functional equation worst rel {functional:.3e}, scaling worst abs {scaling:.3e} (tol 1e-12)"),
    )
}

fn series_integral() -> Verdict {
    let reports = from_reports(&run_defaults(&[Check::Integral]));
    // every rule pair the refinement accepted must agree within its tolerance
    let cfg = QuadConfig::default();
    let mut quad = Quadrature::new(cfg).unwrap();
    let (mut doubled, mut total, mut settled) = (0, 0, true);
    let mut max_nodes = 0;
    for k in [0.5, 1.0, 2.0] {
        for e in [-0.4, 0.0, 0.5, 1.0, 2.5] {
            for alpha in [0.5, 1.0, 2.0] {
                for x in [0.25, 1.0, 3.0] {
                    let p = IntegralRepParams::new(k, e * k, alpha, x).unwrap();
                    let mut results = vec![eval_w_cos(&p, &mut quad).unwrap(), eval_w_cosh(&p, &mut quad).unwrap()];
                    if e > 0.0 {
                        results.push(eval_w_bessel_kernel(&p, alpha * alpha, &mut quad).unwrap());
                    }
                    for r in results {
                        total += 1;
                        doubled += usize::from(r.nodes > cfg.nodes);
                        max_nodes = max_nodes.max(r.nodes);
                        settled &= r.change <= cfg.abs_tol * r.value.abs().max(1.0);
                    }
                }
            }
        }
    }
    verdict(
        reports.passed && settled && doubled == total,
        format!(
            "{}; {total} integrals each settled after node doubling (up to {max_nodes} nodes)",
            reports.detail
        ),
    )
}

fn chebyshev() -> Verdict {
    let reports = run_defaults(&[Check::Chebyshev]);
    let predicted = from_reports(&reports);
    // away from nu = k/2 the opposite orientation must fail strictly
    let mut quad = Quadrature::new(QuadConfig::default()).unwrap();
    let (mut opposite_checked, mut opposite_held) = (0, 0);
    // [stated holds, stated fails, derived holds, derived fails]
    let mut probes = [0usize; 4];
    for r in reports.iter().filter(|r| !r.skipped) {
        let get = |name: &str| r.point.iter().find(|(n, _)| *n == name).unwrap().1;
        let (k, nu, x) = (get("k"), get("nu"), get("x"));
        for (i, needle) in
            ["stated closed form holds", "stated closed form fails", "derived closed form holds", "derived closed form fails"]
                .iter()
                .enumerate()
        {
            probes[i] += usize::from(r.notes.contains(needle));
        }
        let regime = chebyshev_regime(k, nu).unwrap();
        let label = if regime == ChebyshevRegime::Held { "held" } else { "reversed" };
        if !r.notes.starts_with(label) {
            return verdict(false, format!("regime label mismatch at k={k} nu={nu}"));
        }
        if (nu - k / 2.0).abs() < 0.1 * k {
            continue;
        }
        let kernel = if r.part == "cos" { EvenKernel::Cos } else { EvenKernel::Cosh };
        let integrals = ChebyshevIntegrals::compute(k, nu, x, kernel, &mut quad).unwrap();
        let opposite = if regime == ChebyshevRegime::Held { -1.0 } else { 1.0 };
        let scale = (integrals.q * integrals.qfg).abs().max((integrals.qf * integrals.qg).abs()).max(1.0);
        opposite_checked += 1;
        if opposite * integrals.held_margin() >= -1e-12 * scale {
            opposite_held += 1;
        }
    }
    verdict(
        predicted.passed && opposite_checked > 0 && opposite_held == 0,
        format!(
            "{}; opposite regime fails at {}/{opposite_checked} points away from nu = k/2; \
             closed-form probes (logged only): stated holds {}/fails {}, derived holds {}/fails {}",
            predicted.detail,
            opposite_checked - opposite_held,
            probes[0],
            probes[1],
            probes[2],
            probes[3]
        ),
    )
}

fn cli_contract() -> Verdict {
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_kbessel")).args(args).output().unwrap();
    let first = |o: &std::process::Output| {
        String::from_utf8_lossy(&o.stdout).lines().next().unwrap_or("").split('\t').next().unwrap().to_string()
    };
    let mut problems = Vec::new();
    let mut expect = |args: &[&str], code: i32, value: Option<&str>, stderr_has: Option<&str>| {
        let o = run(args);
        if o.status.code() != Some(code) {
            problems.push(format!("{args:?}: exit {:?}, expected {code}", o.status.code()));
        }
        if let Some(v) = value {
            if first(&o) != v {
                problems.push(format!("{args:?}: printed {}, expected {v}", first(&o)));
            }
        }
        if let Some(s) = stderr_has {
            if !String::from_utf8_lossy(&o.stderr).contains(s) {
                problems.push(format!("{args:?}: stderr lacks {s:?}"));
            }
        }
    };
    expect(&["eval", "--k", "1", "--nu", "0", "--c", "1", "--x", "1"], 0, Some("0.7651976865579666"), None);
    expect(&["eval", "--k", "2", "--nu", "0", "--c", "1", "--x", "0"], 0, Some("1"), None);
    expect(&["eval", "--k", "1", "--nu", "-2", "--c", "1", "--x", "1"], 2, None, Some("nu must exceed -k"));
    expect(&["gamma", "--fn", "gamma", "--t", "2", "--k", "2"], 0, Some("1"), None);
    expect(&["gamma", "--fn", "digamma", "--t", "1", "--k", "1"], 0, Some("-0.5772156649015329"), None);
    expect(&["gamma", "--fn", "beta", "--x", "1", "--y", "1", "--k", "1"], 0, Some("1"), None);
    expect(&["eval", "--k", "1", "--nu", "0", "--c", "1", "--x", "300", "--max-terms", "20"], 3, None, None);
    expect(&["verify", "--checks", "turan", "--grid", "default"], 0, None, None);
    expect(&["verify", "--checks", "no_such_check"], 2, None, None);
    expect(&["compare-integral"], 0, None, Some("max |diff|"));
    let n = problems.len();
    verdict(n == 0, if n == 0 { "eval/gamma examples bit-identical, exit codes 0/2/3 as documented".into() } else { problems.join("; ") })
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Verdict);
    let criteria: [Criterion; 11] = [
        ("classical reduction against brute-force J and I", classical_reduction),
        ("k-gamma functional equation and scaling", k_gamma_identities),
        ("series and integral representations agree", series_integral),
        ("differential equation residual", || checks(&[Check::Ode])),
        ("recurrence, finite-difference and multisection residuals", || {
            checks(&[Check::Rr1, Check::Rr2, Check::Rr3, Check::Rr4, Check::Rr5, Check::Rr6, Check::Rr7, Check::Rr8])
        }),
        ("ratio monotone in x", || checks(&[Check::RatioX])),
        ("order ratio inequality, decrease and log-convexity in nu", || {
            checks(&[Check::OrderRatio, Check::NuLogconvex])
        }),
        ("Turan inequality", || checks(&[Check::Turan])),
        ("Chebyshev regimes at the integral level", chebyshev),
        ("coefficient facts for r <= 30", || checks(&[Check::Coefficients])),
        ("command-line contract", cli_contract),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        all &= v.passed;
        println!("criterion {:>2} {} {name}: {}", i + 1, if v.passed { "PASS" } else { "FAIL" }, v.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
