//! `kbessel`: evaluate generalized k-Bessel functions and the k-gamma
//! family, tabulate them, compare series against integral representations
//! and run the verification harness.
//!
//! Exit codes: 0 success, 2 usage, parameter or domain error, 3 numerical
//! failure (non-convergence, overflow, quadrature), 4 verification failure.

mod grid;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kbessel::integral::{eval_w_bessel_kernel, eval_w_cos, eval_w_cosh, IntegralRepParams};
use kbessel::kbessel::{deriv_w, deriv_w_termwise, derivative_terms, eval_normalized, eval_w};
use kbessel::kgamma;
use kbessel::quadrature::{QuadConfig, Quadrature};
use kbessel::verify::{self, Check, VerifyReport};
use kbessel::{Error, KBesselParams, SeriesConfig};
use rayon::prelude::*;

use crate::output::{Cell, Format, TableWriter};

#[derive(Debug, Parser)]
#[command(name = "kbessel", version, about = "Generalized k-Bessel functions and the k-gamma family")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate W^k_{nu,c}(x), its derivatives or its normalized form.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Evaluate a k-gamma family function.
    #[command(allow_negative_numbers = true)]
    Gamma(GammaArgs),
    /// Tabulate W and its normalized form over an x range.
    #[command(allow_negative_numbers = true)]
    Table(TableArgs),
    /// Compare the series with the integral representations over a grid.
    CompareIntegral(CompareArgs),
    /// Run verification checks over a grid.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SeriesArgs {
    /// Relative truncation tolerance.
    #[arg(long, default_value_t = 1e-14)]
    tol: f64,
    #[arg(long, default_value_t = 500)]
    max_terms: usize,
}

impl SeriesArgs {
    fn config(&self) -> SeriesConfig {
        SeriesConfig { rel_tol: self.tol, max_terms: self.max_terms }
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    k: f64,
    #[arg(long)]
    nu: f64,
    #[arg(long)]
    c: f64,
    /// One value or a comma-separated list.
    #[arg(long, value_delimiter = ',', required = true)]
    x: Vec<f64>,
    /// Derivative order m >= 1.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    deriv: Option<u32>,
    /// Evaluate (2/x)^{nu/k} Gamma_k(nu+k) W instead of W.
    #[arg(long, conflicts_with = "deriv")]
    normalized: bool,
    #[command(flatten)]
    series: SeriesArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GammaFn {
    Gamma,
    Lngamma,
    Digamma,
    Trigamma,
    Beta,
    Pochhammer,
}

#[derive(Debug, Args)]
struct GammaArgs {
    #[arg(long = "fn", value_enum)]
    function: GammaFn,
    #[arg(long)]
    k: f64,
    /// Argument of gamma, lngamma, digamma and trigamma.
    #[arg(long)]
    t: Option<f64>,
    /// First argument of beta and pochhammer.
    #[arg(long)]
    x: Option<f64>,
    /// Second argument of beta.
    #[arg(long)]
    y: Option<f64>,
    /// Length of the pochhammer product.
    #[arg(long)]
    n: Option<u32>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long)]
    k: f64,
    #[arg(long)]
    nu: f64,
    #[arg(long)]
    c: f64,
    #[arg(long)]
    x_start: f64,
    #[arg(long)]
    x_stop: f64,
    /// Number of rows, endpoints included.
    #[arg(long)]
    x_steps: usize,
    #[command(flatten)]
    series: SeriesArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CompareArgs {
    /// `default` or a JSON grid file.
    #[arg(long, default_value = "default")]
    grid: String,
    /// Initial quadrature node count.
    #[arg(long, default_value_t = 128)]
    nodes: usize,
    /// Agreement required between successive node doublings.
    #[arg(long, default_value_t = 1e-12)]
    quad_tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Comma-separated check names, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all", value_parser = parse_checks)]
    checks: Vec<Vec<Check>>,
    /// `default` (each check on its own grid) or a JSON grid file.
    #[arg(long, default_value = "default")]
    grid: String,
    /// Worker threads; all cores when omitted.
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_checks(name: &str) -> Result<Vec<Check>, String> {
    if name == "all" {
        return Ok(Check::ALL.to_vec());
    }
    Check::from_name(name).map(|c| vec![c]).ok_or_else(|| {
        let known: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
        format!("unknown check `{name}` (known: all, {})", known.join(", "))
    })
}

/// Why a command stopped, mapped to the exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
    Verification(String),
    Io(io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numerical(_) => 3,
            Failure::Verification(_) => 4,
            Failure::Io(_) => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::DomainError(_) => Failure::Usage(e.to_string()),
            Error::Overflow | Error::NonConvergence { .. } | Error::QuadratureFailure { .. } => {
                Failure::Numerical(e.to_string())
            }
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

fn open_output(args: &OutputArgs) -> Result<Box<dyn Write>, Failure> {
    Ok(match &args.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn writer(args: &OutputArgs, columns: &[&'static str]) -> Result<TableWriter<Box<dyn Write>>, Failure> {
    Ok(TableWriter::new(args.format, columns, open_output(args)?)?)
}

fn cmd_eval(args: &EvalArgs) -> Outcome {
    let p = KBesselParams::new(args.k, args.nu, args.c)?;
    let cfg = args.series.config();
    cfg.validate()?;
    // evaluate everything first so an error leaves no partial table
    let rows = args
        .x
        .iter()
        .map(|&x| {
            let r = match args.deriv {
                // shifted orders where admissible, otherwise the series itself
                Some(m) if derivative_terms(&p, m).is_ok() => deriv_w(&p, x, m, &cfg)?,
                Some(m) => deriv_w_termwise(&p, x, m, &cfg)?,
                None if args.normalized => eval_normalized(&p, x, &cfg)?,
                None => eval_w(&p, x, &cfg)?,
            };
            Ok((x, r))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut out = writer(&args.output, &["value", "terms_used", "est_error", "x"])?;
    for (x, r) in rows {
        out.row(&[r.value.into(), r.terms_used.into(), r.est_error.into(), x.into()])?;
    }
    Ok(out.finish()?)
}

fn need(value: Option<f64>, flag: &str, function: &str) -> Result<f64, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--fn {function} needs --{flag}")))
}

fn cmd_gamma(args: &GammaArgs) -> Outcome {
    let k = args.k;
    let value = match args.function {
        GammaFn::Gamma => kgamma::k_gamma(need(args.t, "t", "gamma")?, k)?,
        GammaFn::Lngamma => kgamma::ln_k_gamma(need(args.t, "t", "lngamma")?, k)?,
        GammaFn::Digamma => kgamma::k_digamma(need(args.t, "t", "digamma")?, k)?,
        GammaFn::Trigamma => kgamma::k_trigamma(need(args.t, "t", "trigamma")?, k)?,
        GammaFn::Beta => kgamma::k_beta(need(args.x, "x", "beta")?, need(args.y, "y", "beta")?, k)?,
        GammaFn::Pochhammer => {
            let n = args.n.ok_or_else(|| Failure::Usage("--fn pochhammer needs --n".into()))?;
            kgamma::k_pochhammer(need(args.x, "x", "pochhammer")?, n, k)?
        }
    };
    let mut out = writer(&args.output, &["value"])?;
    out.row(&[value.into()])?;
    Ok(out.finish()?)
}

fn cmd_table(args: &TableArgs) -> Outcome {
    if args.x_steps == 0 {
        return Err(Failure::Usage("--x-steps must be at least 1".into()));
    }
    if !(args.x_start.is_finite() && args.x_stop.is_finite()) {
        return Err(Failure::Usage("x range must be finite".into()));
    }
    let p = KBesselParams::new(args.k, args.nu, args.c)?;
    let cfg = args.series.config();
    cfg.validate()?;
    let n = args.x_steps;
    let rows = (0..n)
        .map(|i| {
            let x = if n == 1 {
                args.x_start
            } else {
                args.x_start + (args.x_stop - args.x_start) * i as f64 / (n - 1) as f64
            };
            let w = eval_w(&p, x, &cfg)?;
            let normalized = eval_normalized(&p, x, &cfg)?;
            Ok((x, w, normalized.value))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut out = writer(&args.output, &["x", "w", "normalized", "est_error"])?;
    for (x, w, normalized) in rows {
        out.row(&[x.into(), w.value.into(), normalized.into(), w.est_error.into()])?;
    }
    Ok(out.finish()?)
}

/// Agreement demanded between series and quadrature.
const COMPARE_TOL: f64 = verify::tol::INTEGRAL;

fn cmd_compare_integral(args: &CompareArgs) -> Outcome {
    let source = grid::load(&args.grid).map_err(Failure::Usage)?;
    let spec = source.spec_for(Check::Integral);
    let quad_cfg = QuadConfig { nodes: args.nodes, abs_tol: args.quad_tol, ..QuadConfig::default() };
    let mut quad = Quadrature::new(quad_cfg)?;
    let cfg = SeriesConfig::default();
    let mut out = writer(
        &args.output,
        &["path", "k", "nu", "alpha", "c", "x", "series", "integral", "abs_diff", "nodes"],
    )?;
    let (mut compared, mut skipped, mut max_diff, mut worst_scaled) = (0usize, 0usize, 0.0f64, 0.0f64);
    let mut first_error = None;
    let sorted = |v: &[f64]| {
        let mut v = v.to_vec();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    };
    for k in sorted(&spec.k_values) {
        let nus = sorted(&spec.nu_values.iter().map(|o| o.at(k)).collect::<Vec<_>>());
        for nu in nus {
            for alpha in sorted(&spec.alpha_values) {
                for x in sorted(&spec.x_values) {
                    for (path, c) in [
                        ("cos", alpha * alpha),
                        ("cosh", -alpha * alpha),
                        ("kernel_cos", alpha * alpha),
                        ("kernel_cosh", -alpha * alpha),
                    ] {
                        let kernel = path.starts_with("kernel");
                        let admissible = if kernel { nu > 0.0 } else { nu / k > -0.5 };
                        if !admissible || alpha * x / k.sqrt() > verify::MAX_OSCILLATION {
                            skipped += 1;
                            continue;
                        }
                        let point = (|| {
                            let ip = IntegralRepParams::new(k, nu, alpha, x)?;
                            let q = match path {
                                "cos" => eval_w_cos(&ip, &mut quad)?,
                                "cosh" => eval_w_cosh(&ip, &mut quad)?,
                                _ => eval_w_bessel_kernel(&ip, c, &mut quad)?,
                            };
                            let s = eval_w(&KBesselParams::new(k, nu, c)?, x, &cfg)?.value;
                            Ok::<_, Error>((q, s))
                        })();
                        match point {
                            Ok((q, s)) => {
                                let diff = (q.value - s).abs();
                                compared += 1;
                                max_diff = max_diff.max(diff);
                                worst_scaled = worst_scaled.max(diff / s.abs().max(1.0));
                                out.row(&[
                                    path.into(),
                                    k.into(),
                                    nu.into(),
                                    alpha.into(),
                                    c.into(),
                                    x.into(),
                                    s.into(),
                                    q.value.into(),
                                    diff.into(),
                                    q.nodes.into(),
                                ])?;
                            }
                            Err(e) => {
                                eprintln!("{path} k={k} nu={nu} alpha={alpha} x={x}: {e}");
                                first_error.get_or_insert(e);
                            }
                        }
                    }
                }
            }
        }
    }
    out.finish()?;
    eprintln!("compared {compared} points, skipped {skipped}, max |diff| {max_diff:e}");
    if let Some(e) = first_error {
        return Err(e.into());
    }
    if worst_scaled > COMPARE_TOL {
        return Err(Failure::Verification(format!("series and integral differ by {worst_scaled:e} (relative)")));
    }
    Ok(())
}

fn report_cells(r: &VerifyReport) -> Vec<Cell> {
    let status = if r.skipped {
        "skip"
    } else if r.passed {
        "pass"
    } else {
        "fail"
    };
    let kind = match r.kind {
        verify::ReportKind::Residual => "residual",
        verify::ReportKind::Margin => "margin",
    };
    vec![
        r.check.name().into(),
        r.part.into(),
        Cell::Point(r.point.clone()),
        kind.into(),
        r.value.into(),
        r.tolerance.into(),
        status.into(),
        r.notes.clone().into(),
    ]
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let mut checks: Vec<Check> = args.checks.iter().flatten().copied().collect();
    checks.sort();
    checks.dedup();
    let source = grid::load(&args.grid).map_err(Failure::Usage)?;
    let mut jobs = Vec::new();
    for &check in &checks {
        jobs.extend(verify::plan(&source.spec_for(check), &[check])?);
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Failure::Usage(e.to_string()))?;
    // collect keeps plan order regardless of scheduling
    let reports: Vec<VerifyReport> =
        pool.install(|| jobs.par_iter().map(verify::run_job).collect::<Vec<_>>()).into_iter().flatten().collect();

    let mut out = writer(
        &args.output,
        &["check", "part", "point", "kind", "value", "tolerance", "status", "notes"],
    )?;
    for r in &reports {
        out.row(&report_cells(r))?;
    }
    out.finish()?;

    let mut failed = 0;
    for &check in &checks {
        let of: Vec<&VerifyReport> = reports.iter().filter(|r| r.check == check).collect();
        let skip = of.iter().filter(|r| r.skipped).count();
        let fail = of.iter().filter(|r| r.failed()).count();
        eprintln!("{check}: {} passed, {fail} failed, {skip} skipped", of.len() - skip - fail);
        failed += fail;
    }
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} check points failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Gamma(a) => cmd_gamma(a),
        Command::Table(a) => cmd_table(a),
        Command::CompareIntegral(a) => cmd_compare_integral(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Numerical(m) | Failure::Verification(m) => eprintln!("error: {m}"),
                Failure::Io(e) if e.kind() == io::ErrorKind::BrokenPipe => return ExitCode::SUCCESS,
                Failure::Io(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(f.code())
        }
    }
}
