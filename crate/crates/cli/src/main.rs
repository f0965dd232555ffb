//! Command-line front end: solves the Stieltjes integral equation on the
//! half-line, verifies candidate solutions, evaluates kernels and transforms,
//! and runs the bundled verification suite.
//!
//! Numeric output is deterministic: identical flags and seed produce
//! byte-identical CSV/JSON. Every error path emits a machine-readable JSON
//! object with a stable `code` field on stderr.

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use stieltjes_core::{
    alpha_from_lambda, check_stieltjes_bound, fit_growth, fmt_g17, log_grid, mellin, norm,
    parse_complex, parse_gspec, r_profile, repro, resolvent_point, solve_e, solve_ek, t_beta_apply,
    AnalysisError, BlendFunction, FunctionError, HalfLineFunction, KernelError, KernelSpec,
    Profile, QuadConfig, QuadError, SolveError, SpaceSpec, TableFunction,
};

#[derive(Parser)]
#[command(
    name = "stieltjes",
    version,
    about = "Explicit resolvent-kernel solver for the Stieltjes integral equation f(x) = g(x) + lambda * integral of f(y)/(x+y) dy"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Relative quadrature tolerance (default 1e-9)
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    /// Absolute quadrature tolerance floor (default 1e-13)
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    /// Subdivision budget per integral (default 2000)
    #[arg(long, global = true)]
    max_subdiv: Option<usize>,
    /// Relative half-width of the removable-point window (default 1e-3)
    #[arg(long, global = true)]
    diag_window: Option<f64>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized sweeps (default 42)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON config file mirroring the flags: {"quad": {...}, "seed": ...}
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve the equation for f given g and lambda
    Solve(SolveArgs),
    /// Substitute a candidate f back into the equation and report residuals
    Verify(VerifyArgs),
    /// Evaluate a kernel profile r_i(x) or point kernel R_i(x, y)
    Kernel(KernelArgs),
    /// Mellin transform of g at a point of the critical strip
    Mellin(MellinArgs),
    /// Norm of g in E, E_k, or B_eps_eta
    Norm(NormArgs),
    /// Fit growth exponents of g at zero and infinity
    Growth(GrowthArgs),
    /// Apply the T^beta operator to g at a point
    Tbeta(TbetaArgs),
    /// Check the explicit Stieltjes-operator bound on B_eps_eta
    Bound(BoundArgs),
    /// Run the bundled verification suite
    Repro(ReproArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// lambda as "re" or "re,im"
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// right-hand side, e.g. "h", "expneg", "pow:-0.3 * expneg", "table:g.csv"
    #[arg(long)]
    g: String,
    /// solve in E_k with this k (otherwise in E)
    #[arg(long, conflicts_with = "space")]
    k: Option<f64>,
    /// solution space (only "E"; default)
    #[arg(long)]
    space: Option<String>,
    /// blend weight "m=<real>" for the positive-lambda kernel (default m=1)
    #[arg(long)]
    phi1: Option<String>,
    /// homogeneous coefficient A (Re lambda > 0 only)
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a: String,
    /// homogeneous coefficient B (Re lambda > 0 only)
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    b: String,
    /// evaluation grid "log:<lo>:<hi>:<n>"
    #[arg(long)]
    grid: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long)]
    g: String,
    /// candidate solution: a g-spec or a CSV table path
    #[arg(long)]
    f: String,
    #[arg(long)]
    grid: String,
}

#[derive(Args)]
struct KernelArgs {
    /// r1|r2|r3 (profile at t = x) or R1|R2|R3|R23 (point kernel, needs --y)
    #[arg(long)]
    which: String,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// evaluation abscissa(e), comma separated
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: Option<f64>,
    #[arg(long)]
    phi1: Option<String>,
}

#[derive(Args)]
struct MellinArgs {
    #[arg(long)]
    g: String,
    /// transform point, 0 < Re s < 1
    #[arg(long, allow_hyphen_values = true)]
    s: String,
}

#[derive(Args)]
struct NormArgs {
    #[arg(long)]
    g: String,
    /// E | ek:<k> | beh:<eps>:<eta>
    #[arg(long)]
    space: String,
}

#[derive(Args)]
struct GrowthArgs {
    #[arg(long)]
    g: String,
    /// fit windows "lo:hi,lo:hi" (infinity window first)
    #[arg(long)]
    windows: Option<String>,
}

#[derive(Args)]
struct TbetaArgs {
    #[arg(long)]
    g: String,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    #[arg(long)]
    x: f64,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    g: String,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    eta: f64,
}

#[derive(Args)]
struct ReproArgs {
    /// run only checks whose name or group matches
    #[arg(long)]
    only: Option<String>,
    /// directory for per-check verdicts and the summary table
    #[arg(long, default_value = "repro-out")]
    out_dir: PathBuf,
}

/// Error carrying the stable machine-readable code and the exit status.
struct CliError {
    code: &'static str,
    exit: u8,
    message: String,
}

impl CliError {
    fn new(code: &'static str, exit: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            exit,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        CliError::new("usage", 2, message)
    }
}

impl From<FunctionError> for CliError {
    fn from(e: FunctionError) -> Self {
        let code = match e {
            FunctionError::Parse { .. } => "parse_error",
            FunctionError::Table(_) => "table_error",
            FunctionError::Io(_) => "io_error",
        };
        CliError::new(code, 2, e.to_string())
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match &e {
            SolveError::PureImagUnsolvable(_) => {
                CliError::new("pure_imag_lambda", 3, e.to_string())
            }
            SolveError::NormDiverged { .. } => CliError::new("norm_diverged", 4, e.to_string()),
            SolveError::RegionBoundary { .. } => CliError::new("region_boundary", 2, e.to_string()),
            SolveError::InvalidK(_) => CliError::new("usage", 2, e.to_string()),
            SolveError::Kernel(_) => CliError::new("kernel_range", 2, e.to_string()),
            SolveError::Quad(q) => CliError::from(q.clone()),
        }
    }
}

impl From<QuadError> for CliError {
    fn from(e: QuadError) -> Self {
        let code = match e {
            QuadError::NonFiniteSample { .. } => "non_finite_sample",
            QuadError::InvalidConfig(_) => "invalid_config",
            QuadError::InvalidInput(_) => "usage",
        };
        CliError::new(code, 1, e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match &e {
            AnalysisError::NormDiverged { .. } => CliError::new("norm_diverged", 4, e.to_string()),
            AnalysisError::InvalidSpace(_) => CliError::new("usage", 2, e.to_string()),
            AnalysisError::OutsideMellinStrip { .. } => {
                CliError::new("mellin_strip", 2, e.to_string())
            }
            AnalysisError::Quad(q) => CliError::from(q.clone()),
            AnalysisError::Kernel(k) => CliError::from(k.clone()),
        }
    }
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        CliError::new("kernel_range", 2, e.to_string())
    }
}

impl From<stieltjes_core::SpectralError> for CliError {
    fn from(e: stieltjes_core::SpectralError) -> Self {
        CliError::new("spectral_range", 2, e.to_string())
    }
}

#[derive(Deserialize, Default)]
struct FileConfig {
    quad: Option<QuadOverrides>,
    seed: Option<u64>,
}

#[derive(Deserialize, Default)]
struct QuadOverrides {
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
    max_subdiv: Option<usize>,
    diag_window: Option<f64>,
    tail_u_max: Option<f64>,
}

struct Settings {
    cfg: QuadConfig,
    seed: u64,
    out: Option<PathBuf>,
}

fn settings(cli: &Cli) -> Result<Settings, CliError> {
    let mut cfg = QuadConfig::default();
    let mut seed = 42u64;
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::new("io_error", 2, format!("{}: {e}", path.display())))?;
        let file: FileConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::new("invalid_config", 2, format!("config: {e}")))?;
        if let Some(q) = file.quad {
            if let Some(v) = q.rel_tol {
                cfg.rel_tol = v;
            }
            if let Some(v) = q.abs_tol {
                cfg.abs_tol = v;
            }
            if let Some(v) = q.max_subdiv {
                cfg.max_subdivisions = v;
            }
            if let Some(v) = q.diag_window {
                cfg.diagonal_window = v;
            }
            if let Some(v) = q.tail_u_max {
                cfg.tail_u_max = v;
            }
        }
        if let Some(s) = file.seed {
            seed = s;
        }
    }
    // explicit flags override the config file
    if let Some(v) = cli.rel_tol {
        cfg.rel_tol = v;
    }
    if let Some(v) = cli.abs_tol {
        cfg.abs_tol = v;
    }
    if let Some(v) = cli.max_subdiv {
        cfg.max_subdivisions = v;
    }
    if let Some(v) = cli.diag_window {
        cfg.diagonal_window = v;
    }
    if let Some(s) = cli.seed {
        seed = s;
    }
    cfg.validate().map_err(CliError::from)?;
    Ok(Settings {
        cfg,
        seed,
        out: cli.out.clone(),
    })
}

fn parse_c(label: &str, text: &str) -> Result<Complex64, CliError> {
    parse_complex(text).map_err(|e| CliError::usage(format!("{label}: {e}")))
}

fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 4 || parts[0] != "log" {
        return Err(CliError::usage(format!(
            "grid must be log:<lo>:<hi>:<n>, got `{text}`"
        )));
    }
    let lo: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::usage("bad grid lower bound"))?;
    let hi: f64 = parts[2]
        .parse()
        .map_err(|_| CliError::usage("bad grid upper bound"))?;
    let n: usize = parts[3]
        .parse()
        .map_err(|_| CliError::usage("bad grid point count"))?;
    if !(lo > 0.0 && hi > lo && n >= 2) {
        return Err(CliError::usage("grid needs 0 < lo < hi and n >= 2"));
    }
    Ok(log_grid(lo, hi, n))
}

fn parse_phi(text: Option<&str>) -> Result<BlendFunction, CliError> {
    match text {
        None => Ok(BlendFunction::default()),
        Some(t) => {
            let t = t.trim();
            if let Some(m) = t.strip_prefix("m=") {
                let m: f64 = m
                    .parse()
                    .map_err(|_| CliError::usage(format!("bad blend exponent `{m}`")))?;
                let blend = BlendFunction::OneOverOnePlusYPowM(m);
                blend.validate()?;
                Ok(blend)
            } else {
                Err(CliError::usage(format!(
                    "blend must be given as m=<real>, got `{t}`"
                )))
            }
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::new("io_error", 1, format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::new("internal", 1, e.to_string()))?;
    text.push('\n');
    emit(out, &text)
}

fn run_solve(args: &SolveArgs, s: &Settings) -> Result<(), CliError> {
    if let Some(space) = &args.space {
        if space != "E" {
            return Err(CliError::usage(format!(
                "only --space E is supported, got `{space}`"
            )));
        }
    }
    let lambda = parse_c("lambda", &args.lambda)?;
    let g = parse_gspec(&args.g)?;
    let grid = parse_grid(&args.grid)?;
    let param = alpha_from_lambda(lambda)?;
    let solution = match args.k {
        Some(k) => solve_ek(g, param, k, s.cfg.clone())?,
        None => {
            let phi1 = parse_phi(args.phi1.as_deref())?;
            let a = parse_c("A", &args.a)?;
            let b = parse_c("B", &args.b)?;
            solve_e(g, param, phi1, a, b, s.cfg.clone())?
        }
    };
    let points = solution.eval_grid(&grid);
    let mut csv = String::from("x,re_f,im_f,quad_err\n");
    for p in &points {
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            fmt_g17(p.x),
            fmt_g17(p.value.re),
            fmt_g17(p.value.im),
            fmt_g17(p.quad_error)
        );
    }
    emit(&s.out, &csv)
}

fn parse_candidate(text: &str) -> Result<HalfLineFunction, CliError> {
    if text.ends_with(".csv") {
        let table = TableFunction::from_csv_path(Path::new(text))?;
        Ok(HalfLineFunction::Table(table))
    } else {
        Ok(parse_gspec(text)?)
    }
}

fn run_verify(args: &VerifyArgs, s: &Settings) -> Result<(), CliError> {
    let lambda = parse_c("lambda", &args.lambda)?;
    let g = parse_gspec(&args.g)?;
    let f = parse_candidate(&args.f)?;
    let grid = parse_grid(&args.grid)?;
    let report = stieltjes_core::residual_check(&|x| f.eval(x), &g, lambda, &grid, &s.cfg)?;
    emit_json(&s.out, &report)
}

fn run_kernel(args: &KernelArgs, s: &Settings) -> Result<(), CliError> {
    let alpha = parse_c("alpha", &args.alpha)?;
    let xs: Result<Vec<f64>, _> = args.x.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let xs = xs.map_err(|_| CliError::usage(format!("bad abscissa list `{}`", args.x)))?;
    let phi1 = parse_phi(args.phi1.as_deref())?;
    let mut text = String::new();
    for &x in &xs {
        let value = match args.which.as_str() {
            "r1" => r_profile(Profile::R1, x, alpha)?,
            "r2" => r_profile(Profile::R2, x, alpha)?,
            "r3" => r_profile(Profile::R3, x, alpha)?,
            which @ ("R1" | "R2" | "R3" | "R23") => {
                let y = args
                    .y
                    .ok_or_else(|| CliError::usage("point kernels R1|R2|R3|R23 require --y"))?;
                let spec = match which {
                    "R1" => KernelSpec::r1(),
                    "R2" => KernelSpec::r2(),
                    "R3" => KernelSpec::r3(),
                    _ => KernelSpec::r23(phi1.clone()),
                };
                resolvent_point(&spec, x, y, alpha)?
            }
            other => {
                return Err(CliError::usage(format!(
                    "unknown kernel `{other}` (expected r1|r2|r3|R1|R2|R3|R23)"
                )))
            }
        };
        let _ = writeln!(text, "{} {}", fmt_g17(value.re), fmt_g17(value.im));
    }
    emit(&s.out, &text)
}

#[derive(Serialize)]
struct ValueOutput {
    value: Complex64,
    abs_error_estimate: f64,
    converged: bool,
}

fn run_mellin(args: &MellinArgs, s: &Settings) -> Result<(), CliError> {
    let g = parse_gspec(&args.g)?;
    let point = parse_c("s", &args.s)?;
    let r = mellin(|x| g.eval(x), point, &s.cfg)?;
    emit_json(
        &s.out,
        &ValueOutput {
            value: r.value,
            abs_error_estimate: r.abs_error_estimate,
            converged: r.converged,
        },
    )
}

fn parse_space(text: &str) -> Result<SpaceSpec, CliError> {
    if text == "E" {
        return Ok(SpaceSpec::E);
    }
    if let Some(k) = text.strip_prefix("ek:") {
        let k: f64 = k
            .parse()
            .map_err(|_| CliError::usage(format!("bad k in `{text}`")))?;
        return Ok(SpaceSpec::Ek { k });
    }
    if let Some(rest) = text.strip_prefix("beh:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() == 2 {
            let eps: f64 = parts[0]
                .parse()
                .map_err(|_| CliError::usage("bad eps".to_string()))?;
            let eta: f64 = parts[1]
                .parse()
                .map_err(|_| CliError::usage("bad eta".to_string()))?;
            return Ok(SpaceSpec::Beh { eps, eta });
        }
    }
    Err(CliError::usage(format!(
        "space must be E, ek:<k>, or beh:<eps>:<eta>, got `{text}`"
    )))
}

fn run_norm(args: &NormArgs, s: &Settings) -> Result<(), CliError> {
    let g = parse_gspec(&args.g)?;
    let space = parse_space(&args.space)?;
    let r = norm(|x| g.eval(x), &space, &s.cfg)?;
    emit_json(&s.out, &r)
}

fn run_growth(args: &GrowthArgs, s: &Settings) -> Result<(), CliError> {
    let g = parse_gspec(&args.g)?;
    let (w_inf, w_zero) = match &args.windows {
        None => (
            stieltjes_core::analysis::DEFAULT_WINDOW_INF,
            stieltjes_core::analysis::DEFAULT_WINDOW_ZERO,
        ),
        Some(text) => {
            let parse_window = |t: &str| -> Result<(f64, f64), CliError> {
                let parts: Vec<&str> = t.split(':').collect();
                if parts.len() != 2 {
                    return Err(CliError::usage(format!("window must be lo:hi, got `{t}`")));
                }
                let lo: f64 = parts[0]
                    .parse()
                    .map_err(|_| CliError::usage("bad window bound"))?;
                let hi: f64 = parts[1]
                    .parse()
                    .map_err(|_| CliError::usage("bad window bound"))?;
                if !(lo > 0.0 && hi > lo) {
                    return Err(CliError::usage("window needs 0 < lo < hi"));
                }
                Ok((lo, hi))
            };
            let mut halves = text.split(',');
            let first = halves
                .next()
                .ok_or_else(|| CliError::usage("missing windows"))?;
            let second = halves
                .next()
                .ok_or_else(|| CliError::usage("windows must be lo:hi,lo:hi"))?;
            if halves.next().is_some() {
                return Err(CliError::usage("too many windows"));
            }
            (parse_window(first)?, parse_window(second)?)
        }
    };
    let fit = fit_growth(|x| g.eval(x), w_inf, w_zero, s.cfg.abs_tol);
    emit_json(&s.out, &fit)
}

fn run_tbeta(args: &TbetaArgs, s: &Settings) -> Result<(), CliError> {
    let g = parse_gspec(&args.g)?;
    let beta = parse_c("beta", &args.beta)?;
    let r = t_beta_apply(|x| g.eval(x), beta, args.x, &s.cfg)?;
    emit_json(
        &s.out,
        &ValueOutput {
            value: r.value,
            abs_error_estimate: r.abs_error_estimate,
            converged: r.converged,
        },
    )
}

fn run_bound(args: &BoundArgs, s: &Settings) -> Result<(), CliError> {
    let g = parse_gspec(&args.g)?;
    let report = check_stieltjes_bound(|x| g.eval(x), args.eps, args.eta, &s.cfg)?;
    emit_json(&s.out, &report)
}

#[derive(Serialize)]
struct ReproSummary<'a> {
    seed: u64,
    total: usize,
    passed: usize,
    failed: Vec<&'a str>,
    checks: &'a [repro::CheckResult],
}

fn run_repro(args: &ReproArgs, s: &Settings) -> Result<bool, CliError> {
    let rc = repro::ReproConfig {
        seed: s.seed,
        cfg: s.cfg.clone(),
        only: args.only.clone(),
    };
    let results = repro::run_all(&rc);
    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::new("io_error", 1, format!("{}: {e}", args.out_dir.display())))?;
    let mut table = String::new();
    for r in &results {
        let verdict_path = args.out_dir.join(format!("{}.json", r.name));
        let json = serde_json::to_string_pretty(r)
            .map_err(|e| CliError::new("internal", 1, e.to_string()))?;
        std::fs::write(&verdict_path, json + "\n").map_err(|e| {
            CliError::new("io_error", 1, format!("{}: {e}", verdict_path.display()))
        })?;
        let _ = writeln!(
            table,
            "[{}] {:<28} {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
    }
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name)
        .collect();
    let summary = ReproSummary {
        seed: s.seed,
        total: results.len(),
        passed: results.len() - failed.len(),
        failed: failed.clone(),
        checks: &results,
    };
    let summary_path = args.out_dir.join("summary.json");
    let json = serde_json::to_string_pretty(&summary)
        .map_err(|e| CliError::new("internal", 1, e.to_string()))?;
    std::fs::write(&summary_path, json + "\n")
        .map_err(|e| CliError::new("io_error", 1, format!("{}: {e}", summary_path.display())))?;
    print!("{table}");
    println!(
        "{}/{} checks passed (verdicts in {})",
        summary.passed,
        summary.total,
        args.out_dir.display()
    );
    Ok(failed.is_empty())
}

fn dispatch(cli: &Cli) -> Result<bool, CliError> {
    let s = settings(cli)?;
    match &cli.cmd {
        Cmd::Solve(args) => run_solve(args, &s).map(|_| true),
        Cmd::Verify(args) => run_verify(args, &s).map(|_| true),
        Cmd::Kernel(args) => run_kernel(args, &s).map(|_| true),
        Cmd::Mellin(args) => run_mellin(args, &s).map(|_| true),
        Cmd::Norm(args) => run_norm(args, &s).map(|_| true),
        Cmd::Growth(args) => run_growth(args, &s).map(|_| true),
        Cmd::Tbeta(args) => run_tbeta(args, &s).map(|_| true),
        Cmd::Bound(args) => run_bound(args, &s).map(|_| true),
        Cmd::Repro(args) => run_repro(args, &s),
    }
}

fn main() -> ExitCode {
    // route argument errors through the same JSON error surface as
    // everything else; help and version keep their plain rendering
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let payload = serde_json::json!({
                "error": { "code": "usage", "message": e.to_string() }
            });
            eprintln!("{payload}");
            return ExitCode::from(2);
        }
    };
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let payload = serde_json::json!({
                "error": { "code": e.code, "message": e.message }
            });
            eprintln!("{payload}");
            ExitCode::from(e.exit)
        }
    }
}
