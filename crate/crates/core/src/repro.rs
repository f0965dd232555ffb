//! Self-contained verification suite.
//!
//! Every check re-derives its expected values from closed forms, independent
//! quadrature routes, or a brute-force composite-rule oracle, runs the
//! library against them at pinned tolerances, and reports one pass/fail line.
//! The CLI `repro` subcommand and the `acceptance` integration test both
//! drive [`run_all`].

use crate::analysis::{
    check_stieltjes_bound, fit_growth, growth_selection, mellin, mellin_convolve, t_beta_apply,
    DEFAULT_WINDOW_INF,
};
use crate::function::{parse_gspec, HalfLineFunction};
use crate::kernels::{r_profile, resolvent_point, BlendFunction, KernelSpec, Profile};
use crate::numeric::{c64, log_grid, pow_c};
use crate::quadrature::{integrate_halfline, QuadConfig};
use crate::solver::{residual_check, select_ek_kernel, solve_e, solve_ek, SolveError};
use crate::spectral::{alpha_from_lambda, SpectralParam};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

/// Outcome of one acceptance check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub group: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Suite parameters: the seed feeds the randomized sweeps; `only` filters by
/// group or name substring.
#[derive(Debug, Clone)]
pub struct ReproConfig {
    pub seed: u64,
    pub cfg: QuadConfig,
    pub only: Option<String>,
}

impl Default for ReproConfig {
    fn default() -> Self {
        ReproConfig {
            seed: 42,
            cfg: QuadConfig::default(),
            only: None,
        }
    }
}

struct Tally {
    worst: f64,
    failures: Vec<String>,
    cases: usize,
}

impl Tally {
    fn new() -> Self {
        Tally {
            worst: 0.0,
            failures: Vec::new(),
            cases: 0,
        }
    }

    fn record(&mut self, label: &str, measure: f64, bound: f64) {
        self.cases += 1;
        if measure.is_nan() || measure > self.worst {
            self.worst = measure;
        }
        if !(measure <= bound) {
            self.failures
                .push(format!("{label}: {measure:.3e} > {bound:.1e}"));
        }
    }

    fn result(self, name: &'static str, group: &'static str, what: &str) -> CheckResult {
        let passed = self.failures.is_empty();
        let detail = if passed {
            format!("{} cases, worst {what} {:.3e}", self.cases, self.worst)
        } else {
            format!(
                "{} of {} cases failed: {}",
                self.failures.len(),
                self.cases,
                self.failures.join("; ")
            )
        };
        CheckResult {
            name,
            group,
            passed,
            detail,
        }
    }
}

fn param(alpha_re: f64) -> SpectralParam {
    SpectralParam::from_alpha(c64(alpha_re, 0.0)).expect("alpha in strip")
}

/// Each profile solves the equation with g = h at its lambda.
fn check_fundamental_identity(cfg: &QuadConfig) -> CheckResult {
    let xs = [0.1, 0.5, 1.0, 2.0, 10.0];
    let g = HalfLineFunction::h();
    let mut tally = Tally::new();
    for &alpha_re in &[-0.5, -0.3, -0.1, 0.1, 0.3, 0.5] {
        let alpha = c64(alpha_re, 0.0);
        let lambda = c64((PI * alpha_re).sin() / PI, 0.0);
        let mut profiles = Vec::new();
        if alpha_re < 0.5 {
            profiles.push(Profile::R1);
        }
        if alpha_re > 0.0 {
            profiles.push(Profile::R2);
            profiles.push(Profile::R3);
        }
        for profile in profiles {
            let rep = residual_check(
                &|x| r_profile(profile, x, alpha).expect("valid profile"),
                &g,
                lambda,
                &xs,
                cfg,
            );
            match rep {
                Ok(rep) => tally.record(
                    &format!("{} alpha={alpha_re}", profile.name()),
                    rep.max_rel_residual,
                    1e-6,
                ),
                Err(e) => tally.record(
                    &format!("{} alpha={alpha_re} ({e})", profile.name()),
                    f64::NAN,
                    1e-6,
                ),
            }
        }
    }
    tally.result(
        "profile_fundamental_identity",
        "kernels",
        "relative residual",
    )
}

/// Explicit E-space solutions across all four regimes pass the
/// residual check, including the slowly decaying g that defeats the
/// convolution kernels.
fn check_explicit_solution_residuals(cfg: &QuadConfig) -> CheckResult {
    let grid = log_grid(1e-3, 1e3, 40);
    let lambda_quarter = alpha_from_lambda(c64(0.25, 0.0)).expect("0.25 in range");
    let cases: Vec<(&str, SpectralParam)> = vec![
        ("h", param(-0.3)),
        ("pow:0.2 * invsq", param(-0.45)),
        ("invlog2sq", param(-0.2)),
        ("expneg", param(-0.5)),
        ("invlog2sq", lambda_quarter),
        ("h", param(0.3)),
        ("pow:0.2 * invsq", param(0.45)),
        ("expneg", param(0.5)),
    ];
    let mut tally = Tally::new();
    for (gspec, p) in cases {
        let g = parse_gspec(gspec).expect("suite g-spec");
        let label = format!("g={gspec} lambda={:.4}", p.lambda.re);
        match solve_e(
            g,
            p,
            BlendFunction::default(),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            cfg.clone(),
        )
        .and_then(|sol| sol.residual(&grid))
        {
            Ok(rep) => tally.record(&label, rep.max_rel_residual, 1e-5),
            Err(e) => tally.record(&format!("{label} ({e})"), f64::NAN, 1e-5),
        }
    }
    tally.result("explicit_solution_residuals", "solver", "relative residual")
}

/// For g = h and Re lambda < 0 the solver reproduces the first
/// profile pointwise (the unique E-solution).
fn check_uniqueness_branch(cfg: &QuadConfig) -> CheckResult {
    let p = param(-0.3);
    let mut tally = Tally::new();
    match solve_e(
        HalfLineFunction::h(),
        p,
        BlendFunction::default(),
        c64(0.0, 0.0),
        c64(0.0, 0.0),
        cfg.clone(),
    ) {
        Ok(sol) => {
            for &x in &[0.1, 0.5, 1.0, 2.0, 10.0] {
                let got = sol.eval(x);
                let expect = r_profile(Profile::R1, x, p.alpha).expect("valid");
                let rel = (got.value - expect).norm() / expect.norm();
                tally.record(&format!("x={x}"), rel, 1e-6);
            }
        }
        Err(e) => tally.record(&format!("solve failed ({e})"), f64::NAN, 1e-6),
    }
    tally.result("uniqueness_negative_lambda", "solver", "relative deviation")
}

/// The homogeneous family members solve the g = 0 equation.
fn check_homogeneous_family(cfg: &QuadConfig) -> CheckResult {
    let grid = log_grid(0.05, 20.0, 9);
    let zero = HalfLineFunction::Zero;
    let lam_a = c64((0.3 * PI).sin() / PI, 0.0);
    let lam_log = c64(1.0 / PI, 0.0);
    let members: Vec<(&str, Complex64, Box<dyn Fn(f64) -> Complex64 + Sync>)> = vec![
        ("x^-0.3", lam_a, Box::new(|x: f64| c64(x.powf(-0.3), 0.0))),
        ("x^-0.7", lam_a, Box::new(|x: f64| c64(x.powf(-0.7), 0.0))),
        ("x^-1/2", lam_log, Box::new(|x: f64| c64(x.powf(-0.5), 0.0))),
        (
            "x^-1/2 ln x",
            lam_log,
            Box::new(|x: f64| c64(x.powf(-0.5) * x.ln(), 0.0)),
        ),
    ];
    let mut tally = Tally::new();
    for (label, lambda, f) in &members {
        match residual_check(f, &zero, *lambda, &grid, cfg) {
            Ok(rep) => tally.record(label, rep.max_rel_residual, 1e-6),
            Err(e) => tally.record(&format!("{label} ({e})"), f64::NAN, 1e-6),
        }
    }
    tally.result("homogeneous_family", "solver", "relative residual")
}

/// One solve per kernel region, plus the boundary rejection.
fn check_ek_region_solutions(cfg: &QuadConfig) -> CheckResult {
    let grid = log_grid(1e-2, 1e2, 20);
    let cases = [
        (-0.3, 0.5, "expneg", crate::kernels::KernelKind::R1),
        (0.4, 0.2, "pow:0.1 * expneg", crate::kernels::KernelKind::R3),
        (0.4, 0.8, "pow:0.1 * expneg", crate::kernels::KernelKind::R2),
    ];
    let mut tally = Tally::new();
    for (alpha_re, k, gspec, expect_kernel) in cases {
        let g = parse_gspec(gspec).expect("suite g-spec");
        let label = format!("alpha={alpha_re} k={k}");
        match solve_ek(g, param(alpha_re), k, cfg.clone()) {
            Ok(sol) => {
                if sol.kernel.which != expect_kernel {
                    tally.record(
                        &format!("{label}: wrong kernel {:?}", sol.kernel.which),
                        f64::NAN,
                        1e-5,
                    );
                    continue;
                }
                match sol.residual(&grid) {
                    Ok(rep) => tally.record(&label, rep.max_rel_residual, 1e-5),
                    Err(e) => tally.record(&format!("{label} ({e})"), f64::NAN, 1e-5),
                }
            }
            Err(e) => tally.record(&format!("{label} ({e})"), f64::NAN, 1e-5),
        }
    }
    // boundary rejection
    let boundary_ok = matches!(
        select_ek_kernel(0.4, 0.4),
        Err(SolveError::RegionBoundary { .. })
    );
    let mut result = tally.result("ek_region_solutions", "solver", "relative residual");
    if !boundary_ok {
        result.passed = false;
        result.detail.push_str("; boundary (0.4, 0.4) not rejected");
    } else {
        result.detail.push_str("; boundary rejected");
    }
    result
}

/// Kernel symmetry and the transpose relation at random points.
fn check_kernel_relations(seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b65726e);
    let mut tally = Tally::new();
    for i in 0..100 {
        let x = 10f64.powf(rng.gen_range(-3.0..3.0));
        let y = 10f64.powf(rng.gen_range(-3.0..3.0));
        let im = rng.gen_range(-0.3..0.3);

        // R1 symmetry on its full strip
        let a_sym = c64(rng.gen_range(-0.5..0.49), im);
        let r_xy = resolvent_point(&KernelSpec::r1(), x, y, a_sym).expect("valid");
        let r_yx = resolvent_point(&KernelSpec::r1(), y, x, a_sym).expect("valid");
        tally.record(
            &format!("sym #{i}"),
            (r_xy - r_yx).norm() / r_xy.norm().max(1e-300),
            1e-10,
        );

        // transpose relation R2(x,y;alpha) = -(y/x) R1(x,y;-alpha)
        let a_pos = c64(rng.gen_range(0.02..0.5), im);
        let r2 = resolvent_point(&KernelSpec::r2(), x, y, a_pos).expect("valid");
        let r1 = resolvent_point(&KernelSpec::r1(), x, y, -a_pos).expect("valid");
        tally.record(
            &format!("transpose #{i}"),
            (r2 + (y / x) * r1).norm() / r2.norm().max(1e-300),
            1e-10,
        );
    }
    tally.result("kernel_relations", "kernels", "relative deviation")
}

/// The resolvent operators decompose into differences of
/// `T^beta` operators with the `1/cos(pi alpha)` prefactor.
fn check_t_beta_decompositions(cfg: &QuadConfig) -> CheckResult {
    let xs = [0.3, 1.0, 3.0];
    let mut tally = Tally::new();
    // (kernel, alpha, f, beta_plus, beta_minus)
    let f1 = parse_gspec("expneg").expect("gspec");
    let f2 = parse_gspec("pow:0.1 * expneg").expect("gspec");
    let cases: Vec<(
        &str,
        KernelSpec,
        f64,
        &HalfLineFunction,
        Complex64,
        Complex64,
    )> = vec![
        (
            "R1",
            KernelSpec::r1(),
            -0.3,
            &f1,
            c64(-0.3 + 1.0, 0.0),
            c64(0.3, 0.0),
        ),
        (
            "R2",
            KernelSpec::r2(),
            0.3,
            &f2,
            c64(0.3 + 1.0, 0.0),
            c64(2.0 - 0.3, 0.0),
        ),
        (
            "R3",
            KernelSpec::r3(),
            0.3,
            &f2,
            c64(0.3 - 1.0, 0.0),
            c64(-0.3, 0.0),
        ),
    ];
    for (name, spec, alpha_re, f, beta_a, beta_b) in cases {
        let alpha = c64(alpha_re, 0.0);
        let cos = (PI * alpha_re).cos();
        for &x in &xs {
            let direct = crate::solver::apply_resolvent(&spec, f, alpha, x, cfg);
            let ta = t_beta_apply(|y| f.eval(y), beta_a, x, cfg);
            let tb = t_beta_apply(|y| f.eval(y), beta_b, x, cfg);
            match (direct, ta, tb) {
                (Ok(d), Ok(ta), Ok(tb)) => {
                    let decomposed = (ta.value - tb.value) / cos;
                    let rel = (d.value - decomposed).norm() / d.value.norm().max(1e-300);
                    tally.record(&format!("{name} x={x}"), rel, 1e-6);
                }
                _ => tally.record(&format!("{name} x={x} (quadrature error)"), f64::NAN, 1e-6),
            }
        }
    }
    tally.result("t_beta_decompositions", "analysis", "relative deviation")
}

/// Mellin value of h at 1/2 and transform multiplicativity.
fn check_mellin_identities(cfg: &QuadConfig) -> CheckResult {
    let mut tally = Tally::new();
    let h = HalfLineFunction::h();
    let e = HalfLineFunction::expneg();
    match mellin(|x| h.eval(x), c64(0.5, 0.0), cfg) {
        Ok(r) => tally.record("(Mh)(1/2) = pi", (r.value.re - PI).abs() / PI, 1e-8),
        Err(err) => tally.record(&format!("(Mh)(1/2) ({err})"), f64::NAN, 1e-8),
    }
    let pairs: [(&str, &HalfLineFunction, &HalfLineFunction); 3] =
        [("e*e", &e, &e), ("h*e", &h, &e), ("h*h", &h, &h)];
    for (label, f, g) in pairs {
        for &s_im in &[-0.6, -0.3, 0.0, 0.3, 0.6] {
            let s = c64(0.5, s_im);
            let conv = |x: f64| match mellin_convolve(|y| f.eval(y), |y| g.eval(y), x, cfg) {
                Ok(r) => r.value,
                Err(_) => c64(f64::NAN, f64::NAN),
            };
            let lhs = mellin(conv, s, cfg);
            let mf = mellin(|x| f.eval(x), s, cfg);
            let mg = mellin(|x| g.eval(x), s, cfg);
            match (lhs, mf, mg) {
                (Ok(l), Ok(a), Ok(b)) => {
                    let rhs = a.value * b.value;
                    tally.record(
                        &format!("{label} s=0.5{s_im:+}i"),
                        (l.value - rhs).norm() / rhs.norm(),
                        1e-6,
                    );
                }
                _ => tally.record(&format!("{label} s=0.5{s_im:+}i (quad)"), f64::NAN, 1e-6),
            }
        }
    }
    tally.result("mellin_identities", "mellin", "relative deviation")
}

/// The explicit operator bound on the growth classes holds on a
/// random sweep.
fn check_bound_sweep(seed: u64, cfg: &QuadConfig) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x626f756e);
    let mut tally = Tally::new();
    for i in 0..20 {
        let (f, p_min): (HalfLineFunction, f64) = match i % 5 {
            0 => (HalfLineFunction::h(), 0.0),
            1 => (HalfLineFunction::expneg(), 0.0),
            2 => (parse_gspec("invsq").expect("gspec"), 0.0),
            _ => {
                let p = rng.gen_range(-0.3..0.3);
                let base = if i % 2 == 0 { "expneg" } else { "h" };
                (parse_gspec(&format!("pow:{p} * {base}")).expect("gspec"), p)
            }
        };
        // keep (eps, eta) inside the membership range of f:
        // near zero f ~ x^p needs eta > -p; at infinity exp or x^(p-1) decay
        // needs eps < 1 - p for the h-family
        let eta_lo = (-p_min + 0.05).max(0.1);
        let eps_hi = (1.0 - p_min - 0.05).min(0.9);
        let eta = rng.gen_range(eta_lo..0.9);
        let eps = rng.gen_range(0.1..eps_hi);
        match check_stieltjes_bound(|x| f.eval(x), eps, eta, cfg) {
            Ok(rep) => {
                let slack_ratio = if rep.rhs > 0.0 {
                    rep.lhs / rep.rhs
                } else {
                    0.0
                };
                tally.record(
                    &format!("#{i} eps={eps:.2} eta={eta:.2}"),
                    slack_ratio,
                    1.0 + 1e-6,
                );
            }
            Err(e) => tally.record(&format!("#{i} ({e})"), f64::NAN, 1.0),
        }
    }
    tally.result("stieltjes_bound_sweep", "bound", "lhs/rhs ratio")
}

/// Growth-exponent transfer. For `Re lambda < 0` the solution
/// inherits power-law exponents of g; for `Re lambda > 0` the particular
/// solution decays like `x^-Re(alpha)` and blows up like `x^(Re(alpha)-1)`.
fn check_growth_transfer(cfg: &QuadConfig) -> CheckResult {
    let mut tally = Tally::new();
    let floor = 1e-280;
    // the zero-side window sits a decade deeper than the fit default so the
    // subdominant terms of the solutions do not bias the slope
    let window_zero = (1e-7, 1e-3);

    // (a) inheritance for Re lambda < 0 with power-like g whose exponents
    // lie inside the (0, 1) strip the growth classes resolve: a pure power
    // and a two-exponent mixture (decay 0.3 at infinity, blow-up 0.7 at zero)
    for (gspec, alpha_re) in [("pow:-0.6", -0.3), ("pow:-0.3 + pow:-0.7", -0.3)] {
        let g = parse_gspec(gspec).expect("gspec");
        let gfit = fit_growth(|x| g.eval(x), DEFAULT_WINDOW_INF, window_zero, floor);
        match solve_e(
            g,
            param(alpha_re),
            BlendFunction::default(),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            cfg.clone(),
        ) {
            Ok(sol) => {
                let ffit = fit_growth(
                    |x| sol.eval(x).value,
                    DEFAULT_WINDOW_INF,
                    window_zero,
                    floor,
                );
                match (gfit.eps_hat, ffit.eps_hat, gfit.eta_hat, ffit.eta_hat) {
                    (Some(ge), Some(fe), Some(gn), Some(fn_)) => {
                        tally.record(
                            &format!("neg {gspec}: eps inherited"),
                            (ge - fe).abs(),
                            0.05,
                        );
                        tally.record(
                            &format!("neg {gspec}: eta inherited"),
                            (gn - fn_).abs(),
                            0.05,
                        );
                    }
                    _ => tally.record(&format!("neg {gspec}: degenerate fit"), f64::NAN, 0.05),
                }
            }
            Err(e) => tally.record(&format!("neg {gspec} solve ({e})"), f64::NAN, 0.05),
        }
    }

    // (b) selection for Re lambda > 0 with g = exp(-x), alpha = 0.3
    // (c) the same asymptotics for g = h: the particular solution leaves
    //     B_{eps,eta} once eps exceeds Re alpha
    for (label, gspec) in [("expneg", "expneg"), ("h", "h")] {
        let g = parse_gspec(gspec).expect("gspec");
        match solve_e(
            g,
            param(0.3),
            BlendFunction::default(),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            cfg.clone(),
        ) {
            Ok(sol) => {
                let ffit = fit_growth(
                    |x| sol.eval(x).value,
                    DEFAULT_WINDOW_INF,
                    window_zero,
                    floor,
                );
                match (ffit.eps_hat, ffit.eta_hat) {
                    (Some(fe), Some(fn_)) => {
                        tally.record(
                            &format!("pos {label}: eps_hat vs Re alpha"),
                            (fe - 0.3).abs(),
                            0.05,
                        );
                        tally.record(
                            &format!("pos {label}: eta_hat vs 1 - Re alpha"),
                            (fn_ - 0.7).abs(),
                            0.05,
                        );
                        // the fitted exponents must land inside the class
                        // the selection rule promises for out-of-range
                        // (eps, eta) requests
                        let (sel_eps, sel_eta) = growth_selection(0.5, 0.5, 0.3);
                        tally.record(
                            &format!("pos {label}: decay at least selected eps"),
                            sel_eps - fe,
                            0.05,
                        );
                        tally.record(
                            &format!("pos {label}: blow-up at most selected eta"),
                            fn_ - sel_eta,
                            0.05,
                        );
                    }
                    _ => tally.record(&format!("pos {label}: degenerate fit"), f64::NAN, 0.05),
                }
            }
            Err(e) => tally.record(&format!("pos {label} solve ({e})"), f64::NAN, 0.05),
        }
    }
    tally.result("growth_transfer", "growth", "exponent deviation")
}

/// Purely imaginary lambda is rejected with the documented
/// contract (the CLI maps this error to exit code 3).
fn check_pure_imag_contract(cfg: &QuadConfig) -> CheckResult {
    let p = SpectralParam::from_lambda(c64(0.0, 0.5)).expect("classify");
    let got = solve_e(
        HalfLineFunction::h(),
        p,
        BlendFunction::default(),
        c64(0.0, 0.0),
        c64(0.0, 0.0),
        cfg.clone(),
    );
    let passed = matches!(got, Err(SolveError::PureImagUnsolvable(_)));
    CheckResult {
        name: "pure_imag_contract",
        group: "solver",
        passed,
        detail: if passed {
            "lambda = 0.5i rejected with PureImagUnsolvable".to_string()
        } else {
            "lambda = 0.5i was not rejected".to_string()
        },
    }
}

/// Composite-Simpson oracle in the log variable, with compensated summation.
fn simpson_log_oracle<F>(f: F, t_lo: f64, t_hi: f64, n: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    debug_assert!(n % 2 == 0);
    let h = (t_hi - t_lo) / n as f64;
    let mut sum = Complex64::default();
    let mut comp = Complex64::default();
    for i in 0..=n {
        let t = t_lo + h * i as f64;
        let u = t.exp();
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        // Kahan step
        let term = w * f(u) * u - comp;
        let next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    sum * (h / 3.0)
}

struct CorpusEntry {
    label: &'static str,
    f: Box<dyn Fn(f64) -> Complex64 + Sync>,
    t_range: (f64, f64),
    closed_form: Option<Complex64>,
}

fn oracle_corpus() -> Vec<CorpusEntry> {
    let a1 = c64(-0.3, 0.0);
    let a2 = c64(0.4, 0.0);
    vec![
        CorpusEntry {
            label: "(1+u)^-2",
            f: Box::new(|u| c64(1.0 / ((1.0 + u) * (1.0 + u)), 0.0)),
            t_range: (-45.0, 45.0),
            closed_form: Some(c64(1.0, 0.0)),
        },
        CorpusEntry {
            label: "exp(-u)",
            f: Box::new(|u| c64((-u).exp(), 0.0)),
            t_range: (-45.0, 7.0),
            closed_form: Some(c64(1.0, 0.0)),
        },
        CorpusEntry {
            label: "u^-1/2/(1+u)",
            f: Box::new(|u| c64(u.powf(-0.5) / (1.0 + u), 0.0)),
            t_range: (-70.0, 70.0),
            closed_form: Some(c64(PI, 0.0)),
        },
        CorpusEntry {
            label: "u^-1/2 exp(-u)",
            f: Box::new(|u| c64(u.powf(-0.5) * (-u).exp(), 0.0)),
            t_range: (-70.0, 7.0),
            closed_form: Some(c64(PI.sqrt(), 0.0)),
        },
        CorpusEntry {
            label: "1/((1+u)(4+u))",
            f: Box::new(|u| c64(1.0 / ((1.0 + u) * (4.0 + u)), 0.0)),
            t_range: (-45.0, 45.0),
            closed_form: Some(c64(4f64.ln() / 3.0, 0.0)),
        },
        CorpusEntry {
            label: "u^0.3/(1+u^2)",
            f: Box::new(|u| c64(u.powf(0.3) / (1.0 + u * u), 0.0)),
            t_range: (-50.0, 60.0),
            closed_form: Some(c64(PI / 2.0 / (0.65 * PI).sin(), 0.0)),
        },
        CorpusEntry {
            label: "u^1/2 exp(-u)",
            f: Box::new(|u| c64(u.powf(0.5) * (-u).exp(), 0.0)),
            t_range: (-45.0, 8.0),
            closed_form: Some(c64(PI.sqrt() / 2.0, 0.0)),
        },
        CorpusEntry {
            label: "max(1,1/u)|r1(u;-0.3)|",
            f: Box::new(move |u| {
                let r = crate::kernels::r_profile(Profile::R1, u, a1).expect("valid");
                c64(1f64.max(1.0 / u) * r.norm(), 0.0)
            }),
            t_range: (-90.0, 90.0),
            closed_form: None,
        },
        CorpusEntry {
            label: "r1(u;-0.3)/(1+u)",
            f: Box::new(move |u| {
                crate::kernels::r_profile(Profile::R1, u, a1).expect("valid") / (1.0 + u)
            }),
            t_range: (-80.0, 80.0),
            closed_form: None,
        },
        CorpusEntry {
            label: "r2(u;0.4) exp(-u)",
            f: Box::new(move |u| {
                crate::kernels::r_profile(Profile::R2, u, a2).expect("valid") * (-u).exp()
            }),
            t_range: (-80.0, 7.0),
            closed_form: None,
        },
        CorpusEntry {
            label: "u^(-0.3+0.2i) exp(-u)",
            f: Box::new(|u| pow_c(u, c64(-0.3, 0.2)) * (-u).exp()),
            t_range: (-70.0, 7.0),
            closed_form: None,
        },
        CorpusEntry {
            label: "s(u;1.3) exp(-u)",
            f: Box::new(|u| {
                crate::kernels::t_beta_profile(u, c64(1.3, 0.0)).expect("valid") * (-u).exp()
            }),
            t_range: (-45.0, 7.0),
            closed_form: None,
        },
    ]
}

/// The adaptive integrator against the brute-force oracle, the
/// honesty of its error estimates, and the finiteness of the weighted
/// profile integral that underpins every convergence argument.
fn check_quadrature_oracle(cfg: &QuadConfig) -> CheckResult {
    let mut tally = Tally::new();
    let mut honest = 0usize;
    let mut honesty_cases = 0usize;
    for entry in oracle_corpus() {
        let adaptive = match integrate_halfline(&entry.f, None, cfg) {
            Ok(r) => r,
            Err(e) => {
                tally.record(&format!("{} ({e})", entry.label), f64::NAN, 1e-8);
                continue;
            }
        };
        let oracle = simpson_log_oracle(&entry.f, entry.t_range.0, entry.t_range.1, 1 << 20);
        let rel = (adaptive.value - oracle).norm() / oracle.norm();
        tally.record(entry.label, rel, cfg.rel_tol * 10.0);
        if let Some(exact) = entry.closed_form {
            honesty_cases += 1;
            let true_err = (adaptive.value - exact).norm();
            if true_err <= 5.0 * adaptive.abs_error_estimate {
                honest += 1;
            }
        }
    }
    // integrability of max(1, 1/u)|r1(u; alpha)| for the sampled alphas
    for alpha in [
        c64(-0.1, 0.0),
        c64(-0.3, 0.0),
        c64(-0.5, 0.0),
        c64(-0.3, 0.2),
    ] {
        match integrate_halfline(
            |u| {
                let r = crate::kernels::r_profile(Profile::R1, u, alpha).expect("valid");
                c64(1f64.max(1.0 / u) * r.norm(), 0.0)
            },
            None,
            cfg,
        ) {
            Ok(r) => tally.record(
                &format!("bound(6) alpha={alpha}"),
                if r.value.re.is_finite() {
                    r.value.re
                } else {
                    f64::NAN
                },
                1e6,
            ),
            Err(e) => tally.record(&format!("bound(6) alpha={alpha} ({e})"), f64::NAN, 1e6),
        }
    }
    let mut result = tally.result("quadrature_oracle_corpus", "quadrature", "measure");
    let need = (0.95 * honesty_cases as f64).ceil() as usize;
    if honest < need {
        result.passed = false;
        result.detail.push_str(&format!(
            "; error estimates honest in only {honest}/{honesty_cases}"
        ));
    } else {
        result.detail.push_str(&format!(
            "; error estimates honest in {honest}/{honesty_cases}"
        ));
    }
    result
}

/// Runs the suite (optionally filtered by group or name substring).
pub fn run_all(rc: &ReproConfig) -> Vec<CheckResult> {
    let cfg = &rc.cfg;
    let checks: Vec<(&str, &str, Box<dyn FnOnce() -> CheckResult>)> = vec![
        (
            "profile_fundamental_identity",
            "kernels",
            Box::new(|| check_fundamental_identity(cfg)),
        ),
        (
            "explicit_solution_residuals",
            "solver",
            Box::new(|| check_explicit_solution_residuals(cfg)),
        ),
        (
            "uniqueness_negative_lambda",
            "solver",
            Box::new(|| check_uniqueness_branch(cfg)),
        ),
        (
            "homogeneous_family",
            "solver",
            Box::new(|| check_homogeneous_family(cfg)),
        ),
        (
            "ek_region_solutions",
            "solver",
            Box::new(|| check_ek_region_solutions(cfg)),
        ),
        (
            "kernel_relations",
            "kernels",
            Box::new(|| check_kernel_relations(rc.seed)),
        ),
        (
            "t_beta_decompositions",
            "analysis",
            Box::new(|| check_t_beta_decompositions(cfg)),
        ),
        (
            "mellin_identities",
            "mellin",
            Box::new(|| check_mellin_identities(cfg)),
        ),
        (
            "stieltjes_bound_sweep",
            "bound",
            Box::new(|| check_bound_sweep(rc.seed, cfg)),
        ),
        (
            "growth_transfer",
            "growth",
            Box::new(|| check_growth_transfer(cfg)),
        ),
        (
            "pure_imag_contract",
            "solver",
            Box::new(|| check_pure_imag_contract(cfg)),
        ),
        (
            "quadrature_oracle_corpus",
            "quadrature",
            Box::new(|| check_quadrature_oracle(cfg)),
        ),
    ];
    checks
        .into_iter()
        .filter(|(name, group, _)| match &rc.only {
            Some(filter) => name.contains(filter.as_str()) || *group == filter,
            None => true,
        })
        .map(|(_, _, run)| run())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_selects_groups() {
        let rc = ReproConfig {
            only: Some("mellin".to_string()),
            ..ReproConfig::default()
        };
        let results = run_all(&rc);
        assert_eq!(results.len(), 1);
        assert_eq!(results[0].name, "mellin_identities");
    }

    #[test]
    fn simpson_oracle_sanity() {
        // integral of exp(-u) = 1
        let v = simpson_log_oracle(|u| c64((-u).exp(), 0.0), -45.0, 7.0, 1 << 16);
        assert!((v.re - 1.0).abs() < 1e-12);
    }
}
