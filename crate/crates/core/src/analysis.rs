//! Norms for the weighted-L1 spaces `E` and `E_k` and the growth space
//! `B_{eps,eta}`, the Mellin transform and multiplicative convolution, the
//! `T^beta` operator family, growth-exponent fitting, and the explicit
//! boundedness constants of the Stieltjes operator on `B_{eps,eta}`.

use crate::kernels::{t_beta_profile, KernelError};
use crate::numeric::{c64, log_grid, pow_c, power_quotient};
use crate::quadrature::{
    apply_stieltjes, integrate_finite, integrate_halfline, IntegralResult, QuadConfig, QuadError,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

/// Which function space a norm is taken in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SpaceSpec {
    /// `integral of |f(x)|/(1+x)`.
    E,
    /// `integral of x^(k-1) |f(x)|`, `0 < k < 1`.
    Ek { k: f64 },
    /// `sup_{x>1} |x^eps f(x)| + sup_{x<1} |x^eta f(x)|` on a 200-point log grid.
    Beh { eps: f64, eta: f64 },
}

#[derive(Debug, Clone, Error)]
pub enum AnalysisError {
    #[error("norm diverged in {space}")]
    NormDiverged { space: String },
    #[error("invalid space parameter: {0}")]
    InvalidSpace(&'static str),
    #[error("Mellin transform requires 0 < Re s < 1 (got Re s = {re_s})")]
    OutsideMellinStrip { re_s: f64 },
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Verdict of the decade-wise Cauchy probe for a non-negative integrand.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProbeReport {
    pub diverged_at_zero: bool,
    pub diverged_at_infinity: bool,
    /// Crude value estimate (decade sums plus geometric tail extrapolation).
    pub estimate: f64,
}

impl ProbeReport {
    pub fn diverged(&self) -> bool {
        self.diverged_at_zero || self.diverged_at_infinity
    }
}

/// Probes whether `integral of weighted(x) dx` over `(0, inf)` converges by
/// integrating the decades `[10^j, 10^(j+1)]`, `j = -8..7`, and requiring the
/// boundary increments to be either negligible or decaying geometrically.
///
/// Exact membership in a weighted-L1 space is undecidable from samples; this
/// heuristic separates clean divergence (`x^-1` endpoints, non-decaying
/// tails) from the integrable cases at least ~0.05 away from the boundary
/// exponent.
pub fn weighted_norm_probe<F>(weighted: F, cfg: &QuadConfig) -> Result<ProbeReport, QuadError>
where
    F: Fn(f64) -> f64,
{
    let probe_cfg = QuadConfig {
        rel_tol: 1e-4,
        abs_tol: 1e-14,
        max_subdivisions: 150,
        ..cfg.clone()
    };
    let mut incr = Vec::with_capacity(16);
    for j in -8..8 {
        let a = 10f64.powi(j);
        let b = 10f64.powi(j + 1);
        let r = integrate_finite(|x| c64(weighted(x), 0.0), a, b, &probe_cfg)?;
        incr.push(r.value.re.max(0.0));
    }
    let total: f64 = incr.iter().sum();
    let negligible = |i: f64| i <= 1e-4 * total;
    let decaying =
        |last: f64, prev: f64, prev2: f64| last < prev && prev < prev2 && last <= 0.95 * prev;

    let n = incr.len();
    let diverged_at_infinity =
        !(negligible(incr[n - 1]) || decaying(incr[n - 1], incr[n - 2], incr[n - 3]));
    let diverged_at_zero = !(negligible(incr[0]) || decaying(incr[0], incr[1], incr[2]));

    let mut estimate = total;
    if incr[n - 1] > 0.0 && incr[n - 1] < 0.95 * incr[n - 2] {
        let r = incr[n - 1] / incr[n - 2];
        estimate += incr[n - 1] * r / (1.0 - r);
    }
    if incr[0] > 0.0 && incr[0] < 0.95 * incr[1] {
        let r = incr[0] / incr[1];
        estimate += incr[0] * r / (1.0 - r);
    }
    Ok(ProbeReport {
        diverged_at_zero,
        diverged_at_infinity,
        estimate,
    })
}

/// A computed norm with its quadrature diagnostics (sup norms report a zero
/// error estimate; their grid approximation is documented on `SpaceSpec`).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NormResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub converged: bool,
}

/// Grid sup of `x^eps |f|` over `x > 1` plus `x^eta |f|` over `x < 1`.
fn beh_sup<F>(f: &F, eps: f64, eta: f64) -> Result<f64, AnalysisError>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let grid = log_grid(1e-8, 1e8, 200);
    let vals: Vec<(f64, f64)> = grid.par_iter().map(|&x| (x, f(x).norm())).collect();
    let mut sup_inf = 0.0f64;
    let mut sup_zero = 0.0f64;
    for (x, v) in vals {
        if !v.is_finite() {
            return Err(AnalysisError::NormDiverged {
                space: format!("B_eps_eta (non-finite sample at x = {x})"),
            });
        }
        if x > 1.0 {
            sup_inf = sup_inf.max(x.powf(eps) * v);
        } else if x < 1.0 {
            sup_zero = sup_zero.max(x.powf(eta) * v);
        }
    }
    Ok(sup_inf + sup_zero)
}

/// Computes `|f|` in the requested space. Integral norms run the decade
/// probe first and report `NormDiverged` when it fails its Cauchy test.
pub fn norm<F>(f: F, space: &SpaceSpec, cfg: &QuadConfig) -> Result<NormResult, AnalysisError>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    match *space {
        SpaceSpec::E => weighted_norm(&f, |x| 1.0 / (1.0 + x), "E", cfg),
        SpaceSpec::Ek { k } => {
            if !(k > 0.0 && k < 1.0) {
                return Err(AnalysisError::InvalidSpace("E_k needs 0 < k < 1"));
            }
            weighted_norm(&f, move |x| x.powf(k - 1.0), "E_k", cfg)
        }
        SpaceSpec::Beh { eps, eta } => {
            if !(eps > 0.0 && eps < 1.0 && eta > 0.0 && eta < 1.0) {
                return Err(AnalysisError::InvalidSpace(
                    "B_eps_eta needs 0 < eps, eta < 1",
                ));
            }
            Ok(NormResult {
                value: beh_sup(&f, eps, eta)?,
                abs_error_estimate: 0.0,
                converged: true,
            })
        }
    }
}

fn weighted_norm<F, W>(
    f: &F,
    weight: W,
    space: &'static str,
    cfg: &QuadConfig,
) -> Result<NormResult, AnalysisError>
where
    F: Fn(f64) -> Complex64,
    W: Fn(f64) -> f64 + Copy,
{
    let probe = weighted_norm_probe(|x| weight(x) * f(x).norm(), cfg)?;
    if probe.diverged() {
        return Err(AnalysisError::NormDiverged {
            space: space.to_string(),
        });
    }
    let r = integrate_halfline(|x| c64(weight(x) * f(x).norm(), 0.0), None, cfg)?;
    Ok(NormResult {
        value: r.value.re,
        abs_error_estimate: r.abs_error_estimate,
        converged: r.converged,
    })
}

/// `(Mf)(s) = integral of x^(s-1) f(x) dx` on the strip `0 < Re s < 1`.
pub fn mellin<F>(f: F, s: Complex64, cfg: &QuadConfig) -> Result<IntegralResult, AnalysisError>
where
    F: Fn(f64) -> Complex64,
{
    if !(s.re > 0.0 && s.re < 1.0) {
        return Err(AnalysisError::OutsideMellinStrip { re_s: s.re });
    }
    Ok(integrate_halfline(
        move |x| pow_c(x, s - 1.0) * f(x),
        None,
        cfg,
    )?)
}

/// Multiplicative convolution `(f*g)(x) = integral of f(y) g(x/y) dy/y`.
pub fn mellin_convolve<F, G>(
    f: F,
    g: G,
    x: f64,
    cfg: &QuadConfig,
) -> Result<IntegralResult, AnalysisError>
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> Complex64,
{
    if !(x > 0.0 && x.is_finite()) {
        return Err(AnalysisError::Quad(QuadError::InvalidInput(
            "convolution point must be positive",
        )));
    }
    Ok(integrate_halfline(
        move |y| {
            let z = x / y;
            if !(z.is_finite() && z > 0.0) {
                return c64(0.0, 0.0);
            }
            f(y) * (g(z) / y)
        },
        None,
        cfg,
    )?)
}

/// `(T^beta f)(x) = integral of s(y/x; beta) f(y) dy / x` evaluated in the
/// ratio variable `u = y/x` with the removable point at `u = 1`.
pub fn t_beta_apply<F>(
    f: F,
    beta: Complex64,
    x: f64,
    cfg: &QuadConfig,
) -> Result<IntegralResult, AnalysisError>
where
    F: Fn(f64) -> Complex64,
{
    // range check once; the closure then evaluates the profile directly
    t_beta_profile(1.0, beta)?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(AnalysisError::Quad(QuadError::InvalidInput(
            "evaluation point must be positive",
        )));
    }
    Ok(integrate_halfline(
        move |u| {
            let y = u * x;
            if !(y.is_finite() && y > 0.0) {
                return c64(0.0, 0.0);
            }
            power_quotient(u, c64(0.0, 0.0), beta) * f(y)
        },
        Some(1.0),
        cfg,
    )?)
}

pub const DEFAULT_WINDOW_INF: (f64, f64) = (1e2, 1e6);
pub const DEFAULT_WINDOW_ZERO: (f64, f64) = (1e-6, 1e-2);
const FIT_POINTS: usize = 12;

/// Growth-class selection for the blended-kernel image of `B_{eps,eta}`
/// (`0 < Re alpha <= 1/2`): the decay exponent passes through when
/// `eps < Re alpha`, otherwise any value below `Re alpha` works and the
/// midpoint `Re alpha / 2` is returned; dually, the blow-up exponent passes
/// through when `eta > 1 - Re alpha`, otherwise the midpoint of
/// `(1 - Re alpha, 1)`.
pub fn growth_selection(eps: f64, eta: f64, alpha_re: f64) -> (f64, f64) {
    let eps_out = if eps < alpha_re { eps } else { alpha_re / 2.0 };
    let eta_out = if eta > 1.0 - alpha_re {
        eta
    } else {
        (1.0 + (1.0 - alpha_re)) / 2.0
    };
    (eps_out, eta_out)
}

/// Fitted growth exponents: `|f| ~ x^-eps_hat` as `x -> inf` and
/// `|f| ~ x^-eta_hat` as `x -> 0`, from least squares of `ln|f|` against
/// `ln x` on the two windows. A window where `|f|` sits below `floor`
/// everywhere reports `None` (degenerate fit).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GrowthFit {
    pub eps_hat: Option<f64>,
    pub eta_hat: Option<f64>,
    pub r_squared_inf: Option<f64>,
    pub r_squared_zero: Option<f64>,
    pub window_inf: (f64, f64),
    pub window_zero: (f64, f64),
}

fn window_slope<F>(f: &F, window: (f64, f64), floor: f64) -> Option<(f64, f64)>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let xs = log_grid(window.0, window.1, FIT_POINTS);
    let pts: Vec<(f64, f64)> = xs
        .par_iter()
        .map(|&x| (x.ln(), f(x).norm()))
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|&(_, v)| v.is_finite() && v > floor)
        .map(|(lx, v)| (lx, v.ln()))
        .collect();
    if pts.len() < 8 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<f64>();
    let sxy = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>();
    let syy = pts.iter().map(|p| (p.1 - my) * (p.1 - my)).sum::<f64>();
    let slope = sxy / sxx;
    let r2 = if syy > 0.0 {
        (sxy * sxy) / (sxx * syy)
    } else {
        1.0
    };
    Some((slope, r2))
}

/// Fits the decay exponent at infinity and the blow-up exponent at zero.
pub fn fit_growth<F>(f: F, window_inf: (f64, f64), window_zero: (f64, f64), floor: f64) -> GrowthFit
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let inf = window_slope(&f, window_inf, floor);
    let zero = window_slope(&f, window_zero, floor);
    GrowthFit {
        eps_hat: inf.map(|(s, _)| -s),
        eta_hat: zero.map(|(s, _)| -s),
        r_squared_inf: inf.map(|(_, r2)| r2),
        r_squared_zero: zero.map(|(_, r2)| r2),
        window_inf,
        window_zero,
    }
}

/// Outcome of the explicit boundedness estimate for the Stieltjes operator
/// on `B_{eps,eta}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundReport {
    /// `|S f|` in the growth space.
    pub lhs: f64,
    /// `max(pi/sin(pi eps) + 1/(1-eta), 1/eps + pi/sin(pi eta)) * |f|`.
    pub rhs: f64,
    pub norm_f: f64,
    pub ratio: f64,
    pub holds: bool,
}

/// Checks the explicit operator bound with its stated constants.
pub fn check_stieltjes_bound<F>(
    f: F,
    eps: f64,
    eta: f64,
    cfg: &QuadConfig,
) -> Result<BoundReport, AnalysisError>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    if !(eps > 0.0 && eps < 1.0 && eta > 0.0 && eta < 1.0) {
        return Err(AnalysisError::InvalidSpace("need 0 < eps, eta < 1"));
    }
    let norm_f = beh_sup(&f, eps, eta)?;
    let lhs = beh_sup(
        &|x: f64| match apply_stieltjes(|y| f(y), x, cfg) {
            Ok(r) => r.value,
            Err(_) => c64(f64::NAN, 0.0),
        },
        eps,
        eta,
    )?;
    let c_inf = PI / (PI * eps).sin() + 1.0 / (1.0 - eta);
    let c_zero = 1.0 / eps + PI / (PI * eta).sin();
    let rhs = c_inf.max(c_zero) * norm_f;
    let ratio = if rhs > 0.0 {
        lhs / rhs
    } else if lhs > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    Ok(BoundReport {
        lhs,
        rhs,
        norm_f,
        ratio,
        holds: lhs <= rhs * (1.0 + 1e-6),
    })
}
