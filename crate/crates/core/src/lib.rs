//! Explicit solutions of the Stieltjes integral equation
//!
//! ```text
//! f(x) = g(x) + lambda * integral over (0, inf) of f(y)/(x+y) dy,   x > 0
//! ```
//!
//! with `lambda = sin(pi alpha)/pi`, `|Re alpha| <= 1/2`. The crate evaluates
//! the classical resolvent profiles `r_1, r_2, r_3` and their point kernels,
//! blends the second and third into the non-convolution kernel
//! `R_23 = phi_1(y) R_2 + phi_2(y) R_3` that solves the equation on the whole
//! weighted-L1 class `E` for `Re lambda > 0`, and verifies any candidate
//! solution by direct substitution. Supporting machinery: adaptive
//! Gauss-Kronrod quadrature on the half-line, Mellin transform and
//! multiplicative convolution, weighted norms with divergence probes, the
//! `T^beta` operator family, and growth-exponent fits.
//!
//! Entry points:
//!
//! * [`spectral::alpha_from_lambda`] / [`spectral::lambda_from_alpha`] - the
//!   spectral parameterization with branch selection and regime classification.
//! * [`solver::solve_e`] / [`solver::solve_ek`] - explicit solutions in `E`
//!   and in the classical `E_k` classes.
//! * [`solver::residual_check`] - substitutes any evaluable candidate back
//!   into the equation.
//! * [`analysis`] - norms, Mellin machinery, `T^beta`, growth fits, and the
//!   explicit Stieltjes-operator bound on the growth classes.
//! * [`repro`] - the self-contained verification suite behind `stieltjes repro`.
//!
//! ```
//! use stieltjes_core::{alpha_from_lambda, parse_gspec, solve_e, BlendFunction,
//!     Complex64, QuadConfig};
//!
//! // solve f = g + lambda S f for g = 1/(1+x) at lambda = sin(-0.3 pi)/pi
//! let lambda = Complex64::new((-0.3 * std::f64::consts::PI).sin() / std::f64::consts::PI, 0.0);
//! let param = alpha_from_lambda(lambda).unwrap();
//! let g = parse_gspec("h").unwrap();
//! let zero = Complex64::new(0.0, 0.0);
//! let sol = solve_e(g, param, BlendFunction::default(), zero, zero, QuadConfig::default()).unwrap();
//!
//! // for this g the unique solution is the first resolvent profile
//! let f1 = sol.eval(1.0);
//! let expect = stieltjes_core::r_profile(stieltjes_core::Profile::R1, 1.0, param.alpha).unwrap();
//! assert!(f1.converged && (f1.value - expect).norm() < 1e-7 * expect.norm());
//! ```

pub mod analysis;
pub mod function;
pub mod kernels;
pub mod numeric;
pub mod quadrature;
pub mod repro;
pub mod solver;
pub mod spectral;

pub use analysis::{
    check_stieltjes_bound, fit_growth, growth_selection, mellin, mellin_convolve, norm,
    t_beta_apply, AnalysisError, BoundReport, GrowthFit, NormResult, SpaceSpec,
};
pub use function::{parse_gspec, FunctionError, HalfLineFunction, TableFunction};
pub use kernels::{
    capital_phi, r_profile, resolvent_point, t_beta_profile, BlendFunction, KernelError,
    KernelKind, KernelSpec, Profile,
};
pub use numeric::{fmt_g17, log_grid, parse_complex};
pub use quadrature::{
    apply_stieltjes, integrate_finite, integrate_halfline, stieltjes_grid, IntegralResult,
    QuadConfig, QuadError,
};
pub use solver::{
    apply_resolvent, homogeneous_solution, residual_check, solve_e, solve_ek, PointValue,
    ResidualReport, Solution, SolveError,
};
pub use spectral::{alpha_from_lambda, lambda_from_alpha, Regime, SpectralError, SpectralParam};

pub use num_complex::Complex64;
