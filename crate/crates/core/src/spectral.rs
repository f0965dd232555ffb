//! The spectral parameterization `lambda = sin(pi alpha)/pi` with
//! `|Re alpha| <= 1/2`, branch selection, and solvability regime classification.

use crate::numeric::{sin_pi, z_over_sin_pi};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

/// Absolute tolerance for classifying `lambda` against `0` and `+-1/pi`.
pub const REGIME_TOL: f64 = 1e-12;

/// Relative tolerance the reconstructed `sin(pi alpha)/pi` must meet.
const ROUND_TRIP_TOL: f64 = 1e-12;

/// Solvability regime of the equation at a given `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// `Re lambda < 0`, `lambda != -1/pi`: unique solution, kernel of the first kind.
    NegRe,
    /// `lambda = -1/pi`: logarithmic limit of the `Re lambda < 0` branch.
    NegReLog,
    /// `Re lambda > 0`, `lambda != 1/pi`: blended kernel plus a two-parameter family.
    PosRe,
    /// `lambda = 1/pi`: logarithmic limit of the `Re lambda > 0` branch.
    PosReLog,
    /// `lambda = 0`: the equation is trivial, `f = g`.
    Zero,
    /// `Re lambda = 0`, `lambda != 0`: not solvable in the weighted-L1 space E.
    PureImag,
}

impl Regime {
    pub fn classify(lambda: Complex64) -> Regime {
        let inv_pi = 1.0 / PI;
        if lambda.norm() <= REGIME_TOL {
            Regime::Zero
        } else if (lambda - inv_pi).norm() <= REGIME_TOL {
            Regime::PosReLog
        } else if (lambda + inv_pi).norm() <= REGIME_TOL {
            Regime::NegReLog
        } else if lambda.re.abs() <= REGIME_TOL {
            Regime::PureImag
        } else if lambda.re > 0.0 {
            Regime::PosRe
        } else {
            Regime::NegRe
        }
    }

    /// Regimes that carry the two-parameter homogeneous family.
    pub fn has_homogeneous_family(self) -> bool {
        matches!(self, Regime::PosRe | Regime::PosReLog)
    }
}

/// The pair `(lambda, alpha)` with its regime, kept consistent by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralParam {
    pub lambda: Complex64,
    pub alpha: Complex64,
    pub regime: Regime,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpectralError {
    #[error("alpha outside the admissible strip |Re alpha| <= 1/2 (Re alpha = {0})")]
    AlphaOutOfStrip(f64),
    #[error("no arcsin branch reproduces lambda = {0} within tolerance (arcsin defect)")]
    BranchValidationFailed(Complex64),
    #[error("lambda must be finite")]
    NonFiniteLambda,
}

/// `lambda = sin(pi alpha)/pi` on the strip `|Re alpha| <= 1/2`.
pub fn lambda_from_alpha(alpha: Complex64) -> Result<Complex64, SpectralError> {
    if alpha.re.abs() > 0.5 + REGIME_TOL {
        return Err(SpectralError::AlphaOutOfStrip(alpha.re));
    }
    Ok(sin_pi(alpha) / PI)
}

/// Inverts `lambda = sin(pi alpha)/pi` into the strip, picking the branch with
/// `sign(Re alpha) = sign(Re lambda)`.
///
/// The principal arcsin already lands in the strip; if its real-part sign
/// disagrees with `Re lambda` the reflected candidates `-alpha`, `1 - alpha`,
/// `-1 - alpha` are tried in that order, keeping the first one that lies in
/// the strip and round-trips through `sin(pi alpha)/pi`.
pub fn alpha_from_lambda(lambda: Complex64) -> Result<SpectralParam, SpectralError> {
    if !lambda.re.is_finite() || !lambda.im.is_finite() {
        return Err(SpectralError::NonFiniteLambda);
    }
    let z = PI * lambda;
    let principal = if z.im == 0.0 && z.re.abs() <= 1.0 {
        Complex64::new(z.re.asin() / PI, 0.0)
    } else {
        z.asin() / PI
    };

    let candidates = [principal, -principal, 1.0 - principal, -1.0 - principal];
    for alpha in candidates {
        if alpha.re.abs() > 0.5 + REGIME_TOL {
            continue;
        }
        if lambda.re.abs() > REGIME_TOL && alpha.re * lambda.re <= 0.0 {
            continue;
        }
        let back = sin_pi(alpha) / PI;
        if (back - lambda).norm() <= ROUND_TRIP_TOL * lambda.norm().max(f64::MIN_POSITIVE) {
            return Ok(SpectralParam {
                lambda,
                alpha,
                regime: Regime::classify(lambda),
            });
        }
    }
    Err(SpectralError::BranchValidationFailed(lambda))
}

impl SpectralParam {
    /// Builds the pair from a given `alpha` in the strip (regime derived from
    /// the induced `lambda`).
    pub fn from_alpha(alpha: Complex64) -> Result<SpectralParam, SpectralError> {
        let lambda = lambda_from_alpha(alpha)?;
        Ok(SpectralParam {
            lambda,
            alpha,
            regime: Regime::classify(lambda),
        })
    }

    pub fn from_lambda(lambda: Complex64) -> Result<SpectralParam, SpectralError> {
        alpha_from_lambda(lambda)
    }

    /// `tan(pi alpha)/pi`, the prefactor of the explicit solution forms.
    pub fn tan_pi_alpha_over_pi(&self) -> Complex64 {
        self.lambda / crate::numeric::cos_pi(self.alpha)
    }

    /// `1/pi` limit handling for the `alpha -> -1/2` log branch is delegated
    /// to the kernel evaluators; this accessor exists for diagnostics.
    pub fn nu(&self) -> Complex64 {
        self.alpha + 0.5
    }

    /// `(2 alpha + 1) / (2 cos(pi alpha))`, continuous through `alpha = -1/2`.
    pub fn diagonal_r1(&self) -> Complex64 {
        z_over_sin_pi(self.nu())
    }
}
