//! Property tests for the algebraic identities the evaluators must satisfy
//! everywhere, not just at hand-picked points.

use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;
use stieltjes_core::kernels::{r_profile, Profile};
use stieltjes_core::numeric::{pow_c, power_quotient};
use stieltjes_core::spectral::{alpha_from_lambda, lambda_from_alpha};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// The stable power quotient agrees with the naive formula wherever the
    /// naive formula is well-conditioned.
    #[test]
    fn power_quotient_matches_naive(
        t in 0.02f64..50.0,
        a_re in -1.0f64..2.0,
        a_im in -0.5f64..0.5,
        b_re in -1.0f64..2.0,
        b_im in -0.5f64..0.5,
    ) {
        prop_assume!((t - 1.0).abs() > 1e-3);
        let (a, b) = (c(a_re, a_im), c(b_re, b_im));
        let stable = power_quotient(t, a, b);
        let naive = (pow_c(t, a) - pow_c(t, b)) / (1.0 - t * t);
        let scale = naive.norm().max(1e-30);
        prop_assert!(
            (stable - naive).norm() <= 1e-10 * scale,
            "t={t} a={a} b={b}: {stable} vs {naive}"
        );
    }

    /// First-profile symmetry: r1(1/t) = t r1(t) across the strip.
    #[test]
    fn r1_inversion_symmetry(
        t in 1e-3f64..1e3,
        alpha_re in -0.5f64..0.49,
        alpha_im in -0.4f64..0.4,
    ) {
        let alpha = c(alpha_re, alpha_im);
        let direct = r_profile(Profile::R1, 1.0 / t, alpha).unwrap();
        let reflected = t * r_profile(Profile::R1, t, alpha).unwrap();
        prop_assert!(
            (direct - reflected).norm() <= 1e-11 * direct.norm().max(1e-30),
            "t={t} alpha={alpha}"
        );
    }

    /// Spectral round trip: strip containment, sign matching, and
    /// reconstruction of lambda.
    #[test]
    fn spectral_round_trip(
        re in -2.0f64..2.0,
        im in -2.0f64..2.0,
    ) {
        prop_assume!(re.abs() > 1e-6);
        let lambda = c(re, im);
        let p = alpha_from_lambda(lambda).unwrap();
        prop_assert!(p.alpha.re.abs() <= 0.5 + 1e-12);
        prop_assert!(p.alpha.re * re > 0.0);
        let back = lambda_from_alpha(p.alpha).unwrap();
        prop_assert!((back - lambda).norm() <= 1e-10 * lambda.norm());
    }

    /// The transpose relation between the second and first kernels holds for
    /// every admissible argument pair.
    #[test]
    fn r2_transpose_relation(
        t in 1e-3f64..1e3,
        alpha_re in 0.02f64..0.5,
        alpha_im in -0.4f64..0.4,
    ) {
        let alpha = c(alpha_re, alpha_im);
        let r2 = r_profile(Profile::R2, t, alpha).unwrap();
        let r1 = r_profile(Profile::R1, t, -alpha).unwrap();
        prop_assert!(
            (r2 + r1 / t).norm() <= 1e-12 * r2.norm().max(1e-30),
            "t={t} alpha={alpha}"
        );
    }
}

#[test]
fn diagonal_limit_is_the_analytic_value() {
    // spot anchor used by the proptest ranges above
    let alpha = c(-0.3, 0.0);
    let at_one = r_profile(Profile::R1, 1.0, alpha).unwrap();
    let expect = 0.4 / (2.0 * (0.3 * PI).cos());
    assert!((at_one.re - expect).abs() < 1e-14);
}
