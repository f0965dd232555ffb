//! Cross-validation between independent evaluation routes: the displayed
//! solution forms against the kernel composition, the pointwise resolvent
//! identity, the convolution form of the equation, and transform identities
//! with closed-form oracles.

use num_complex::Complex64;
use std::f64::consts::PI;
use stieltjes_core::analysis::{mellin, mellin_convolve};
use stieltjes_core::function::{parse_gspec, HalfLineFunction};
use stieltjes_core::kernels::{resolvent_point, BlendFunction, KernelSpec};
use stieltjes_core::numeric::log_grid;
use stieltjes_core::quadrature::{apply_stieltjes, integrate_halfline, QuadConfig};
use stieltjes_core::solver::{apply_resolvent, solve_e};
use stieltjes_core::spectral::SpectralParam;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Lanczos approximation of the Gamma function (g = 7, n = 9), used as an
/// independent oracle for Mellin values of exp(-x).
fn gamma_lanczos(z: Complex64) -> Complex64 {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if z.re < 0.5 {
        // reflection
        let pi = Complex64::new(PI, 0.0);
        return pi / ((PI * z).sin() * gamma_lanczos(Complex64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(COEF[0], 0.0);
    for (i, &coef) in COEF.iter().enumerate().skip(1) {
        x += coef / (z + i as f64);
    }
    let t = z + G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

#[test]
fn lanczos_gamma_matches_statrs_on_real_axis() {
    for &x in &[0.3, 0.5, 0.999, 1.5, 4.2] {
        let mine = gamma_lanczos(c(x, 0.0));
        let reference = statrs::function::gamma::gamma(x);
        assert!(
            (mine.re - reference).abs() < 1e-10 * reference.abs(),
            "x={x}: {} vs {reference}",
            mine.re
        );
        assert!(mine.im.abs() < 1e-10);
    }
}

#[test]
fn mellin_of_exp_is_gamma_on_the_critical_line() {
    let cfg = QuadConfig::default();
    for &im in &[-0.6, 0.0, 0.45] {
        let s = c(0.5, im);
        let got = mellin(|x| c((-x).exp(), 0.0), s, &cfg).unwrap();
        let expect = gamma_lanczos(s);
        assert!(
            (got.value - expect).norm() <= 1e-8 * expect.norm(),
            "s={s}: {} vs {expect}",
            got.value
        );
    }
}

#[test]
fn convolution_with_h_is_the_stieltjes_transform() {
    // (f*h)(x) = (Sf)(x): the equation's convolution form
    let cfg = QuadConfig::default();
    let f = |y: f64| c((-y).exp(), 0.0);
    let h = HalfLineFunction::h();
    let conv = mellin_convolve(f, |y| h.eval(y), 1.0, &cfg).unwrap();
    let stieltjes = apply_stieltjes(f, 1.0, &cfg).unwrap();
    assert!(
        (conv.value - stieltjes.value).norm() <= 1e-9 * stieltjes.value.norm(),
        "{} vs {}",
        conv.value,
        stieltjes.value
    );
}

#[test]
fn pointwise_resolvent_identity_for_the_blended_kernel() {
    // R(x, z) = 1/(x+z) + lambda * integral of R(y, z)/(x+y) dy at (1, 2)
    let cfg = QuadConfig::default();
    let param = SpectralParam::from_alpha(c(0.25, 0.0)).unwrap();
    let spec = KernelSpec::r23(BlendFunction::default());
    let (x, z) = (1.0, 2.0);
    let lhs = resolvent_point(&spec, x, z, param.alpha).unwrap();
    let integral = integrate_halfline(
        |y| resolvent_point(&spec, y, z, param.alpha).unwrap() / (x + y),
        Some(z),
        &cfg,
    )
    .unwrap();
    assert!(integral.converged);
    let rhs = 1.0 / (x + z) + param.lambda * integral.value;
    assert!(
        (lhs - rhs).norm() <= 1e-7 * lhs.norm(),
        "lhs {lhs} vs rhs {rhs}"
    );
}

#[test]
fn log_regimes_match_kernel_composition() {
    // the displayed log-branch forms against lambda * (R g) with the
    // profile evaluators, at lambda = -1/pi and +1/pi
    let cfg = QuadConfig::default();
    let g = parse_gspec("expneg").unwrap();
    for &lam in &[-1.0 / PI, 1.0 / PI] {
        let param = SpectralParam::from_lambda(c(lam, 0.0)).unwrap();
        let sol = solve_e(
            g.clone(),
            param,
            BlendFunction::default(),
            c(0.0, 0.0),
            c(0.0, 0.0),
            cfg.clone(),
        )
        .unwrap();
        let spec = if lam < 0.0 {
            KernelSpec::r1()
        } else {
            KernelSpec::r23(BlendFunction::default())
        };
        for &x in &[0.4, 1.0, 3.0] {
            let direct = sol.eval(x);
            assert!(direct.converged, "x={x} lambda={lam}");
            let rg = apply_resolvent(&spec, &g, param.alpha, x, &cfg).unwrap();
            let composed = g.eval(x) + param.lambda * rg.value;
            assert!(
                (direct.value - composed).norm() <= 1e-7 * composed.norm(),
                "lambda={lam} x={x}: {} vs {composed}",
                direct.value
            );
        }
    }
}

#[test]
fn region_profiles_belong_to_their_ek_class() {
    // the kernel-region table is chosen so the selected profile itself is
    // integrable against x^(k-1); probe the three sampled regions
    use stieltjes_core::analysis::norm;
    use stieltjes_core::kernels::{r_profile, Profile};
    use stieltjes_core::SpaceSpec;
    let cfg = QuadConfig::default();
    let cases = [
        (Profile::R1, -0.3, 0.5),
        (Profile::R3, 0.4, 0.2),
        (Profile::R2, 0.4, 0.8),
    ];
    for (profile, alpha_re, k) in cases {
        let alpha = c(alpha_re, 0.0);
        let n = norm(
            |u| r_profile(profile, u, alpha).unwrap(),
            &SpaceSpec::Ek { k },
            &cfg,
        )
        .unwrap_or_else(|e| panic!("{profile:?} alpha={alpha_re} k={k}: {e}"));
        assert!(n.value.is_finite() && n.value > 0.0);
    }
}

#[test]
fn r2_r3_continuous_at_the_log_endpoint() {
    // alpha = 1/2 takes the one-sided log form through the first profile;
    // the diagonal limit must still be approached continuously
    use stieltjes_core::kernels::{r_profile, Profile};
    for profile in [Profile::R2, Profile::R3] {
        let alpha = c(0.5, 0.0);
        let center = r_profile(profile, 1.0, alpha).unwrap();
        let mut last = f64::INFINITY;
        for eps in [1e-2, 1e-4, 1e-6] {
            let d = (r_profile(profile, 1.0 + eps, alpha).unwrap() - center)
                .norm()
                .max((r_profile(profile, 1.0 - eps, alpha).unwrap() - center).norm());
            assert!(d <= last / 50.0 || d < 1e-12, "{profile:?} eps={eps}: {d}");
            last = d;
        }
    }
}

#[test]
fn blend_choice_shifts_by_homogeneous_terms_only() {
    // solutions with different admissible blends differ by an element of
    // span{x^-alpha, x^(alpha-1)}
    let cfg = QuadConfig::default();
    let param = SpectralParam::from_alpha(c(0.3, 0.0)).unwrap();
    let g = parse_gspec("expneg").unwrap();
    let sol_m1 = solve_e(
        g.clone(),
        param,
        BlendFunction::OneOverOnePlusYPowM(1.0),
        c(0.0, 0.0),
        c(0.0, 0.0),
        cfg.clone(),
    )
    .unwrap();
    let sol_m2 = solve_e(
        g,
        param,
        BlendFunction::OneOverOnePlusYPowM(2.0),
        c(0.0, 0.0),
        c(0.0, 0.0),
        cfg,
    )
    .unwrap();
    let grid = log_grid(0.1, 10.0, 10);
    let diff: Vec<Complex64> = grid
        .iter()
        .map(|&x| sol_m1.eval(x).value - sol_m2.eval(x).value)
        .collect();

    // least-squares fit of diff against {x^-0.3, x^-0.7}
    let basis: Vec<(Complex64, Complex64)> = grid
        .iter()
        .map(|&x| (c(x.powf(-0.3), 0.0), c(x.powf(-0.7), 0.0)))
        .collect();
    let (mut s11, mut s12, mut s22) = (c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
    let (mut r1, mut r2) = (c(0.0, 0.0), c(0.0, 0.0));
    for (d, (b1, b2)) in diff.iter().zip(&basis) {
        s11 += b1.conj() * b1;
        s12 += b1.conj() * b2;
        s22 += b2.conj() * b2;
        r1 += b1.conj() * d;
        r2 += b2.conj() * d;
    }
    let det = s11 * s22 - s12 * s12.conj();
    let a = (r1 * s22 - s12 * r2) / det;
    let b = (s11 * r2 - s12.conj() * r1) / det;

    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for (d, (b1, b2)) in diff.iter().zip(&basis) {
        num += (d - a * b1 - b * b2).norm().powi(2);
        den += d.norm().powi(2);
    }
    let rel = (num / den).sqrt();
    assert!(rel <= 1e-4, "fit residual {rel} (a={a}, b={b})");
}
