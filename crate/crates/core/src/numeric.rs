//! Stable scalar building blocks shared by the kernel and solver paths.
//!
//! Everything here exists to evaluate expressions of the shape
//! `(t^a - t^b) / (1 - t^2)` and `sin(pi z)` without losing digits at the
//! removable point `t = 1` or near the zeros of the trigonometric factors.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Switch to the Taylor form of the power quotients when `|t - 1|` is below this.
const DIAG_TAYLOR_WIDTH: f64 = 1e-5;

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `t^e` for real `t > 0` and complex exponent, via the real logarithm.
#[inline]
pub fn pow_c(t: f64, e: Complex64) -> Complex64 {
    (e * t.ln()).exp()
}

/// `exp(z) - 1` without cancellation for small `z`.
pub fn expm1_c(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    let half = (0.5 * y).sin();
    Complex64::new(x.exp_m1() * y.cos() - 2.0 * half * half, x.exp() * y.sin())
}

/// `sinh(z)/z`, continuous through `z = 0`.
pub fn sinhc(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        Complex64::new(1.0, 0.0) + z2 / 6.0 * (Complex64::new(1.0, 0.0) + z2 / 20.0)
    } else {
        z.sinh() / z
    }
}

/// `sin(pi z)` with argument reduction, so relative accuracy survives near
/// integer `z` where the naive `(PI * z).sin()` only has absolute accuracy.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = Complex64::new(z.re - n, z.im);
    let s = (PI * r).sin();
    if (n as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

/// `cos(pi z) = sin(pi (z + 1/2))`, same reduction benefits.
pub fn cos_pi(z: Complex64) -> Complex64 {
    sin_pi(z + 0.5)
}

/// `z / sin(pi z)`, continuous through `z = 0` (value `1/pi`).
pub fn z_over_sin_pi(z: Complex64) -> Complex64 {
    if z.norm() < 1e-6 {
        let pz = PI * z;
        (Complex64::new(1.0, 0.0) + pz * pz / 6.0) / PI
    } else {
        z / sin_pi(z)
    }
}

/// `(t^a - t^b) / (1 - t^2)` for real `t > 0`, stable through the removable
/// singularity at `t = 1` and usable over the full double range.
///
/// Inside `|t - 1| < 1e-5` a three-term Taylor expansion in `w = t - 1` is
/// used (limit value `-(a-b)/2` at `t = 1`). Away from the diagonal the
/// difference of powers is written as `expm1` of a non-positive-real-part
/// argument times the dominant power, which avoids both cancellation and
/// spurious intermediate overflow; `t > 1` is folded back with the exact
/// reflection `q(t; a, b) = -q(1/t; 2-a, 2-b)`.
pub fn power_quotient(t: f64, a: Complex64, b: Complex64) -> Complex64 {
    debug_assert!(t > 0.0);
    let w = t - 1.0;
    if w.abs() < DIAG_TAYLOR_WIDTH {
        let s = a + b;
        let q = a * a + a * b + b * b - 3.0 * s + 2.0;
        let c1 = (s - 2.0) / 2.0;
        let c2 = q / 6.0 - (s - 2.0) / 4.0;
        return -((a - b) / 2.0) * (Complex64::new(1.0, 0.0) + c1 * w + c2 * (w * w));
    }
    if t > 1.0 {
        -power_quotient_below_one(1.0 / t, 2.0 - a, 2.0 - b)
    } else {
        power_quotient_below_one(t, a, b)
    }
}

/// `ln t`, through `ln_1p` near 1 where the direct logarithm loses digits.
#[inline]
pub(crate) fn accurate_ln(t: f64) -> f64 {
    let w = t - 1.0;
    if w.abs() <= 0.5 {
        w.ln_1p()
    } else {
        t.ln()
    }
}

/// Core of `power_quotient` for `t < 1`: pivot on the exponent with smaller
/// real part so the `expm1` argument has non-positive real part.
fn power_quotient_below_one(t: f64, a: Complex64, b: Complex64) -> Complex64 {
    let w = t - 1.0;
    let ln_t = accurate_ln(t);
    let denom = w * (2.0 + w); // -(1 - t^2)
    if a.re <= b.re {
        pow_c(t, a) * expm1_c((b - a) * ln_t) / denom
    } else {
        -pow_c(t, b) * expm1_c((a - b) * ln_t) / denom
    }
}

/// `ln(t) / (1 - t^2)` for real `t > 0`, stable through `t = 1` (limit `-1/2`).
pub fn log_quotient(t: f64) -> f64 {
    let w = t - 1.0;
    if w.abs() < DIAG_TAYLOR_WIDTH {
        -0.5 * (1.0 - w + (5.0 / 6.0) * w * w)
    } else if t > 1e150 {
        // 1 - t^2 would overflow; the quotient itself underflows smoothly
        -accurate_ln(t) / t / t
    } else {
        accurate_ln(t) / (-w * (t + 1.0))
    }
}

/// Parse a complex number given as `re` or `re,im`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let mut parts = text.split(',');
    let re = parts
        .next()
        .ok_or_else(|| "empty complex literal".to_string())?
        .trim();
    let re: f64 = re
        .parse()
        .map_err(|_| format!("invalid real part `{re}`"))?;
    match parts.next() {
        None => Ok(Complex64::new(re, 0.0)),
        Some(im) => {
            let im = im.trim();
            let im: f64 = im
                .parse()
                .map_err(|_| format!("invalid imaginary part `{im}`"))?;
            if parts.next().is_some() {
                return Err(format!("too many components in `{text}`"));
            }
            Ok(Complex64::new(re, im))
        }
    }
}

/// Format a float with 17 significant digits (round-trip exact for f64).
pub fn fmt_g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// `n` log-spaced points over `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (l0, l1) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_quotient_limit_matches_taylor() {
        // q(1; a, b) = -(a-b)/2
        let a = c64(-0.3, 0.1);
        let b = c64(0.7, -0.2);
        let at_one = power_quotient(1.0, a, b);
        let expect = -(a - b) / 2.0;
        assert!((at_one - expect).norm() < 1e-15);
        // branch consistency across the Taylor switch
        for &w in &[1.2e-5, 0.9e-5] {
            let q = power_quotient(1.0 + w, a, b);
            let q_naive = (pow_c(1.0 + w, a) - pow_c(1.0 + w, b)) / (1.0 - (1.0 + w) * (1.0 + w));
            assert!((q - q_naive).norm() / q_naive.norm() < 1e-9);
        }
    }

    #[test]
    fn power_quotient_simple_case() {
        // a = 0, b = 1 collapses to 1/(1+t)
        for &t in &[0.3, 0.999999, 1.0, 1.000001, 7.0] {
            let q = power_quotient(t, c64(0.0, 0.0), c64(1.0, 0.0));
            assert!((q.re - 1.0 / (1.0 + t)).abs() < 1e-14, "t={t}");
            assert!(q.im.abs() < 1e-16);
        }
    }

    #[test]
    fn log_quotient_limit() {
        assert!((log_quotient(1.0) + 0.5).abs() < 1e-15);
        let t = 1.0 + 2e-5;
        assert!((log_quotient(t) - t.ln() / (1.0 - t * t)).abs() < 1e-12);
    }

    #[test]
    fn sin_pi_reduction_accuracy() {
        // relative accuracy near a zero of sin (offset chosen representable)
        let x = 2f64.powi(-40);
        let s = sin_pi(c64(1.0 + x, 0.0));
        let expect = -(PI * x).sin();
        assert!((s.re - expect).abs() <= 1e-15 * expect.abs());
        // plain values
        assert!((sin_pi(c64(0.5, 0.0)).re - 1.0).abs() < 1e-15);
        assert!((cos_pi(c64(0.5, 0.0)).re).abs() < 1e-16);
    }

    #[test]
    fn expm1_c_small_argument() {
        let z = c64(1e-9, -2e-9);
        let e = expm1_c(z);
        let expect = z + z * z / 2.0;
        assert!((e - expect).norm() < 1e-20);
    }

    #[test]
    fn parse_complex_forms() {
        assert_eq!(parse_complex("0.25").unwrap(), c64(0.25, 0.0));
        assert_eq!(parse_complex("0,-0.3183").unwrap(), c64(0.0, -0.3183));
        assert!(parse_complex("a").is_err());
        assert!(parse_complex("1,2,3").is_err());
    }
}
