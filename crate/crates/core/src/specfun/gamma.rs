//! Gamma, reciprocal gamma and digamma for complex arguments.
//!
//! Gamma uses the g = 7, n = 9 Lanczos fit with reflection below Re z = 1/2.
//! The reciprocal gamma is kept separate because the connection
//! coefficients are products of reciprocal gammas and must vanish exactly at
//! the poles of gamma.

use crate::error::{Error, Result};
use crate::C64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

/// `true` when `z` is exactly 0, -1, -2, ...
pub fn is_nonpositive_integer(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// sin(pi z), with the real part reduced first so integers give exact zeros.
pub fn sinpi(z: C64) -> C64 {
    let n = z.re.round();
    let r = z.re - n;
    let sign = if (n as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let (s, c) = (PI * r).sin_cos();
    let y = PI * z.im;
    C64::new(s * y.cosh(), c * y.sinh()) * sign
}

/// cos(pi z), reduced like [`sinpi`].
pub fn cospi(z: C64) -> C64 {
    let n = z.re.round();
    let r = z.re - n;
    let sign = if (n as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let (s, c) = (PI * r).sin_cos();
    let y = PI * z.im;
    C64::new(c * y.cosh(), -s * y.sinh()) * sign
}

fn lanczos_sum(zm1: C64) -> C64 {
    let mut x = C64::new(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        x += p / (zm1 + i as f64);
    }
    x
}

/// log Gamma(z) for Re z >= 1/2 (principal branch of each factor; only
/// meaningful after exponentiation).
fn ln_gamma_right(z: C64) -> C64 {
    let zm1 = z - 1.0;
    let t = zm1 + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (zm1 + 0.5) * t.ln() - t + lanczos_sum(zm1).ln()
}

fn gamma_right(z: C64) -> C64 {
    if z.im == 0.0 {
        return C64::new(gamma_right_real(z.re), 0.0);
    }
    ln_gamma_right(z).exp()
}

fn gamma_right_real(x: f64) -> f64 {
    let xm1 = x - 1.0;
    let mut s = LANCZOS[0];
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        s += p / (xm1 + i as f64);
    }
    let t = xm1 + LANCZOS_G + 0.5;
    // split the power so large arguments do not overflow before exp(-t)
    let half = t.powf(0.5 * (xm1 + 0.5));
    (2.0 * PI).sqrt() * half * ((-t).exp() * half) * s
}

/// Gamma function without the pole check (returns inf/NaN at poles).
pub fn gamma_unchecked(z: C64) -> C64 {
    if z.re < 0.5 {
        C64::new(PI, 0.0) / (sinpi(z) * gamma_right(1.0 - z))
    } else {
        gamma_right(z)
    }
}

/// Gamma function. Errors at the poles z = 0, -1, -2, ...
pub fn gamma(z: C64) -> Result<C64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("gamma at {}", z.re)));
    }
    Ok(gamma_unchecked(z))
}

/// Real gamma function. Errors at the poles.
pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma(C64::new(x, 0.0))?.re)
}

/// 1/Gamma(z). Entire; exactly zero at non-positive integers.
pub fn rgamma(z: C64) -> C64 {
    if is_nonpositive_integer(z) {
        return C64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        sinpi(z) * gamma_right(1.0 - z) / PI
    } else {
        1.0 / gamma_right(z)
    }
}

/// Derivative of 1/Gamma, equal to -psi(z)/Gamma(z) away from the poles and
/// (-1)^m m! at z = -m.
pub fn rgamma_deriv(z: C64) -> C64 {
    if z.re < 0.5 {
        let w = 1.0 - z;
        let g = gamma_right(w);
        -(g / PI) * (digamma_right(w) * sinpi(z) - PI * cospi(z))
    } else {
        -digamma_right(z) * rgamma(z)
    }
}

/// `R(a) * psi(a + n)` written so that it stays finite when `a + n` sits on a
/// pole of psi: it equals `-(a)_n R'(a + n)`.
pub fn rgamma_times_digamma(a: C64, n: usize) -> C64 {
    -pochhammer(a, n) * rgamma_deriv(a + n as f64)
}

// Bernoulli numbers B_{2k} / (2k) for the asymptotic digamma series.
const DIGAMMA_ASYMPTOTIC: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

fn digamma_right(z: C64) -> C64 {
    let mut z = z;
    let mut acc = C64::new(0.0, 0.0);
    while z.norm() < 12.0 {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let zi2 = 1.0 / (z * z);
    let mut p = zi2;
    let mut series = C64::new(0.0, 0.0);
    for &c in DIGAMMA_ASYMPTOTIC.iter() {
        series += c * p;
        p *= zi2;
    }
    acc + z.ln() - 0.5 / z - series
}

/// Digamma without the pole check.
pub fn digamma_unchecked(z: C64) -> C64 {
    if z.re < 0.5 {
        let w = 1.0 - z;
        digamma_right(w) - PI * cospi(z) / sinpi(z)
    } else {
        digamma_right(z)
    }
}

/// Complex digamma. Errors at the poles.
pub fn digamma_c(z: C64) -> Result<C64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("digamma at {}", z.re)));
    }
    Ok(digamma_unchecked(z))
}

/// Real digamma. Errors at the poles.
pub fn digamma(x: f64) -> Result<f64> {
    Ok(digamma_c(C64::new(x, 0.0))?.re)
}

/// Rising factorial (a)_n.
pub fn pochhammer(a: C64, n: usize) -> C64 {
    let mut p = C64::new(1.0, 0.0);
    for k in 0..n {
        p *= a + k as f64;
    }
    p
}

/// n! as a float.
pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn integer_and_half_integer_values() {
        assert!((gamma_real(5.0).unwrap() - 24.0).abs() < 1e-12);
        assert!((gamma_real(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
        assert!((gamma_real(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!(gamma_real(-2.0).is_err());
    }

    #[test]
    fn reciprocal_gamma_vanishes_at_poles() {
        for m in 0..6 {
            assert_eq!(rgamma(c(-(m as f64))).norm(), 0.0);
            let expect = if m % 2 == 0 { factorial(m) } else { -factorial(m) };
            assert!((rgamma_deriv(c(-(m as f64))).re - expect).abs() < 1e-12 * expect.abs().max(1.0));
        }
    }

    #[test]
    fn rgamma_deriv_matches_difference_quotient() {
        for &z in &[c(0.3), c(-1.7), c(2.4), C64::new(0.2, 0.7), C64::new(-2.01, 0.0)] {
            let h = 1e-5;
            let fd = (rgamma(z + h) - rgamma(z - h)) / (2.0 * h);
            assert!((fd - rgamma_deriv(z)).norm() < 1e-8 * (1.0 + fd.norm()), "{z}");
        }
    }

    #[test]
    fn digamma_recurrence_and_reflection() {
        let euler = 0.577_215_664_901_532_9;
        assert!((digamma(1.0).unwrap() + euler).abs() < 1e-14);
        for &z in &[C64::new(0.3, 0.4), C64::new(-3.2, 1.1), C64::new(7.5, -2.0)] {
            let lhs = digamma_c(z + 1.0).unwrap() - digamma_c(z).unwrap();
            assert!((lhs - 1.0 / z).norm() < 1e-13);
        }
    }

    #[test]
    fn gamma_reflection_identity() {
        for &z in &[C64::new(0.3, 0.4), C64::new(0.25, -1.5), c(0.7)] {
            let lhs = gamma_unchecked(z) * gamma_unchecked(1.0 - z) * sinpi(z);
            assert!((lhs - PI).norm() < 1e-12);
        }
    }
}
