use super::gamma::gamma_real;
use crate::error::{Error, Result};

/// Jacobi polynomial P_n^{(a,b)} written in the variable z = (1 - x)/2.
///
/// Going through z lets callers near x = -1 or x = 1 pass an argument that
/// has not lost its low-order digits.
pub fn jacobi_p_z(n: usize, a: f64, b: f64, z: f64) -> f64 {
    // (a+1)_n / n! * 2F1(-n, n+a+b+1; a+1; z), summed as a terminating series
    let mut lead = 1.0;
    for k in 0..n {
        lead *= (a + 1.0 + k as f64) / (k as f64 + 1.0);
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let s = n as f64 + a + b + 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - n as f64) * (s + kf) / ((a + 1.0 + kf) * (kf + 1.0)) * z;
        sum += term;
    }
    lead * sum
}

/// Jacobi polynomial P_n^{(a,b)}(x) for a, b > -1.
pub fn jacobi_p(n: usize, a: f64, b: f64, x: f64) -> Result<f64> {
    if a <= -1.0 || b <= -1.0 {
        return Err(Error::Domain(format!("Jacobi parameters ({a}, {b}) must exceed -1")));
    }
    Ok(jacobi_p_z(n, a, b, 0.5 * (1.0 - x)))
}

/// Legendre polynomial P_n(x).
pub fn legendre_p(n: usize, x: f64) -> f64 {
    jacobi_p_z(n, 0.0, 0.0, 0.5 * (1.0 - x))
}

/// Integral of (1-x)^a (1+x)^b P_n^{(a,b)}(x)^2 over [-1, 1].
pub fn jacobi_norm(n: usize, a: f64, b: f64) -> Result<f64> {
    if a <= -1.0 || b <= -1.0 {
        return Err(Error::Domain(format!("Jacobi parameters ({a}, {b}) must exceed -1")));
    }
    let nf = n as f64;
    let numer = 2f64.powf(a + b + 1.0) * gamma_real(a + nf + 1.0)? * gamma_real(b + nf + 1.0)?;
    // (a+b+1+2n) Gamma(a+b+n+1) collapses to Gamma(a+b+2) at n = 0, which
    // keeps a + b = -1 finite.
    let denom = if n == 0 {
        gamma_real(a + b + 2.0)?
    } else {
        (a + b + 1.0 + 2.0 * nf) * gamma_real(a + b + nf + 1.0)?
    };
    Ok(numer / (super::gamma::factorial(n) * denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_low_orders() {
        let x = 0.37;
        assert!((legendre_p(2, x) - 0.5 * (3.0 * x * x - 1.0)).abs() < 1e-15);
        assert!((legendre_p(3, x) - 0.5 * (5.0 * x.powi(3) - 3.0 * x)).abs() < 1e-15);
        assert_eq!(legendre_p(0, x), 1.0);
    }

    #[test]
    fn endpoint_value_and_symmetry() {
        // P_n^{(a,b)}(1) = (a+1)_n / n!, and P_n^{(a,b)}(-x) = (-1)^n P_n^{(b,a)}(x)
        let (a, b) = (0.3, -0.4);
        let p = jacobi_p(3, a, b, 1.0).unwrap();
        let expect = (a + 1.0) * (a + 2.0) * (a + 3.0) / 6.0;
        assert!((p - expect).abs() < 1e-14);
        let x = 0.61;
        let lhs = jacobi_p(3, a, b, -x).unwrap();
        let rhs = -jacobi_p(3, b, a, x).unwrap();
        assert!((lhs - rhs).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(jacobi_p(1, -1.0, 0.0, 0.2).is_err());
        assert!(jacobi_norm(1, 0.0, -1.5).is_err());
    }

    #[test]
    fn norm_at_degenerate_sum() {
        // a + b = -1, n = 0: integral of (1-x)^a (1+x)^(-1-a)
        let a: f64 = -0.3;
        let expect = std::f64::consts::PI / (std::f64::consts::PI * (a + 1.0)).sin();
        assert!((jacobi_norm(0, a, -1.0 - a).unwrap() - expect).abs() < 1e-12);
    }
}
