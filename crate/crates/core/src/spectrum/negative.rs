//! Negative eigenvalues at `lambda = 1` under `Psi(+-pi/2) = +-alpha Psi'(+-pi/2)`.
//!
//! Even modes `cosh(nu rho)` need `coth(nu pi/2) = alpha nu`, which always
//! has one root. Odd modes `sinh(nu rho)` need `tanh(nu pi/2) = alpha nu`,
//! which has a root only for `alpha < pi/2`.

use crate::error::{Error, Result};
use crate::specfun::roots::bisect;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NegativeMode {
    pub parity: Parity,
    pub nu: f64,
    pub omega_sq: f64,
    /// `|lhs - rhs|` of the defining transcendental equation at `nu`.
    pub residual: f64,
}

pub fn negative_modes_robin(alpha: f64) -> Result<Vec<NegativeMode>> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha = {alpha} must be positive")));
    }
    let mut out = Vec::new();
    // alpha nu tanh(nu pi/2) - 1 rises monotonically from -1
    let even = |nu: f64| alpha * nu * (FRAC_PI_2 * nu).tanh() - 1.0;
    let mut hi = 1.0 / alpha + 1.0;
    while even(hi) <= 0.0 {
        hi *= 2.0;
    }
    let nu = bisect(even, 0.0, hi, 1e-15 * hi)?;
    out.push(NegativeMode {
        parity: Parity::Even,
        nu,
        omega_sq: -nu * nu,
        residual: (1.0 / (FRAC_PI_2 * nu).tanh() - alpha * nu).abs(),
    });
    if alpha < FRAC_PI_2 {
        // tanh(nu pi/2)/nu falls monotonically from pi/2 to 0
        let odd = |nu: f64| (FRAC_PI_2 * nu).tanh() / nu - alpha;
        let mut hi = 1.0 / alpha + 1.0;
        while odd(hi) >= 0.0 {
            hi *= 2.0;
        }
        let nu = bisect(odd, 1e-300, hi, 1e-15 * hi)?;
        out.push(NegativeMode {
            parity: Parity::Odd,
            nu,
            omega_sq: -nu * nu,
            residual: ((FRAC_PI_2 * nu).tanh() - alpha * nu).abs(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_follow_the_odd_threshold() {
        for &(alpha, count) in &[(0.1, 2), (1.0, 2), (1.5, 2), (1.6, 1), (2.0, 1), (5.0, 1)] {
            let m = negative_modes_robin(alpha).unwrap();
            assert_eq!(m.len(), count, "alpha = {alpha}");
            assert!(m.iter().all(|x| x.residual < 1e-10));
        }
        assert!(negative_modes_robin(0.0).is_err());
    }
}
