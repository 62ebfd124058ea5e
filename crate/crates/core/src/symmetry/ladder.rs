//! Action of `L+-` on the mode families.
//!
//! On `phi = Psi e^{-i omega t}` the ladder operators act as
//! `-+i L+- phi = e^{-i(omega +- 1) t} delta+- Psi` with
//! `delta+- Psi = cos rho Psi' -+ omega sin rho Psi`.

use super::Direction;
use crate::error::{Error, Result};
use crate::modes::{interior_points, Family, ModeFunction};
use crate::params::FieldParams;
use serde::{Deserialize, Serialize};

/// `k_n = sqrt((lambda + n + 1/2)(n + 3/2 - lambda))` for the mixed families
/// and `q_n = sqrt((n + 1)(2 - 2 lambda + n))` for the Neumann family.
pub fn ladder_coefficients(params: &FieldParams, family: Family, n: usize) -> Result<f64> {
    let l = params.lambda();
    let nf = n as f64;
    let sq = match family {
        Family::III | Family::IV => (l + nf + 0.5) * (nf + 1.5 - l),
        Family::II => (nf + 1.0) * (2.0 - 2.0 * l + nf),
        _ => return Err(Error::Domain(format!("no ladder coefficient table for family {family:?}"))),
    };
    ModeFunction::new(family, params, n)?;
    if sq < 0.0 {
        return Err(Error::Domain(format!(
            "q_{n} is imaginary at lambda = {l}; the n = 0 Neumann mode couples through anomalous_coupling"
        )));
    }
    Ok(sq.sqrt())
}

/// Coefficient linking the lowest modes to negative frequencies:
/// `delta_- Psi_0 = (1/2 - lambda) Psi_0` for III (the negative for IV), and
/// `sqrt(2(lambda - 1))` between `Psi_1` and `Psi_0` for the Neumann family
/// at `1 < lambda < 3/2`.
pub fn anomalous_coupling(params: &FieldParams, family: Family) -> Result<f64> {
    let l = params.lambda();
    ModeFunction::new(family, params, 0)?;
    match family {
        Family::III => Ok(0.5 - l),
        Family::IV => Ok(l - 0.5),
        Family::II if l > 1.0 => Ok((2.0 * (l - 1.0)).sqrt()),
        _ => Err(Error::Domain(format!(
            "family {family:?} at lambda = {l} has no coupling to negative frequencies"
        ))),
    }
}

/// What `delta+-` maps a mode to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum LadderTarget {
    /// Annihilated.
    Zero,
    /// `coefficient * Psi_m`; `conjugate` marks a negative-frequency image
    /// `conj(phi_m)`.
    Mode { n: usize, coefficient: f64, conjugate: bool },
    /// A constant function (the zero mode at `lambda = 1`).
    Constant { value: f64 },
}

fn lowest_weight(family: Family, params: &FieldParams) -> f64 {
    let l = params.lambda();
    match family {
        Family::I => l,
        Family::II => 1.0 - l,
        _ => 0.5,
    }
}

/// `c_n` with `delta_- Psi_n = c_n Psi_{n-1}` between positive-frequency
/// modes, for `n >= 1` (or `n >= 2` where `n = 1` is special).
fn lowering(family: Family, params: &FieldParams, n: usize) -> Result<f64> {
    let nf = n as f64;
    Ok(match family {
        Family::I | Family::V => (nf * (nf + 2.0 * lowest_weight(family, params) - 1.0)).sqrt(),
        Family::II => ladder_coefficients(params, family, n - 1)?,
        Family::III => ladder_coefficients(params, family, n - 1)?,
        Family::IV => -ladder_coefficients(params, family, n - 1)?,
        // the trigonometric normalisation alternates in sign against the
        // Jacobi one
        Family::Lambda1Dirichlet => (nf * (nf - 1.0)).sqrt() * if n % 2 == 0 { 1.0 } else { -1.0 },
        Family::Lambda1Neumann => (nf * (nf - 1.0)).sqrt() * if n % 2 == 0 { -1.0 } else { 1.0 },
    })
}

/// Image of `Psi_n` under `delta_-` or `delta_+`.
pub fn ladder_target(params: &FieldParams, family: Family, n: usize, dir: Direction) -> Result<LadderTarget> {
    ModeFunction::new(family, params, n)?;
    let l = params.lambda();
    let neumann_above_one = family == Family::II && l > 1.0;
    let first = matches!(family, Family::Lambda1Dirichlet | Family::Lambda1Neumann) as usize;
    Ok(match dir {
        Direction::Minus => match (family, n) {
            (Family::III | Family::IV, 0) => {
                LadderTarget::Mode { n: 0, coefficient: anomalous_coupling(params, family)?, conjugate: true }
            }
            (Family::II, 0) if neumann_above_one => {
                LadderTarget::Mode { n: 1, coefficient: anomalous_coupling(params, family)?, conjugate: true }
            }
            (Family::II, 1) if neumann_above_one => {
                LadderTarget::Mode { n: 0, coefficient: anomalous_coupling(params, family)?, conjugate: true }
            }
            (Family::Lambda1Neumann, 1) => LadderTarget::Constant { value: 1.0 / std::f64::consts::PI.sqrt() },
            (_, m) if m == first => LadderTarget::Zero,
            _ => LadderTarget::Mode { n: n - 1, coefficient: lowering(family, params, n)?, conjugate: false },
        },
        Direction::Plus => {
            if neumann_above_one && n == 0 {
                LadderTarget::Zero
            } else {
                LadderTarget::Mode { n: n + 1, coefficient: -lowering(family, params, n + 1)?, conjugate: false }
            }
        }
    })
}

/// `delta+- Psi` at `rho` for the mode, with the derivative taken by an
/// eighth-order central difference.
pub fn apply_delta(mode: &ModeFunction, dir: Direction, rho: f64) -> f64 {
    const H: f64 = 1e-3;
    const W: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
    let mut d = 0.0;
    for (k, w) in W.iter().enumerate() {
        let dx = (k + 1) as f64 * H;
        d += w * (mode.profile(rho + dx) - mode.profile(rho - dx));
    }
    d /= H;
    let s = match dir {
        Direction::Plus => -1.0,
        Direction::Minus => 1.0,
    };
    rho.cos() * d + s * mode.omega * rho.sin() * mode.profile(rho)
}

/// Largest pointwise deviation between `delta+- Psi_n` and its predicted
/// image over an interior grid, taken over both directions. A mismatch in
/// the frequency of the image (which must be `omega_n -+ 1`, or minus a
/// mode frequency for a negative-frequency image) is added to the result.
pub fn verify_ladder_numerically(params: &FieldParams, family: Family, n: usize) -> Result<f64> {
    let mode = ModeFunction::new(family, params, n)?;
    let pts = interior_points(61, 0.05);
    let mut worst: f64 = 0.0;
    for dir in [Direction::Minus, Direction::Plus] {
        let shift = if dir == Direction::Minus { -1.0 } else { 1.0 };
        let target = ladder_target(params, family, n, dir)?;
        let (coef, other) = match target {
            LadderTarget::Zero => (0.0, None),
            LadderTarget::Constant { value } => {
                worst = worst.max((mode.omega + shift).abs());
                for &x in &pts {
                    worst = worst.max((apply_delta(&mode, dir, x) - value).abs());
                }
                continue;
            }
            LadderTarget::Mode { n: m, coefficient, conjugate } => {
                let other = ModeFunction::new(family, params, m)?;
                let w = if conjugate { -other.omega } else { other.omega };
                worst = worst.max((mode.omega + shift - w).abs());
                (coefficient, Some(other))
            }
        };
        for &x in &pts {
            let want = other.map_or(0.0, |o| coef * o.profile(x));
            worst = worst.max((apply_delta(&mode, dir, x) - want).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_values() {
        let p = FieldParams::new(0.75).unwrap();
        assert!((ladder_coefficients(&p, Family::III, 0).unwrap() - 0.9375f64.sqrt()).abs() < 1e-15);
        assert!((anomalous_coupling(&p, Family::III).unwrap().abs() - 0.25).abs() < 1e-15);
        let p = FieldParams::new(1.25).unwrap();
        assert!((ladder_coefficients(&p, Family::II, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!(ladder_coefficients(&p, Family::I, 1).is_err());
    }

    #[test]
    fn mixed_lowering_at_n_two() {
        let p = FieldParams::new(0.75).unwrap();
        assert!(verify_ladder_numerically(&p, Family::III, 2).unwrap() < 1e-7);
    }
}
