//! Normalised positive-frequency modes `phi_n(t, rho) = Psi_n(rho) e^{-i omega_n t}`
//! of the invariant boundary conditions, and the Klein-Gordon product.

use crate::boundary::solution::solution_at;
use crate::error::{Error, Result};
use crate::params::{FieldParams, Regime};
use crate::point::{RhoPoint, Side};
use crate::specfun::gamma::{factorial, gamma_real};
use crate::specfun::jacobi::jacobi_p_z;
use crate::specfun::quad::TanhSinh;
use crate::specfun::SeriesControl;
use crate::C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

/// Mode families. `I`: Dirichlet. `II`: Neumann. `III`: Dirichlet at
/// `+pi/2` and Neumann at `-pi/2`. `IV`: the mirror image of `III`.
/// `V`: Dirichlet at `lambda = 1/2`. The two `Lambda1` families are the
/// trigonometric forms at `lambda = 1`, labelled by `omega = n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    I,
    II,
    III,
    IV,
    V,
    Lambda1Dirichlet,
    Lambda1Neumann,
}

impl Family {
    pub fn from_name(s: &str) -> Result<Family> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "i" | "1" | "dirichlet" => Family::I,
            "ii" | "2" | "neumann" => Family::II,
            "iii" | "3" | "mixed0" => Family::III,
            "iv" | "4" | "mixed90" => Family::IV,
            "v" | "5" => Family::V,
            "lambda1_dirichlet" => Family::Lambda1Dirichlet,
            "lambda1_neumann" => Family::Lambda1Neumann,
            _ => return Err(Error::Config(format!("unknown mode family '{s}'"))),
        })
    }
}

/// A single normalised mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeFunction {
    pub family: Family,
    pub lambda: f64,
    pub n: usize,
    pub omega: f64,
    pub norm: f64,
}

fn check_family(family: Family, params: &FieldParams) -> Result<()> {
    let l = params.lambda();
    let ok = match family {
        Family::I => true,
        Family::II => params.regime() == Regime::Middle && l != 1.0,
        Family::III | Family::IV => params.regime() == Regime::Middle,
        Family::V => params.regime() == Regime::Edge,
        Family::Lambda1Dirichlet | Family::Lambda1Neumann => l == 1.0,
    };
    if ok {
        Ok(())
    } else {
        let hint = if family == Family::II && l == 1.0 { "; use Lambda1Neumann" } else { "" };
        Err(Error::Regime(format!("family {family:?} does not exist at lambda = {l}{hint}")))
    }
}

/// The frequency of mode `n`.
pub fn family_omega(family: Family, params: &FieldParams, n: usize) -> Result<f64> {
    check_family(family, params)?;
    let l = params.lambda();
    let nf = n as f64;
    Ok(match family {
        Family::I => l + nf,
        Family::II if n == 0 => (1.0 - l).abs(),
        Family::II => 1.0 - l + nf,
        Family::III | Family::IV | Family::V => nf + 0.5,
        Family::Lambda1Dirichlet | Family::Lambda1Neumann => {
            if n == 0 {
                return Err(Error::Domain("the lambda = 1 families start at n = 1".into()));
            }
            nf
        }
    })
}

/// Closed-form normalisation constant, such that the Klein-Gordon norm is 1.
pub fn normalization_constant(family: Family, params: &FieldParams, n: usize) -> Result<f64> {
    check_family(family, params)?;
    let l = params.lambda();
    let nf = n as f64;
    Ok(match family {
        Family::I => (factorial(n) * gamma_real(2.0 * l + nf)?).sqrt() / (2f64.powf(l) * gamma_real(l + nf + 0.5)?),
        Family::II => {
            (factorial(n) * gamma_real(2.0 - 2.0 * l + nf)?.abs()).sqrt()
                / (2f64.powf(1.0 - l) * gamma_real(1.5 - l + nf)?)
        }
        Family::III | Family::IV => {
            factorial(n) / (2.0 * gamma_real(l + nf + 0.5)? * gamma_real(1.5 - l + nf)?).sqrt()
        }
        Family::V => std::f64::consts::FRAC_1_SQRT_2,
        Family::Lambda1Dirichlet | Family::Lambda1Neumann => {
            if n == 0 {
                return Err(Error::Domain("the lambda = 1 families start at n = 1".into()));
            }
            1.0 / (PI * nf).sqrt()
        }
    })
}

impl ModeFunction {
    pub fn new(family: Family, params: &FieldParams, n: usize) -> Result<Self> {
        Ok(ModeFunction {
            family,
            lambda: params.lambda(),
            n,
            omega: family_omega(family, params, n)?,
            norm: normalization_constant(family, params, n)?,
        })
    }

    /// The first `count` modes of a family.
    pub fn first(family: Family, params: &FieldParams, count: usize) -> Result<Vec<Self>> {
        let start = matches!(family, Family::Lambda1Dirichlet | Family::Lambda1Neumann) as usize;
        (start..start + count).map(|n| Self::new(family, params, n)).collect()
    }

    /// `Psi_n` at a point.
    pub fn profile_at(&self, pt: &RhoPoint) -> f64 {
        let l = self.lambda;
        let n = self.n;
        // z = (1 - sin rho)/2 and its mirror, both without cancellation
        let z = 0.5 * pt.one_minus_sin;
        let zm = 0.5 * pt.one_plus_sin;
        let shape = match self.family {
            Family::I => pt.cos.powf(l) * jacobi_p_z(n, l - 0.5, l - 0.5, z),
            Family::II => pt.cos.powf(1.0 - l) * jacobi_p_z(n, 0.5 - l, 0.5 - l, z),
            // cos^l (1 + sin)^(1/2 - l) rewritten with 1 + sin = cos^2 / (1 - sin),
            // which stays finite where 1 + sin underflows
            Family::III => pt.cos.powf(1.0 - l) * pt.one_minus_sin.powf(l - 0.5) * jacobi_p_z(n, l - 0.5, 0.5 - l, z),
            // mirror image of III: rho -> -rho swaps the roles of 1 -+ sin
            Family::IV => pt.cos.powf(1.0 - l) * pt.one_plus_sin.powf(l - 0.5) * jacobi_p_z(n, l - 0.5, 0.5 - l, zm),
            Family::V => pt.cos.sqrt() * jacobi_p_z(n, 0.0, 0.0, z),
            Family::Lambda1Dirichlet => {
                if n % 2 == 1 {
                    (n as f64 * pt.rho).cos()
                } else {
                    (n as f64 * pt.rho).sin()
                }
            }
            Family::Lambda1Neumann => {
                if n % 2 == 1 {
                    (n as f64 * pt.rho).sin()
                } else {
                    (n as f64 * pt.rho).cos()
                }
            }
        };
        self.norm * shape
    }

    pub fn profile(&self, rho: f64) -> f64 {
        self.profile_at(&RhoPoint::new(rho))
    }

    /// `phi_n(t, rho)`.
    pub fn eval(&self, t: f64, rho: f64) -> C64 {
        self.profile(rho) * C64::from_polar(1.0, -self.omega * t)
    }
}

impl ModeFunction {
    /// `(C1, C2)` with `Psi_n = C1 Psi1 + C2 Psi2` at `omega_n`, read off
    /// from the value and slope at `rho = 0`.
    pub fn coefficients(&self) -> (C64, C64) {
        let l = self.lambda;
        let n = self.n;
        let nf = n as f64;
        // P and dP/dx at x = 0 (z = 1/2); d/dx P_n^(a,b) = (n+a+b+1)/2 P_{n-1}^(a+1,b+1)
        let jac = |a: f64, b: f64| {
            let p = jacobi_p_z(n, a, b, 0.5);
            let dp = if n == 0 { 0.0 } else { 0.5 * (nf + a + b + 1.0) * jacobi_p_z(n - 1, a + 1.0, b + 1.0, 0.5) };
            (p, dp)
        };
        let (v, d) = match self.family {
            Family::I => jac(l - 0.5, l - 0.5),
            Family::II => jac(0.5 - l, 0.5 - l),
            Family::III => {
                let (p, dp) = jac(l - 0.5, 0.5 - l);
                (p, dp + (0.5 - l) * p)
            }
            Family::IV => {
                let (p, dp) = jac(l - 0.5, 0.5 - l);
                (p, -dp - (0.5 - l) * p)
            }
            Family::V => jac(0.0, 0.0),
            Family::Lambda1Dirichlet => if n % 2 == 1 { (1.0, 0.0) } else { (0.0, nf) },
            Family::Lambda1Neumann => if n % 2 == 1 { (0.0, nf) } else { (1.0, 0.0) },
        };
        (C64::new(self.norm * v, 0.0), C64::new(self.norm * d, 0.0))
    }
}

/// `phi(t, rho)` for the mode.
pub fn mode_function(mode: &ModeFunction, t: f64, rho: f64) -> C64 {
    mode.eval(t, rho)
}

/// A stationary solution `Psi(rho) e^{-i omega t}` or its conjugate.
#[derive(Debug, Clone, Copy)]
pub struct Stationary<'a> {
    pub mode: &'a ModeFunction,
    pub conjugate: bool,
}

impl Stationary<'_> {
    fn value_and_dt(&self, t: f64, pt: &RhoPoint) -> (C64, C64) {
        let w = if self.conjugate { -self.mode.omega } else { self.mode.omega };
        let v = self.mode.profile_at(pt) * C64::from_polar(1.0, -w * t);
        (v, C64::new(0.0, -w) * v)
    }
}

fn quadrature() -> TanhSinh {
    TanhSinh { rel_tol: 1e-12, max_levels: 10 }
}

/// `int_{-pi/2}^{pi/2} f(pt) drho` with points near both ends carrying full
/// relative precision in `cos rho`.
pub fn integrate_interval<F: FnMut(&RhoPoint, &mut [f64])>(dim: usize, mut f: F) -> Result<Vec<f64>> {
    let q = quadrature();
    let right = q.integrate_vec(0.0, FRAC_PI_2, dim, |n, out| {
        f(&RhoPoint::from_boundary(Side::Plus, n.from_b), out)
    })?;
    let left = q.integrate_vec(-FRAC_PI_2, 0.0, dim, |n, out| {
        f(&RhoPoint::from_boundary(Side::Minus, n.from_a), out)
    })?;
    Ok(right.iter().zip(&left).map(|(a, b)| a + b).collect())
}

/// Klein-Gordon product `i int (conj(phi1) d_t phi2 - d_t conj(phi1) phi2) drho`
/// at time `t`.
pub fn kg_inner_product_at(a: Stationary, b: Stationary, t: f64) -> Result<C64> {
    let v = integrate_interval(2, |pt, out| {
        let (fa, da) = a.value_and_dt(t, pt);
        let (fb, db) = b.value_and_dt(t, pt);
        let z = C64::i() * (fa.conj() * db - da.conj() * fb);
        out[0] = z.re;
        out[1] = z.im;
    })?;
    Ok(C64::new(v[0], v[1]))
}

/// Klein-Gordon product of two positive-frequency modes at `t = 0`.
pub fn kg_inner_product(a: &ModeFunction, b: &ModeFunction) -> Result<C64> {
    kg_inner_product_at(Stationary { mode: a, conjugate: false }, Stationary { mode: b, conjugate: false }, 0.0)
}

/// Gram matrix of Klein-Gordon products.
pub fn kg_gram(modes: &[ModeFunction]) -> Result<Vec<Vec<C64>>> {
    modes
        .iter()
        .map(|a| modes.iter().map(|b| kg_inner_product(a, b)).collect())
        .collect()
}

/// Max-norm distance of a Gram matrix from the identity.
pub fn gram_defect(g: &[Vec<C64>]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, row) in g.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            d = d.max((z - target).norm());
        }
    }
    d
}

/// Klein-Gordon product of the zero-frequency solution `a t + b` at
/// `lambda = 1` with a positive-frequency mode. The constant part pairs to
/// zero with every Neumann mode and with itself.
pub fn kg_with_linear_zero_mode(a: f64, b: f64, mode: &ModeFunction, t: f64) -> Result<C64> {
    let v = integrate_interval(2, |pt, out| {
        let z0 = C64::new(a * t + b, 0.0);
        let dz0 = C64::new(a, 0.0);
        let f = mode.profile_at(pt) * C64::from_polar(1.0, -mode.omega * t);
        let df = C64::new(0.0, -mode.omega) * f;
        let z = C64::i() * (z0 * df - dz0 * f);
        out[0] = z.re;
        out[1] = z.im;
    })?;
    Ok(C64::new(v[0], v[1]))
}

/// Relative residual of `-Psi'' + lambda(lambda-1) sec^2 Psi = omega^2 Psi`
/// over a set of interior points, using a sixth-order central difference.
pub fn ode_residual<F: Fn(f64) -> Result<f64>>(lambda: f64, omega_sq: f64, psi: F, points: &[f64]) -> Result<f64> {
    const H: f64 = 2e-3;
    const W: [f64; 4] = [-49.0 / 18.0, 1.5, -0.15, 1.0 / 90.0];
    let m2 = lambda * (lambda - 1.0);
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 1e-300;
    for &x in points {
        let f0 = psi(x)?;
        let mut d2 = W[0] * f0;
        for (k, w) in W.iter().enumerate().skip(1) {
            let dx = k as f64 * H;
            d2 += w * (psi(x + dx)? + psi(x - dx)?);
        }
        d2 /= H * H;
        let pot = m2 / x.cos().powi(2) * f0;
        let r = -d2 + pot - omega_sq * f0;
        // residuals are measured against the largest term anywhere on the grid
        scale = scale.max(d2.abs()).max(pot.abs()).max((omega_sq * f0).abs());
        worst = worst.max(r.abs());
    }
    Ok(worst / scale)
}

/// Interior sample points used by the residual checks.
pub fn interior_points(count: usize, margin: f64) -> Vec<f64> {
    let a = -FRAC_PI_2 + margin;
    let b = FRAC_PI_2 - margin;
    (0..count).map(|i| a + (b - a) * (i as f64 + 0.5) / count as f64).collect()
}

/// ODE residual of a mode on the default interior grid.
pub fn mode_ode_residual(mode: &ModeFunction) -> Result<f64> {
    ode_residual(mode.lambda, mode.omega * mode.omega, |x| Ok(mode.profile(x)), &interior_points(41, 0.05))
}

/// `C1 Psi1 + C2 Psi2` evaluated for the residual check of a general solution.
pub fn solution_residual(params: &FieldParams, omega: C64, c1: C64, c2: C64) -> Result<f64> {
    let ctrl = SeriesControl::default();
    let eval = |x: f64, part: fn(C64) -> f64| -> Result<f64> {
        Ok(part(solution_at(params, omega, c1, c2, &RhoPoint::new(x), &ctrl)?))
    };
    let pts = interior_points(41, 0.05);
    let w2 = omega * omega;
    if w2.im.abs() > 1e-12 * w2.norm().max(1.0) {
        return Err(Error::Domain("residual check needs real omega^2".into()));
    }
    let re = ode_residual(params.lambda(), w2.re, |x| eval(x, |z| z.re), &pts)?;
    let im = ode_residual(params.lambda(), w2.re, |x| eval(x, |z| z.im), &pts)?;
    Ok(re.max(im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_one_ground_state() {
        let p = FieldParams::new(1.0).unwrap();
        let m = ModeFunction::new(Family::I, &p, 0).unwrap();
        assert!((m.norm - 1.0 / PI.sqrt()).abs() < 1e-14);
        assert!((m.profile(0.3) - 0.3f64.cos() / PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn family_three_reflects_into_four() {
        let p = FieldParams::new(0.75).unwrap();
        let a = ModeFunction::new(Family::III, &p, 2).unwrap();
        let b = ModeFunction::new(Family::IV, &p, 2).unwrap();
        for rho in [-1.3, -0.2, 0.4, 1.5] {
            assert!((a.eval(0.3, -rho) - b.eval(0.3, rho)).norm() < 1e-13);
        }
    }

    #[test]
    fn neumann_norm_by_quadrature() {
        let p = FieldParams::new(0.75).unwrap();
        let m = ModeFunction::new(Family::II, &p, 3).unwrap();
        let g = kg_inner_product(&m, &m).unwrap();
        assert!((g - 1.0).norm() < 1e-10, "{g}");
    }
}
