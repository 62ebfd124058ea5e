//! Even and odd solutions of `A Psi = omega^2 Psi` and their behaviour at
//! the ends of the interval.

use crate::error::{Error, Result};
use crate::params::{FieldParams, Regime};
use crate::point::RhoPoint;
use crate::specfun::gamma::{gamma_unchecked, rgamma, rgamma_times_digamma};
use crate::specfun::hyper::{connection_split, series};
use crate::specfun::SeriesControl;
use crate::C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Coefficients of the power-law behaviour near rho = pi/2:
/// `Psi1 ~ A1 cos^lambda + B1 cos^(1-lambda)` and
/// `Psi2 ~ A2 cos^lambda + B2 cos^(1-lambda)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Connection {
    pub a1: C64,
    pub b1: C64,
    pub a2: C64,
    pub b2: C64,
}

/// Half-integer `lambda = k + 1/2`: `H` multiplies the `cos^lambda ln cos^2`
/// term, `H h(0)` is the accompanying constant and `B` the
/// `cos^(1-lambda)` coefficient (zero for k = 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogConnection {
    pub k: u32,
    pub h1: C64,
    pub h1_h1: C64,
    pub b1: C64,
    pub h2: C64,
    pub h2_h2: C64,
    pub b2: C64,
}

fn half(x: C64) -> C64 {
    0.5 * x
}

/// Power-law connection coefficients. Products of reciprocal gammas, so they
/// are entire in `omega` and vanish exactly on the quantised frequencies.
pub fn connection_coefficients(params: &FieldParams, omega: C64) -> Result<Connection> {
    let l = params.lambda();
    if params.half_integer_k().is_some() {
        return Err(Error::Regime(format!(
            "lambda = {l} is a half-integer; use log_connection_coefficients"
        )));
    }
    let g_lo = gamma_unchecked(C64::new(0.5 - l, 0.0));
    let g_hi = gamma_unchecked(C64::new(l - 0.5, 0.0));
    let a1 = SQRT_PI * g_lo * rgamma(half(1.0 - l + omega)) * rgamma(half(1.0 - l - omega));
    let b1 = SQRT_PI * g_hi * rgamma(half(l + omega)) * rgamma(half(l - omega));
    let a2 = 0.5 * SQRT_PI * g_lo * rgamma(half(2.0 - l + omega)) * rgamma(half(2.0 - l - omega));
    let b2 = 0.5 * SQRT_PI * g_hi * rgamma(half(1.0 + l + omega)) * rgamma(half(1.0 + l - omega));
    Ok(Connection { a1, b1, a2, b2 })
}

/// Logarithmic connection coefficients for `lambda = k + 1/2`.
pub fn log_connection_coefficients(params: &FieldParams, omega: C64) -> Result<LogConnection> {
    let k = params
        .half_integer_k()
        .ok_or_else(|| Error::Regime(format!("lambda = {} is not a half-integer", params.lambda())))?;
    let kf = k as f64;
    let parts = |quarter: f64, gc: f64| {
        let a = half(kf + omega) + quarter;
        let b = half(kf - omega) + quarter;
        let (ra, rb) = (a - kf, b - kf);
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        let h = sign * gc * rgamma(ra) * rgamma(rb);
        let psi1 = crate::specfun::gamma::digamma_unchecked(C64::new(1.0, 0.0));
        let psik = crate::specfun::gamma::digamma_unchecked(C64::new(kf + 1.0, 0.0));
        let hh = sign
            * gc
            * (rgamma(ra) * rgamma(rb) * (-psi1 - psik)
                + rgamma_times_digamma(ra, k as usize) * rgamma(rb)
                + rgamma(ra) * rgamma_times_digamma(rb, k as usize));
        let bcoef = if k == 0 {
            C64::new(0.0, 0.0)
        } else {
            gamma_unchecked(C64::new(kf, 0.0)) * gc * rgamma(a) * rgamma(b)
        };
        (h, hh, bcoef)
    };
    let (h1, h1_h1, b1) = parts(0.25, SQRT_PI);
    let (h2, h2_h2, b2) = parts(0.75, 0.5 * SQRT_PI);
    Ok(LogConnection { k, h1, h1_h1, b1, h2, h2_h2, b2 })
}

/// `C1 Psi1 + C2 Psi2` at a point.
pub fn solution_at(
    params: &FieldParams,
    omega: C64,
    c1: C64,
    c2: C64,
    pt: &RhoPoint,
    ctrl: &SeriesControl,
) -> Result<C64> {
    let l = params.lambda();
    let (a, b) = (half(l + omega), half(l - omega));
    let (cos2, sin2) = pt.cos2_sin2();
    if pt.sin.abs() <= std::f64::consts::FRAC_1_SQRT_2 {
        let pre = pt.cos.powf(l);
        let mut v = C64::new(0.0, 0.0);
        if c1 != C64::new(0.0, 0.0) {
            v += c1 * pre * series(a, b, C64::new(0.5, 0.0), sin2, ctrl)?;
        }
        if c2 != C64::new(0.0, 0.0) {
            v += c2 * pt.sin * pre * series(a + 0.5, b + 0.5, C64::new(1.5, 0.0), sin2, ctrl)?;
        }
        return Ok(v);
    }
    let ln_c = pt.cos.ln();
    let p_reg = (l * ln_c).exp();
    let p_sing = ((1.0 - l) * ln_c).exp();
    let mut v = C64::new(0.0, 0.0);
    if c1 != C64::new(0.0, 0.0) {
        let (reg, sing) = connection_split(a, b, C64::new(0.5, 0.0), cos2, 2.0 * ln_c, ctrl)?;
        v += c1 * (p_reg * reg + p_sing * sing);
    }
    if c2 != C64::new(0.0, 0.0) {
        let (reg, sing) =
            connection_split(a + 0.5, b + 0.5, C64::new(1.5, 0.0), cos2, 2.0 * ln_c, ctrl)?;
        v += c2 * pt.sin * (p_reg * reg + p_sing * sing);
    }
    Ok(v)
}

/// `C1 Psi1(rho) + C2 Psi2(rho)` for `rho` in the open interval.
pub fn spatial_solution(
    params: &FieldParams,
    omega: C64,
    c1: C64,
    c2: C64,
    rho: f64,
    ctrl: &SeriesControl,
) -> Result<C64> {
    if !(rho.abs() < PI / 2.0) {
        return Err(Error::Domain(format!("rho = {rho} outside (-pi/2, pi/2)")));
    }
    solution_at(params, omega, c1, c2, &RhoPoint::new(rho), ctrl)
}

/// Regularised boundary values of `C1 Psi1 + C2 Psi2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    /// regularised value at +pi/2
    pub psi_plus: C64,
    /// regularised value at -pi/2
    pub psi_minus: C64,
    /// regularised derivative at +pi/2
    pub dpsi_plus: C64,
    /// regularised derivative at -pi/2
    pub dpsi_minus: C64,
}

impl Trace {
    pub fn as_array(&self) -> [C64; 4] {
        [self.psi_plus, self.psi_minus, self.dpsi_plus, self.dpsi_minus]
    }

    pub fn norm(&self) -> f64 {
        self.as_array().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn conj(&self) -> Trace {
        Trace {
            psi_plus: self.psi_plus.conj(),
            psi_minus: self.psi_minus.conj(),
            dpsi_plus: self.dpsi_plus.conj(),
            dpsi_minus: self.dpsi_minus.conj(),
        }
    }

    pub fn scale(&self, s: C64) -> Trace {
        Trace {
            psi_plus: self.psi_plus * s,
            psi_minus: self.psi_minus * s,
            dpsi_plus: self.dpsi_plus * s,
            dpsi_minus: self.dpsi_minus * s,
        }
    }

    pub fn add(&self, o: &Trace) -> Trace {
        Trace {
            psi_plus: self.psi_plus + o.psi_plus,
            psi_minus: self.psi_minus + o.psi_minus,
            dpsi_plus: self.dpsi_plus + o.dpsi_plus,
            dpsi_minus: self.dpsi_minus + o.dpsi_minus,
        }
    }
}

/// Regularised boundary values of `C1 Psi1 + C2 Psi2` at frequency `omega`.
///
/// For `1/2 < lambda < 3/2` the value is the limit of `cos^(lambda-1) Psi` and
/// the derivative the limit of `cos^(2-2 lambda) d/drho (cos^(lambda-1) Psi)`.
/// At `lambda = 1/2` the value is the limit of
/// `cos^(-1/2) Psi / (ln cos^2 - 1)` and the derivative the limit of
/// `cos (ln cos^2 - 1)^2 d/drho` of that.
pub fn boundary_trace(params: &FieldParams, omega: C64, c1: C64, c2: C64) -> Result<Trace> {
    match params.regime() {
        Regime::Middle => {
            let k = connection_coefficients(params, omega)?;
            let s = 2.0 * params.lambda() - 1.0;
            Ok(Trace {
                psi_plus: c1 * k.b1 + c2 * k.b2,
                psi_minus: c1 * k.b1 - c2 * k.b2,
                dpsi_plus: -s * (c1 * k.a1 + c2 * k.a2),
                dpsi_minus: s * (c1 * k.a1 - c2 * k.a2),
            })
        }
        Regime::Edge => {
            let k = log_connection_coefficients(params, omega)?;
            let (lp, lm) = (c1 * k.h1 + c2 * k.h2, c1 * k.h1 - c2 * k.h2);
            let (kp, km) = (c1 * k.h1_h1 + c2 * k.h2_h2, c1 * k.h1_h1 - c2 * k.h2_h2);
            Ok(Trace {
                psi_plus: lp,
                psi_minus: lm,
                dpsi_plus: 2.0 * (lp + kp),
                dpsi_minus: -2.0 * (lm + km),
            })
        }
        _ => Err(Error::Regime(format!(
            "boundary traces need 1/2 <= lambda < 3/2, got {}",
            params.lambda()
        ))),
    }
}

/// Coefficient of the `cos^(1-lambda)` branch at each end for
/// `lambda >= 3/2`. A solution is square integrable iff both vanish.
pub(crate) fn large_lambda_obstruction(params: &FieldParams, omega: C64, c1: C64, c2: C64) -> Result<(C64, C64)> {
    let (b1, b2) = match params.regime() {
        Regime::Large => {
            let k = connection_coefficients(params, omega)?;
            (k.b1, k.b2)
        }
        Regime::HalfIntegerLarge { .. } => {
            let k = log_connection_coefficients(params, omega)?;
            (k.b1, k.b2)
        }
        _ => return Err(Error::Regime("obstruction is only defined for lambda >= 3/2".into())),
    };
    Ok((c1 * b1 + c2 * b2, c1 * b1 - c2 * b2))
}

/// The symplectic boundary form
/// `[conj(Psi1~) DPsi2~ - conj(DPsi1~) Psi2~]` at +pi/2 minus the same at -pi/2.
pub fn boundary_form(t1: &Trace, t2: &Trace) -> C64 {
    let at = |p1: C64, d1: C64, p2: C64, d2: C64| p1.conj() * d2 - d1.conj() * p2;
    at(t1.psi_plus, t1.dpsi_plus, t2.psi_plus, t2.dpsi_plus)
        - at(t1.psi_minus, t1.dpsi_minus, t2.psi_minus, t2.dpsi_minus)
}
