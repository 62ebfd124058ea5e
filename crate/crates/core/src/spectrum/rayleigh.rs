//! Rayleigh quotients showing that `A = -d^2 - (1/4 + a) sec^2` is unbounded
//! below for `a > 0` (masses under the stability bound).

use crate::error::{Error, Result};
use crate::specfun::quad::TanhSinh;
use std::f64::consts::FRAC_PI_2;

/// `int_{-eta}^{eta} cos^{1/2} A cos^{1/2} drho = -2a ln(sec eta + tan eta) + sin(eta)/2`.
pub fn core_integral(a: f64, eta: f64) -> Result<f64> {
    if !(0.0 < eta && eta < FRAC_PI_2) {
        return Err(Error::Domain(format!("eta = {eta} outside (0, pi/2)")));
    }
    Ok(-2.0 * a * (1.0 / eta.cos() + eta.tan()).ln() + 0.5 * eta.sin())
}

// Smooth step: 1 for x <= -1, 0 for x >= 1.
fn bump(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

fn bump_deriv(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp() / (t * t)
    }
}

fn chi(x: f64) -> (f64, f64) {
    let (p, q) = (bump(0.5 * (1.0 - x)), bump(0.5 * (1.0 + x)));
    let (dp, dq) = (-0.5 * bump_deriv(0.5 * (1.0 - x)), 0.5 * bump_deriv(0.5 * (1.0 + x)));
    let s = p + q;
    (p / s, (dp * s - p * (dp + dq)) / (s * s))
}

/// `<f, A f> / <f, f>` for the trial function `f = cos^{1/2} chi`, where the
/// cutoff `chi` equals 1 on `|rho| <= eta - eps`, vanishes beyond
/// `eta + eps`, and `eps = (pi/2 - eta)/2`.
pub fn rayleigh_quotient_unbounded(a: f64, eta: f64) -> Result<f64> {
    let (num, den) = rayleigh_parts(a, eta)?;
    Ok(num / den)
}

/// Numerator `<f, A f>` and denominator `<f, f>` of the quotient.
pub fn rayleigh_parts(a: f64, eta: f64) -> Result<(f64, f64)> {
    if !(0.0 < eta && eta < FRAC_PI_2) {
        return Err(Error::Domain(format!("eta = {eta} outside (0, pi/2)")));
    }
    let eps = 0.5 * (FRAC_PI_2 - eta);
    let inner = eta - eps;
    let q = TanhSinh { rel_tol: 1e-13, max_levels: 10 };
    // on |rho| <= eta - eps the integrand of <f, A f> is cos/4 - a/cos exactly
    let core = core_integral(a, inner)?;
    let core_norm = 2.0 * inner.sin();
    // transition layers, one per side
    let layer = q.integrate_vec(inner, eta + eps, 2, |n, out| {
        // the layer ends eps short of pi/2
        let c = (eps + n.from_b).sin();
        let s = (eps + n.from_b).cos();
        let (x, dx) = (((n.x - eta) / eps).clamp(-1.0, 1.0), 1.0 / eps);
        let (ch, dch) = chi(x);
        let sc = c.sqrt();
        let f = sc * ch;
        let df = -0.5 * s / sc * ch + sc * dch * dx;
        out[0] = df * df - (0.25 + a) * f * f / (c * c);
        out[1] = f * f;
    })?;
    // integrating -f f'' by parts over each layer leaves f f' = -sin/2 at
    // its inner end
    let boundary = -inner.sin();
    let num = core + boundary + 2.0 * layer[0];
    let den = core_norm + 2.0 * layer[1];
    Ok((num, den))
}

/// Quotients at `eta_k = pi/2 - 2^{-k}` for `k` in `ks`.
pub fn rayleigh_sweep(a: f64, ks: impl IntoIterator<Item = u32>) -> Result<Vec<(f64, f64)>> {
    ks.into_iter()
        .map(|k| {
            let eta = FRAC_PI_2 - 2f64.powi(-(k as i32));
            Ok((eta, rayleigh_quotient_unbounded(a, eta)?))
        })
        .collect()
}
