//! Gauss hypergeometric function 2F1(a, b; c; z) for complex parameters and
//! real z in [0, 1].
//!
//! The power series is summed directly for z <= 1/2. Above that the
//! argument is mapped to 1 - z, using the logarithmic connection formulas
//! whenever c - a - b is an integer.

use super::gamma::{
    digamma_unchecked, factorial, gamma_unchecked, is_nonpositive_integer, rgamma,
    rgamma_times_digamma,
};
use crate::error::{Error, Result};
use crate::C64;
use serde::{Deserialize, Serialize};

/// Stopping rule for the hypergeometric and related power series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { max_terms: 20_000, rel_tol: 1e-16, abs_tol: 1e-300 }
    }
}

impl SeriesControl {
    /// True once `term` no longer changes `sum` at the requested tolerance.
    pub(crate) fn converged(&self, term: f64, sum: f64) -> bool {
        term <= self.rel_tol * sum + self.abs_tol
    }
}

/// Distance below which c - a - b counts as an integer.
const INTEGER_SNAP: f64 = 1e-12;

fn nonpositive_int_order(z: C64) -> Option<usize> {
    if is_nonpositive_integer(z) {
        Some((-z.re) as usize)
    } else {
        None
    }
}

/// Plain power series. Stops early when `a` or `b` terminates it.
pub(crate) fn series(a: C64, b: C64, c: C64, z: f64, ctrl: &SeriesControl) -> Result<C64> {
    let stop = [nonpositive_int_order(a), nonpositive_int_order(b)]
        .into_iter()
        .flatten()
        .min();
    if let Some(cm) = nonpositive_int_order(c) {
        if stop.map_or(true, |m| m > cm) {
            return Err(Error::Pole(format!("2F1 with c = {}", c.re)));
        }
    }
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for n in 0..ctrl.max_terms {
        if stop == Some(n) {
            return Ok(sum);
        }
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if ctrl.converged(term.norm(), sum.norm()) {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    if stop.is_some() || z == 0.0 {
        return Ok(sum);
    }
    Err(Error::Convergence(format!(
        "2F1 series at z = {z} did not converge in {} terms",
        ctrl.max_terms
    )))
}

/// 2F1(a, b; c; z) for z in [0, 1].
pub fn hyp2f1(a: C64, b: C64, c: C64, z: f64, ctrl: &SeriesControl) -> Result<C64> {
    if !(0.0..=1.0).contains(&z) || !z.is_finite() {
        return Err(Error::Domain(format!("2F1 argument z = {z} outside [0, 1]")));
    }
    if nonpositive_int_order(a).is_some() || nonpositive_int_order(b).is_some() {
        return series(a, b, c, z, ctrl);
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(format!("2F1 with c = {}", c.re)));
    }
    if z <= 0.5 {
        return series(a, b, c, z, ctrl);
    }
    let s = c - a - b;
    if z == 1.0 {
        if s.re <= 0.0 {
            return Err(Error::Domain("2F1 diverges at z = 1 when Re(c-a-b) <= 0".into()));
        }
        return Ok(gamma_unchecked(c) * gamma_unchecked(s) * rgamma(c - a) * rgamma(c - b));
    }
    let w = 1.0 - z;
    let (reg, sing) = connection_split(a, b, c, w, w.ln(), ctrl)?;
    Ok(reg + C64::new(w, 0.0).powc(s) * sing)
}

/// Splits 2F1(a, b; c; 1 - w) = reg(w) + w^(c-a-b) sing(w), where `reg` and
/// `sing` are power series in `w` (possibly times ln w).
///
/// `ln_w` is passed separately so callers that know `w` only through its
/// logarithm (w below the smallest normal double) still get the log terms
/// right. Requires w <= 1/2 for convergence.
pub fn connection_split(
    a: C64,
    b: C64,
    c: C64,
    w: f64,
    ln_w: f64,
    ctrl: &SeriesControl,
) -> Result<(C64, C64)> {
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(format!("2F1 with c = {}", c.re)));
    }
    let s = c - a - b;
    let m = s.re.round();
    let gc = gamma_unchecked(c);
    if (s - m).norm() < INTEGER_SNAP {
        return log_split(a, b, gc, m as i64, w, ln_w, ctrl);
    }
    let reg = gamma_unchecked(s) * rgamma(c - a) * rgamma(c - b) * series(a, b, 1.0 - s, w, ctrl)?;
    let sing = gamma_unchecked(-s) * rgamma(a) * rgamma(b) * series(c - a, c - b, 1.0 + s, w, ctrl)?;
    Ok((gc * reg, gc * sing))
}

/// Integer c - a - b = m. Returns the same split as [`connection_split`]:
/// for m <= 0 the polynomial part multiplies w^m and the log series is
/// regular; for m > 0 the log series carries the w^m.
fn log_split(
    a: C64,
    b: C64,
    gc: C64,
    m: i64,
    w: f64,
    ln_w: f64,
    ctrl: &SeriesControl,
) -> Result<(C64, C64)> {
    let p = m.unsigned_abs() as usize;
    let mut poly = C64::new(0.0, 0.0);
    if p > 0 {
        let (fa, fb) = if m > 0 { (a, b) } else { (a - p as f64, b - p as f64) };
        let mut term = C64::new(1.0, 0.0);
        for n in 0..p {
            poly += term;
            let nf = n as f64;
            term *= (fa + nf) * (fb + nf) / ((nf + 1.0) * (1.0 - p as f64 + nf)) * w;
        }
        let gp = factorial(p - 1);
        poly *= if m > 0 {
            gp * rgamma(a + p as f64) * rgamma(b + p as f64)
        } else {
            gp * rgamma(a) * rgamma(b)
        };
    }
    let (sa, sb) = if m >= 0 { (a + p as f64, b + p as f64) } else { (a, b) };
    let (ra, rb) = if m >= 0 { (a, b) } else { (a - p as f64, b - p as f64) };
    let rra = rgamma(ra);
    let rrb = rgamma(rb);
    let mut t = C64::new(1.0 / factorial(p), 0.0);
    let mut sum = C64::new(0.0, 0.0);
    let mut quiet = 0;
    let mut n = 0usize;
    loop {
        let nf = n as f64;
        let psis = digamma_unchecked(C64::new(nf + 1.0, 0.0))
            + digamma_unchecked(C64::new(nf + p as f64 + 1.0, 0.0));
        let bracket = rra * rrb * (ln_w - psis)
            + rgamma_times_digamma(ra, n + p) * rrb
            + rra * rgamma_times_digamma(rb, n + p);
        let contrib = t * bracket;
        sum += contrib;
        if t.norm() == 0.0 || ctrl.converged(contrib.norm(), sum.norm()) {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
        n += 1;
        if n >= ctrl.max_terms {
            return Err(Error::Convergence("logarithmic 2F1 connection series".into()));
        }
        t *= (sa + nf) * (sb + nf) / ((nf + 1.0) * (nf + 1.0 + p as f64)) * w;
    }
    let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
    let log_part = -sign * gc * sum;
    if m > 0 {
        Ok((gc * poly, log_part))
    } else {
        Ok((log_part, gc * poly))
    }
}
