//! Energy flux through the conformal boundary for the stress tensor with
//! conformal coupling `beta`.
//!
//! For a mode `Psi` the flux at `+-pi/2` is the boundary value of
//! `((1 - 2 beta) Psi' + beta tan rho Psi) Psi`. In terms of the regularised
//! trace `(P, D) = (Psi~, DPsi~)` at `1/2 < lambda < 3/2` it behaves as
//!
//! `kappa s cos^(1-2 lambda) |P|^2 + (1 - 4 beta)/(2 lambda - 1) Re(conj(P) D) + o(1)`
//!
//! with `kappa = (3 - 2 lambda) beta - (1 - lambda)` and `s = sin rho = +-1`.
//! The first term diverges, so the flux vanishes iff `P = 0`, or
//! `kappa = 0` and `Re(conj(P) D) = 0`. A complex mode is treated through
//! the time average of its real part, hence the Hermitian products.
//!
//! At `lambda = 1/2`, with `L = ln cos^2 rho - 1`, the leading terms are
//! `(2 beta - 1/2) s L^2 |P|^2 / cos rho`, then
//! `-2 (1 - 2 beta) s L |P|^2 / cos rho`, then `(1 - 2 beta) Re(conj(P) D)`.
//! The first two cannot vanish together, so only `P = 0` works.

use crate::boundary::{boundary_trace, SelfAdjointBC, Trace};
use crate::error::Result;
use crate::params::{FieldParams, Regime};
use crate::point::Side;
use crate::spectrum::{eigenmodes, Eigenmode, ScanOptions};
use crate::symmetry::is_invariant_bc;
use crate::C64;
use serde::{Deserialize, Serialize};

/// Default threshold on the scale-free flux value.
pub const FLUX_TOL: f64 = 1e-9;

/// Which power of `cos rho` the reported value multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FluxOrder {
    /// `cos^(1 - 2 lambda)` (or `L^2 / cos` at `lambda = 1/2`).
    Divergent,
    /// `L / cos` at `lambda = 1/2`.
    SubDivergent,
    /// The finite limit.
    Finite,
    /// Every coefficient vanishes.
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluxReport {
    pub beta: f64,
    pub boundary: Side,
    /// Coefficient of the leading non-vanishing boundary behaviour, divided
    /// by the squared norm of the trace.
    pub value: f64,
    pub order: FluxOrder,
    pub vanishes: bool,
}

fn side_trace(t: &Trace, side: Side) -> (C64, C64) {
    match side {
        Side::Plus => (t.psi_plus, t.dpsi_plus),
        Side::Minus => (t.psi_minus, t.dpsi_minus),
    }
}

/// The flux coefficients at one end, leading first, scale free.
fn coefficients(params: &FieldParams, beta: f64, t: &Trace, side: Side) -> Vec<(FluxOrder, f64)> {
    let l = params.lambda();
    let s = side.sign();
    let (p, d) = side_trace(t, side);
    let norm = norm_sqr_or_one(t);
    let pp = p.norm_sqr() / norm;
    let pd = (p.conj() * d).re / norm;
    match params.regime() {
        Regime::Middle => {
            let kappa = (3.0 - 2.0 * l) * beta - (1.0 - l);
            vec![
                (FluxOrder::Divergent, kappa * s * pp),
                (FluxOrder::Finite, (1.0 - 4.0 * beta) / (2.0 * l - 1.0) * pd),
            ]
        }
        Regime::Edge => vec![
            (FluxOrder::Divergent, (2.0 * beta - 0.5) * s * pp),
            (FluxOrder::SubDivergent, -2.0 * (1.0 - 2.0 * beta) * s * pp),
            (FluxOrder::Finite, (1.0 - 2.0 * beta) * pd),
        ],
        // Psi ~ cos^lambda: the flux vanishes identically
        _ => vec![],
    }
}

fn norm_sqr_or_one(t: &Trace) -> f64 {
    let n = t.norm();
    if n > 0.0 {
        n * n
    } else {
        1.0
    }
}

/// Flux of the mode `C1 Psi1 + C2 Psi2` at frequency `omega` through one end.
pub fn energy_flux(
    params: &FieldParams,
    beta: f64,
    c1: C64,
    c2: C64,
    omega: C64,
    boundary: Side,
    tol: f64,
) -> Result<FluxReport> {
    if !params.has_extensions() {
        return Ok(FluxReport { beta, boundary, value: 0.0, order: FluxOrder::Zero, vanishes: true });
    }
    let t = boundary_trace(params, omega, c1, c2)?;
    Ok(flux_from_trace(params, beta, &t, boundary, tol))
}

/// [`energy_flux`] on a precomputed trace.
pub fn flux_from_trace(params: &FieldParams, beta: f64, t: &Trace, boundary: Side, tol: f64) -> FluxReport {
    let coefs = coefficients(params, beta, t, boundary);
    for (order, value) in coefs {
        if value.abs() >= tol {
            return FluxReport { beta, boundary, value, order, vanishes: false };
        }
    }
    FluxReport { beta, boundary, value: 0.0, order: FluxOrder::Zero, vanishes: true }
}

/// The values of `beta` for which the flux through one end vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "beta")]
pub enum BetaSet {
    All,
    Single(f64),
    Empty,
}

impl BetaSet {
    pub fn intersect(self, other: BetaSet, tol: f64) -> BetaSet {
        match (self, other) {
            (BetaSet::All, x) | (x, BetaSet::All) => x,
            (BetaSet::Single(a), BetaSet::Single(b)) if (a - b).abs() <= tol => BetaSet::Single(a),
            _ => BetaSet::Empty,
        }
    }

    pub fn is_nonempty(&self) -> bool {
        !matches!(self, BetaSet::Empty)
    }
}

/// Solves the flux condition at one end for `beta`.
///
/// The leading coefficient is affine in `beta`; its root is found from two
/// evaluations, and the lower orders are then checked at that root.
pub fn flux_killing_beta(params: &FieldParams, t: &Trace, boundary: Side, tol: f64) -> BetaSet {
    if !params.has_extensions() {
        return BetaSet::All;
    }
    let at = |beta: f64| coefficients(params, beta, t, boundary);
    let (c0, c1) = (at(0.0), at(1.0));
    if c0.iter().chain(&c1).all(|(_, v)| v.abs() < tol) {
        return BetaSet::All;
    }
    let (a, b) = (c0[0].1, c1[0].1 - c0[0].1);
    if b.abs() < tol {
        return if a.abs() < tol && at(0.5).iter().all(|(_, v)| v.abs() < tol) { BetaSet::All } else { BetaSet::Empty };
    }
    let beta = -a / b;
    if at(beta).iter().all(|(_, v)| v.abs() < tol) {
        BetaSet::Single(beta)
    } else {
        BetaSet::Empty
    }
}

/// Outcome for one boundary condition in [`flux_invariance_equivalence`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FluxEquivalenceEntry {
    pub bc: SelfAdjointBC,
    pub invariant: bool,
    /// `beta` values that kill the flux at both ends for every tested mode.
    pub flux_beta: BetaSet,
    pub equivalent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FluxEquivalenceReport {
    pub lambda: f64,
    pub entries: Vec<FluxEquivalenceEntry>,
    pub all_equivalent: bool,
}

/// Modes used per condition.
const EQUIVALENCE_MODES: usize = 3;

/// For each condition, compares "some `beta` kills the flux at both ends for
/// the lowest eigenmodes" with [`is_invariant_bc`].
pub fn flux_invariance_equivalence(params: &FieldParams, bcs: &[SelfAdjointBC]) -> Result<FluxEquivalenceReport> {
    let opts = ScanOptions { lo: -60.0, hi: 60.0, grid_points: 1201, tol: 1e-12 };
    let mut entries = Vec::with_capacity(bcs.len());
    for bc in bcs {
        let invariant = is_invariant_bc(params, bc)?.invariant;
        let modes: Vec<Eigenmode> = eigenmodes(params, bc, &opts, EQUIVALENCE_MODES)?;
        let mut set = BetaSet::All;
        for m in &modes {
            let t = boundary_trace(params, m.omega, m.c1, m.c2)?;
            for side in [Side::Plus, Side::Minus] {
                set = set.intersect(flux_killing_beta(params, &t, side, FLUX_TOL), 1e-9);
            }
        }
        entries.push(FluxEquivalenceEntry { bc: *bc, invariant, flux_beta: set, equivalent: invariant == set.is_nonempty() });
    }
    let all_equivalent = entries.iter().all(|e| e.equivalent);
    Ok(FluxEquivalenceReport { lambda: params.lambda(), entries, all_equivalent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::{Family, ModeFunction};

    fn mode_trace(family: Family, lambda: f64, n: usize) -> (FieldParams, Trace) {
        let p = FieldParams::new(lambda).unwrap();
        let m = ModeFunction::new(family, &p, n).unwrap();
        let (c1, c2) = m.coefficients();
        let t = boundary_trace(&p, C64::new(m.omega, 0.0), c1, c2).unwrap();
        (p, t)
    }

    #[test]
    fn dirichlet_vanishes_for_any_beta() {
        let (p, t) = mode_trace(Family::I, 0.75, 1);
        for side in [Side::Plus, Side::Minus] {
            assert!(flux_from_trace(&p, 0.123, &t, side, FLUX_TOL).vanishes);
        }
    }

    #[test]
    fn neumann_needs_the_conformal_value() {
        let (p, t) = mode_trace(Family::II, 0.75, 0);
        assert!(flux_from_trace(&p, 1.0 / 6.0, &t, Side::Plus, FLUX_TOL).vanishes);
        let r = flux_from_trace(&p, 0.0, &t, Side::Plus, FLUX_TOL);
        assert!(!r.vanishes && r.order == FluxOrder::Divergent);
    }
}
