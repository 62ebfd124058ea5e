//! Deficiency subspaces and the map from von Neumann's unitary `U_M`
//! (acting from `K+` to `K-`) to the boundary matrix `U`.
//!
//! `K+` is spanned by the even and odd solutions at `omega = 1 + i`
//! (`omega^2 = 2i`), normalised in `L^2`. Their traces at `+pi/2` form the
//! diagonal matrices `A = diag(DPhi~1, DPhi~2)` and
//! `B = diag(Phi~1, Phi~2)`, which satisfy `B conj(A) - A conj(B) = 2i I`.

use crate::boundary::bc::check_unitary;
use crate::boundary::solution::solution_at;
use crate::boundary::{boundary_trace, Mat2, SelfAdjointBC, Trace};
use crate::error::{Error, Result};
use crate::params::FieldParams;
use crate::point::{RhoPoint, Side};
use crate::specfun::quad::TanhSinh;
use crate::specfun::SeriesControl;
use crate::C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

/// Tolerance on `B conj(A) - A conj(B) - 2i I`.
pub const IDENTITY_TOL: f64 = 1e-8;

/// `omega` of the deficiency solutions.
pub fn deficiency_omega() -> C64 {
    C64::new(1.0, 1.0)
}

/// Normalised deficiency solutions: `Phi1 = c1 Psi1`, `Phi2 = c2 Psi2` at
/// `omega = 1 + i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeficiencyPair {
    pub lambda: f64,
    pub c1: f64,
    pub c2: f64,
}

impl DeficiencyPair {
    /// `Phi1(rho)` and `Phi2(rho)`.
    pub fn eval(&self, rho: f64) -> Result<(C64, C64)> {
        let params = FieldParams::new(self.lambda)?;
        let pt = RhoPoint::new(rho);
        eval_pair(&params, self.c1, self.c2, &pt)
    }

    /// Boundary traces of `Phi1` and `Phi2`.
    pub fn traces(&self) -> Result<(Trace, Trace)> {
        let params = FieldParams::new(self.lambda)?;
        let (one, zero) = (C64::new(self.c1, 0.0), C64::new(0.0, 0.0));
        let t1 = boundary_trace(&params, deficiency_omega(), one, zero)?;
        let t2 = boundary_trace(&params, deficiency_omega(), zero, C64::new(self.c2, 0.0))?;
        Ok((t1, t2))
    }
}

fn eval_pair(params: &FieldParams, c1: f64, c2: f64, pt: &RhoPoint) -> Result<(C64, C64)> {
    let ctrl = SeriesControl::default();
    let (one, zero) = (C64::new(c1, 0.0), C64::new(0.0, 0.0));
    let p1 = solution_at(params, deficiency_omega(), one, zero, pt, &ctrl)?;
    let p2 = solution_at(params, deficiency_omega(), zero, C64::new(c2, 0.0), pt, &ctrl)?;
    Ok((p1, p2))
}

/// `int_{-pi/2}^{pi/2} |Psi_j|^2` for the unnormalised even and odd solutions
/// at `omega = 1 + i`.
pub fn deficiency_norms_sq(params: &FieldParams) -> Result<(f64, f64)> {
    if !params.has_extensions() {
        return Err(Error::Regime(format!(
            "lambda = {} has no square-integrable deficiency solutions",
            params.lambda()
        )));
    }
    let q = TanhSinh::default();
    let mut fail = None;
    // both integrands are even; integrate over [0, pi/2] in the distance to the end
    let v = q.integrate_vec(0.0, FRAC_PI_2, 2, |n, out| {
        let pt = RhoPoint::from_boundary(Side::Plus, n.from_b);
        match eval_pair(params, 1.0, 1.0, &pt) {
            Ok((a, b)) => {
                out[0] = a.norm_sqr();
                out[1] = b.norm_sqr();
            }
            Err(e) => {
                fail.get_or_insert(e);
                out[0] = 0.0;
                out[1] = 0.0;
            }
        }
    })?;
    if let Some(e) = fail {
        return Err(e);
    }
    Ok((2.0 * v[0], 2.0 * v[1]))
}

pub fn deficiency_functions(params: &FieldParams) -> Result<DeficiencyPair> {
    let (n1, n2) = deficiency_norms_sq(params)?;
    Ok(DeficiencyPair { lambda: params.lambda(), c1: 1.0 / n1.sqrt(), c2: 1.0 / n2.sqrt() })
}

/// The diagonal trace matrices `(A, B)` of the normalised deficiency pair.
///
/// Fails with a consistency error if `B conj(A) - A conj(B)` misses `2i I`
/// by more than [`IDENTITY_TOL`].
pub fn trace_matrices(params: &FieldParams) -> Result<(Mat2, Mat2)> {
    let pair = deficiency_functions(params)?;
    let (t1, t2) = pair.traces()?;
    let zero = C64::new(0.0, 0.0);
    let a = Mat2::new(t1.dpsi_plus, zero, zero, t2.dpsi_plus);
    let b = Mat2::new(t1.psi_plus, zero, zero, t2.psi_plus);
    let dev = identity_defect(&a, &b);
    if dev > IDENTITY_TOL {
        return Err(Error::Consistency(format!(
            "B conj(A) - A conj(B) differs from 2i I by {dev:e} at lambda = {}",
            params.lambda()
        )));
    }
    Ok((a, b))
}

/// Max-norm of `B conj(A) - A conj(B) - 2i I`.
pub fn identity_defect(a: &Mat2, b: &Mat2) -> f64 {
    let m = b * a.map(|z| z.conj()) - a * b.map(|z| z.conj()) - Mat2::identity() * C64::new(0.0, 2.0);
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// The boundary matrix `U` of the extension whose domain contains
/// `Phi+ + U_M Phi+` for every `Phi+` in `K+`.
pub fn map_um_to_bc(u_m: &Mat2, params: &FieldParams) -> Result<SelfAdjointBC> {
    let (a, b) = trace_matrices(params)?;
    map_um_with_traces(u_m, &a, &b).and_then(|u| SelfAdjointBC::from_unitary(&u))
}

/// [`map_um_to_bc`] with precomputed trace matrices; returns `U` itself.
pub fn map_um_with_traces(u_m: &Mat2, a: &Mat2, b: &Mat2) -> Result<Mat2> {
    check_unitary(u_m)?;
    let i = C64::i();
    let conj = |m: &Mat2| m.map(|z| z.conj());
    let ub = conj(u_m);
    let v1 = conj(b) - conj(a) * i + ub * (b - a * i);
    let v2 = conj(b) + conj(a) * i + ub * (b + a * i);
    let v1_inv = v1
        .try_inverse()
        .ok_or_else(|| Error::Consistency("V1 is singular; the trace matrices are inconsistent".into()))?;
    let ut = -(v1_inv * v2);
    let half = C64::new(0.5, 0.0);
    let one = C64::new(1.0, 0.0);
    let left = Mat2::new(one, one, -one, one) * half;
    let right = Mat2::new(one, -one, one, one);
    Ok(left * ut * right)
}

/// Traces of the basis element `Phi^(j) + sum_k u_jk conj(Phi^(k))` of the
/// extension domain.
pub fn domain_basis_traces(u_m: &Mat2, t1: &Trace, t2: &Trace) -> [Trace; 2] {
    let basis = [t1, t2];
    let conj = [t1.conj(), t2.conj()];
    [0, 1].map(|j| basis[j].add(&conj[0].scale(u_m[(j, 0)])).add(&conj[1].scale(u_m[(j, 1)])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::relative_residual;

    #[test]
    fn identity_holds_at_three_quarters() {
        let p = FieldParams::new(0.75).unwrap();
        let (a, b) = trace_matrices(&p).unwrap();
        assert!(identity_defect(&a, &b) < 1e-10);
    }

    #[test]
    fn dirichlet_and_neumann_images() {
        let p = FieldParams::new(0.9).unwrap();
        let (a, b) = trace_matrices(&p).unwrap();
        let (t1, t2) = deficiency_functions(&p).unwrap().traces().unwrap();
        for u_m in [Mat2::identity(), -Mat2::identity()] {
            let u = map_um_with_traces(&u_m, &a, &b).unwrap();
            for t in domain_basis_traces(&u_m, &t1, &t2) {
                assert!(relative_residual(&u, &t) < 1e-9);
            }
        }
    }
}
