//! Independent low-order eigenvalue solver used to cross-check the
//! determinant root finder.
//!
//! Writing `Psi = cos^(1-lambda) u` turns `A Psi = omega^2 Psi` into
//! `-(p u')' + (1-lambda)^2 w u = omega^2 w u` with `p = w = cos^(2-2 lambda)`.
//! Then `u` is the regularised value and `p u'` the regularised derivative,
//! so the boundary condition acts directly on the endpoint values of `u`.
//! The equation is discretised by a vertex-centred finite-volume scheme on
//! cosine-graded nodes: harmonic conductances `1 / int p^{-1}` on the edges,
//! lumped masses `int w` on the dual cells, and the boundary condition
//! enters through the quadratic form of the boundary term.

use crate::boundary::SelfAdjointBC;
use crate::error::{Error, Result};
use crate::params::{FieldParams, Regime};
use crate::specfun::quad::TanhSinh;
use crate::C64;
use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdOptions {
    /// Number of grid intervals.
    pub n_grid: usize,
    /// How many of the lowest eigenvalues to return.
    pub n_eigs: usize,
}

impl Default for FdOptions {
    fn default() -> Self {
        FdOptions { n_grid: 400, n_eigs: 5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FdSpectrum {
    pub omega_sq: Vec<f64>,
    pub warning: Option<String>,
}

/// Eigenvalues of `U` within this distance of 1 are treated as Dirichlet
/// constraints rather than as very stiff boundary springs.
const DIRICHLET_EIG_TOL: f64 = 1e-9;

struct Grid {
    /// distance of node i from -pi/2
    dl: Vec<f64>,
    /// distance of node i from +pi/2
    dr: Vec<f64>,
}

impl Grid {
    fn cosine(n: usize) -> Grid {
        let theta = |i: usize| PI * i as f64 / n as f64;
        Grid {
            dl: (0..=n).map(|i| PI * (0.5 * theta(i)).sin().powi(2)).collect(),
            dr: (0..=n).map(|i| PI * (0.5 * theta(i)).cos().powi(2)).collect(),
        }
    }

    /// `int cos^e` between two points given by their endpoint distances.
    fn integrate_power(&self, q: &TanhSinh, e: f64, (dl_a, _): (f64, f64), (dl_b, dr_b): (f64, f64)) -> Result<f64> {
        let len = dl_b - dl_a;
        if len <= 0.0 {
            return Ok(0.0);
        }
        q.integrate(0.0, len, |n| {
            let l = dl_a + n.from_a;
            let r = dr_b + n.from_b;
            l.min(r).sin().powf(e)
        })
    }
}

/// Lowest eigenvalues `omega^2` of the discretised problem.
///
/// Only `1/2 < lambda < 3/2` is supported: at `lambda = 1/2` the traces carry
/// logarithms that this substitution does not capture, and for
/// `lambda >= 3/2` the lumped masses diverge. The eigenvalue error is
/// `O(n_grid^{-2})`.
pub fn finite_difference_oracle(params: &FieldParams, bc: &SelfAdjointBC, opts: &FdOptions) -> Result<FdSpectrum> {
    if params.regime() != Regime::Middle {
        return Err(Error::Regime(format!(
            "finite-difference oracle needs 1/2 < lambda < 3/2, got {}",
            params.lambda()
        )));
    }
    let n = opts.n_grid;
    if n < 8 {
        return Err(Error::Domain(format!("n_grid = {n} is too small")));
    }
    let l = params.lambda();
    let grid = Grid::cosine(n);
    let q = TanhSinh { rel_tol: 1e-12, max_levels: 10 };
    let pt = |i: usize| (grid.dl[i], grid.dr[i]);
    let mid = |i: usize| (0.5 * (grid.dl[i] + grid.dl[i + 1]), 0.5 * (grid.dr[i] + grid.dr[i + 1]));

    let mut cond = Vec::with_capacity(n);
    for i in 0..n {
        cond.push(1.0 / grid.integrate_power(&q, 2.0 * l - 2.0, pt(i), pt(i + 1))?);
    }
    let mut mass = vec![0.0; n + 1];
    for i in 0..n {
        let m = mid(i);
        mass[i] += grid.integrate_power(&q, 2.0 - 2.0 * l, pt(i), m)?;
        mass[i + 1] += grid.integrate_power(&q, 2.0 - 2.0 * l, m, pt(i + 1))?;
    }
    let shift = (1.0 - l) * (1.0 - l);

    // P = (u(+pi/2), -u(-pi/2)) in the eigenbasis of U
    let u = bc.unitary()?;
    let eig = u.clone().schur().unpack();
    let (v, t) = eig;
    let mut free_cols = Vec::new();
    let mut springs = Vec::new();
    for k in 0..2 {
        let e = t[(k, k)];
        if (e - C64::new(1.0, 0.0)).norm() > DIRICHLET_EIG_TOL {
            free_cols.push(k);
            // boundary term of the quadratic form: cot(theta/2) |p_k|^2
            springs.push((-C64::i() * (C64::new(1.0, 0.0) + e) / (C64::new(1.0, 0.0) - e)).re);
        }
    }
    let m = free_cols.len();
    // endpoint map: (u_N, u_0) = diag(1, -1) V_r q
    let endpoint = |row: usize, col: usize| {
        let s = if row == 0 { 1.0 } else { -1.0 };
        v[(row, free_cols[col])] * s
    };

    let dim = n - 1 + m;
    let mut kk = DMatrix::<C64>::zeros(dim, dim);
    let mut mm = DMatrix::<C64>::zeros(dim, dim);
    // column of B for full node j: list of (reduced index, coefficient)
    let embed = |j: usize| -> Vec<(usize, C64)> {
        if j == 0 {
            (0..m).map(|c| (n - 1 + c, endpoint(1, c))).collect()
        } else if j == n {
            (0..m).map(|c| (n - 1 + c, endpoint(0, c))).collect()
        } else {
            vec![(j - 1, C64::new(1.0, 0.0))]
        }
    };
    let add = |mat: &mut DMatrix<C64>, a: usize, b: usize, val: f64| {
        for &(ra, ca) in &embed(a) {
            for &(rb, cb) in &embed(b) {
                mat[(ra, rb)] += ca.conj() * cb * val;
            }
        }
    };
    for i in 0..n {
        let g = cond[i];
        add(&mut kk, i, i, g);
        add(&mut kk, i + 1, i + 1, g);
        add(&mut kk, i, i + 1, -g);
        add(&mut kk, i + 1, i, -g);
    }
    for (j, &w) in mass.iter().enumerate() {
        add(&mut kk, j, j, shift * w);
        add(&mut mm, j, j, w);
    }
    for (c, s) in springs.iter().enumerate() {
        kk[(n - 1 + c, n - 1 + c)] += C64::new(*s, 0.0);
    }

    let chol = mm
        .cholesky()
        .ok_or_else(|| Error::Convergence("mass matrix is not positive definite".into()))?;
    let linv = chol.l().try_inverse().ok_or_else(|| Error::Convergence("singular mass factor".into()))?;
    let mut h = &linv * kk * linv.adjoint();
    h = (&h + h.adjoint()) * C64::new(0.5, 0.0);
    let mut vals: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals.truncate(opts.n_eigs);
    let warning = (l > 1.4).then(|| {
        format!("lambda = {l} is close to 3/2; the lumped masses near the ends are badly conditioned")
    });
    Ok(FdSpectrum { omega_sq: vals, warning })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::NamedBc;

    #[test]
    fn dirichlet_lambda_one_converges_quadratically() {
        let p = FieldParams::new(1.0).unwrap();
        let bc = SelfAdjointBC::dirichlet();
        let err = |n| {
            let s = finite_difference_oracle(&p, &bc, &FdOptions { n_grid: n, n_eigs: 3 }).unwrap();
            (s.omega_sq[2] - 9.0).abs()
        };
        let (e1, e2) = (err(100), err(200));
        assert!(e2 < e1 / 3.0, "{e1} {e2}");
        assert!(e2 < 1e-2);
    }

    #[test]
    fn neumann_lambda_one_has_zero_mode() {
        let p = FieldParams::new(1.0).unwrap();
        let s = finite_difference_oracle(&p, &SelfAdjointBC::Named(NamedBc::Neumann), &FdOptions::default()).unwrap();
        assert!(s.omega_sq[0].abs() < 1e-10, "{:?}", s.omega_sq);
        assert!((s.omega_sq[1] - 1.0).abs() < 1e-3, "{:?}", s.omega_sq);
    }
}
