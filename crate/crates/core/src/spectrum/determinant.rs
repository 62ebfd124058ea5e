use rayon::prelude::*;
use crate::boundary::bc::half_angle;
use crate::boundary::solution::large_lambda_obstruction;
use crate::boundary::{boundary_trace, SelfAdjointBC, Trace};
use crate::error::{Error, Result};
use crate::params::{FieldParams, Regime};
use crate::specfun::roots::{bisect, golden_min};
use crate::C64;
use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

/// `omega` for a given `omega^2`, on the positive real or positive
/// imaginary axis.
pub(crate) fn omega_from_sq(omega_sq: f64) -> C64 {
    if omega_sq >= 0.0 {
        C64::new(omega_sq.sqrt(), 0.0)
    } else {
        C64::new(0.0, (-omega_sq).sqrt())
    }
}

fn column(t: &Trace) -> (C64, C64, C64, C64) {
    (t.dpsi_plus, t.dpsi_minus, t.psi_plus, -t.psi_minus)
}

/// Real function of `omega^2` whose zeros are the eigenvalues.
///
/// For `lambda < 3/2` it is `det(S D + C P)` on the traces of the even and
/// odd solutions, where `S`, `C` are the half-angle matrices of `U`; each
/// column is divided by its trace norm so the value is scale free. For
/// `lambda >= 3/2` it is the product of the coefficients of the
/// non-normalisable branch, each squashed into (-1, 1).
pub fn quantization_determinant(params: &FieldParams, bc: &SelfAdjointBC, omega_sq: f64) -> Result<f64> {
    let omega = omega_from_sq(omega_sq);
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    match params.regime() {
        Regime::Middle | Regime::Edge => {
            let u = bc.unitary()?;
            let (s, cm) = half_angle(&u);
            let t1 = boundary_trace(params, omega, one, zero)?;
            let t2 = boundary_trace(params, omega, zero, one)?;
            let (d1p, d1m, p1p, p1m) = column(&t1);
            let (d2p, d2m, p2p, p2m) = column(&t2);
            let dm = Matrix2::new(d1p, d2p, d1m, d2m);
            let pm = Matrix2::new(p1p, p2p, p1m, p2m);
            let m = s * dm + cm * pm;
            Ok(m.determinant().re / (t1.norm() * t2.norm()))
        }
        Regime::Large | Regime::HalfIntegerLarge { .. } => {
            // The even solution is square integrable iff B1 = 0 and the odd one
            // iff B2 = 0.
            let (b1, _) = large_lambda_obstruction(params, omega, one, zero)?;
            let (b2, _) = large_lambda_obstruction(params, omega, zero, one)?;
            let squash = |b: C64| b.re / (1.0 + b.norm_sqr()).sqrt();
            Ok(squash(b1) * squash(b2))
        }
    }
}

/// Scan settings for [`find_spectrum`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub lo: f64,
    pub hi: f64,
    pub grid_points: usize,
    pub tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { lo: -25.0, hi: 100.0, grid_points: 2001, tol: 1e-10 }
    }
}

/// One eigenvalue. `omega_or_nu` is `omega` for `omega^2 >= 0` and
/// `nu = sqrt(-omega^2)` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub omega_sq: f64,
    pub omega_or_nu: f64,
    pub negative: bool,
    pub multiplicity: u32,
}

impl Eigenvalue {
    fn new(omega_sq: f64, multiplicity: u32) -> Self {
        Eigenvalue {
            omega_sq,
            omega_or_nu: omega_sq.abs().sqrt(),
            negative: omega_sq < 0.0,
            multiplicity,
        }
    }
}

/// Eigenvalues found in a window, with an optional scan-resolution warning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<Eigenvalue>,
    pub warning: Option<String>,
}

impl Spectrum {
    pub fn omega_sq(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|e| e.omega_sq).collect()
    }
}

/// Below this the minimum of |det| between two same-sign grid values counts
/// as a double root.
const DOUBLE_ROOT_TOL: f64 = 1e-8;

/// All eigenvalues `omega^2` in `(lo, hi]`.
///
/// The determinant is sampled on a uniform grid; sign changes are refined by
/// bisection. A local minimum of `|det|` between same-sign samples is refined
/// by golden-section search: if it reaches zero it is reported as a double
/// root, and if it crosses zero the cell held two roots, both are kept, and
/// the result carries a warning.
pub fn find_spectrum(params: &FieldParams, bc: &SelfAdjointBC, opts: &ScanOptions) -> Result<Spectrum> {
    if !(opts.lo < opts.hi) || opts.grid_points < 3 {
        return Err(Error::Domain(format!("bad scan window ({}, {}]", opts.lo, opts.hi)));
    }
    if !params.has_extensions() && classify_is_not_dirichlet(bc)? {
        return Err(Error::BoundaryCondition(format!(
            "lambda = {} admits only the Dirichlet (Friedrichs) extension",
            params.lambda()
        )));
    }
    let f = |x: f64| quantization_determinant(params, bc, x);
    let n = opts.grid_points;
    let step = (opts.hi - opts.lo) / (n - 1) as f64;
    let xs: Vec<f64> = (0..n).map(|i| if i + 1 == n { opts.hi } else { opts.lo + step * i as f64 }).collect();
    // runs on the ambient rayon pool; the CLI sizes it from --threads
    let fs: Vec<f64> = xs.par_iter().map(|&x| f(x)).collect::<Result<_>>()?;
    let mut roots: Vec<Eigenvalue> = Vec::new();
    let mut warning = None;
    let g = |x: f64| f(x).unwrap_or(f64::NAN);
    for i in 0..n - 1 {
        let (a, b) = (xs[i], xs[i + 1]);
        let (fa, fb) = (fs[i], fs[i + 1]);
        if fb == 0.0 {
            roots.push(Eigenvalue::new(b, 1));
            continue;
        }
        if fa == 0.0 {
            if i == 0 && a > opts.lo {
                roots.push(Eigenvalue::new(a, 1));
            }
            continue;
        }
        if fa.signum() != fb.signum() {
            roots.push(Eigenvalue::new(bisect(g, a, b, opts.tol)?, 1));
        }
    }
    // same-sign dips
    for i in 1..n - 1 {
        let (fl, fm, fr) = (fs[i - 1], fs[i], fs[i + 1]);
        if fl == 0.0 || fm == 0.0 || fr == 0.0 {
            continue;
        }
        if !(fl.signum() == fm.signum() && fm.signum() == fr.signum()) {
            continue;
        }
        if !(fm.abs() <= fl.abs() && fm.abs() <= fr.abs()) {
            continue;
        }
        let sgn = fm.signum();
        let (xmin, fmin) = golden_min(|x| sgn * g(x), xs[i - 1], xs[i + 1], 1e-13);
        if fmin < 0.0 {
            roots.push(Eigenvalue::new(bisect(g, xs[i - 1], xmin, opts.tol)?, 1));
            roots.push(Eigenvalue::new(bisect(g, xmin, xs[i + 1], opts.tol)?, 1));
            warning = Some(format!(
                "two eigenvalues inside one scan cell near omega^2 = {xmin:.6}; refine grid_points"
            ));
        } else if fmin.abs() < DOUBLE_ROOT_TOL {
            roots.push(Eigenvalue::new(xmin, 2));
        }
    }
    roots.sort_by(|a, b| a.omega_sq.total_cmp(&b.omega_sq));
    roots.dedup_by(|b, a| (a.omega_sq - b.omega_sq).abs() < 10.0 * opts.tol);
    Ok(Spectrum { eigenvalues: roots, warning })
}

/// An eigenfunction `C1 Psi1 + C2 Psi2` at frequency `omega`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenmode {
    pub omega_sq: f64,
    pub omega: C64,
    pub c1: C64,
    pub c2: C64,
}

/// Coefficient vectors spanning the solution space of the boundary condition
/// at `omega^2`: one vector for a simple root, two for a double root.
pub fn null_vectors(params: &FieldParams, bc: &SelfAdjointBC, omega_sq: f64, multiplicity: u32) -> Result<Vec<(C64, C64)>> {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    if multiplicity >= 2 {
        return Ok(vec![(one, zero), (zero, one)]);
    }
    match params.regime() {
        Regime::Middle | Regime::Edge => {
            let omega = omega_from_sq(omega_sq);
            let u = bc.unitary()?;
            let (s, cm) = half_angle(&u);
            let t1 = boundary_trace(params, omega, one, zero)?;
            let t2 = boundary_trace(params, omega, zero, one)?;
            let (d1p, d1m, p1p, p1m) = column(&t1);
            let (d2p, d2m, p2p, p2m) = column(&t2);
            let m = s * Matrix2::new(d1p / t1.norm(), d2p / t2.norm(), d1m / t1.norm(), d2m / t2.norm())
                + cm * Matrix2::new(p1p / t1.norm(), p2p / t2.norm(), p1m / t1.norm(), p2m / t2.norm());
            // the row of larger norm fixes the kernel of a rank-one matrix
            let r0 = m[(0, 0)].norm_sqr() + m[(0, 1)].norm_sqr();
            let r1 = m[(1, 0)].norm_sqr() + m[(1, 1)].norm_sqr();
            let (a, b) = if r0 >= r1 { (m[(0, 0)], m[(0, 1)]) } else { (m[(1, 0)], m[(1, 1)]) };
            let scale = (a.norm_sqr() + b.norm_sqr()).sqrt();
            if scale == 0.0 {
                return Ok(vec![(one, zero), (zero, one)]);
            }
            Ok(vec![(-b / t1.norm() / scale, a / t2.norm() / scale)])
        }
        Regime::Large | Regime::HalfIntegerLarge { .. } => {
            let omega = omega_from_sq(omega_sq);
            let (b1, _) = large_lambda_obstruction(params, omega, one, zero)?;
            let (b2, _) = large_lambda_obstruction(params, omega, zero, one)?;
            Ok(if b1.norm() <= b2.norm() { vec![(one, zero)] } else { vec![(zero, one)] })
        }
    }
}

/// The first `count` eigenfunctions in the scan window, counted with
/// multiplicity.
pub fn eigenmodes(params: &FieldParams, bc: &SelfAdjointBC, opts: &ScanOptions, count: usize) -> Result<Vec<Eigenmode>> {
    let spec = find_spectrum(params, bc, opts)?;
    let mut out = Vec::new();
    for e in &spec.eigenvalues {
        for (c1, c2) in null_vectors(params, bc, e.omega_sq, e.multiplicity)? {
            if out.len() == count {
                return Ok(out);
            }
            out.push(Eigenmode { omega_sq: e.omega_sq, omega: omega_from_sq(e.omega_sq), c1, c2 });
        }
    }
    Ok(out)
}

fn classify_is_not_dirichlet(bc: &SelfAdjointBC) -> Result<bool> {
    let u = bc.unitary()?;
    Ok((u - Matrix2::identity()).norm() > crate::boundary::bc::FORM_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirichlet_three_quarters() {
        let p = FieldParams::new(0.75).unwrap();
        let s = find_spectrum(&p, &SelfAdjointBC::dirichlet(), &ScanOptions { lo: 0.0, hi: 10.0, ..Default::default() })
            .unwrap();
        let w = s.omega_sq();
        assert_eq!(w.len(), 3, "{w:?}");
        for (got, want) in w.iter().zip([0.5625, 3.0625, 7.5625]) {
            assert!((got - want).abs() < 1e-9);
        }
        assert!(s.warning.is_none());
    }

    #[test]
    fn large_lambda_only_dirichlet() {
        let p = FieldParams::new(2.0).unwrap();
        let s = find_spectrum(&p, &SelfAdjointBC::dirichlet(), &ScanOptions { lo: 0.0, hi: 17.0, ..Default::default() })
            .unwrap();
        let w: Vec<f64> = s.eigenvalues.iter().map(|e| e.omega_or_nu).collect();
        assert_eq!(w.len(), 3);
        for (got, want) in w.iter().zip([2.0, 3.0, 4.0]) {
            assert!((got - want).abs() < 1e-9);
        }
        assert!(find_spectrum(&p, &SelfAdjointBC::neumann(), &ScanOptions::default()).is_err());
    }
}
