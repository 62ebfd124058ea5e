//! Self-adjoint boundary conditions, parametrised by a 2x2 unitary `U`:
//! `(I - U) (DPsi~+, DPsi~-)^T = i (I + U) (Psi~+, -Psi~-)^T`.

use super::solution::Trace;
use crate::error::{Error, Result};
use crate::C64;
use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

pub type Mat2 = Matrix2<C64>;

/// Tolerance for recognising the special forms of `U`.
pub const FORM_TOL: f64 = 1e-12;
/// Tolerance on `U^dagger U - I`.
pub const UNITARY_TOL: f64 = 1e-10;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The four conditions that get names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedBc {
    /// U = I
    Dirichlet,
    /// U = -I
    Neumann,
    /// U = diag(1, -1): Psi~(pi/2) = DPsi~(-pi/2) = 0
    Mixed0,
    /// U = diag(-1, 1): DPsi~(pi/2) = Psi~(-pi/2) = 0
    Mixed90,
}

/// `DPsi~+ = alpha Psi~+ - beta Psi~-`, `DPsi~- = conj(beta) Psi~+ + gamma Psi~-`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobinParams {
    pub alpha: f64,
    pub beta_re: f64,
    pub beta_im: f64,
    pub gamma: f64,
}

/// `U = [[cos 2theta, e^{i phi} sin 2theta], [e^{-i phi} sin 2theta, -cos 2theta]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliParams {
    pub theta: f64,
    pub phi: f64,
}

/// A self-adjoint boundary condition in any of its accepted spellings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelfAdjointBC {
    Named(NamedBc),
    /// Row-major `U`, each entry as `[re, im]`.
    Matrix([[[f64; 2]; 2]; 2]),
    Robin(RobinParams),
    Pauli(PauliParams),
    /// `Psi~(+-pi/2) = +-alpha DPsi~(+-pi/2)`; `alpha = 0` is Dirichlet.
    SymmetricRobin { alpha: f64 },
}

/// Canonical description of a condition, as returned by [`classify_bc`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "form")]
pub enum BcForm {
    Dirichlet,
    Neumann,
    Mixed0,
    Mixed90,
    /// `I - U` invertible.
    Robin { alpha: f64, beta: C64, gamma: f64 },
    /// `I + U` invertible: `Psi~+ = a DPsi~+ - b DPsi~-`, `Psi~- = conj(b) DPsi~+ + c DPsi~-`.
    InverseRobin { a: f64, b: C64, c: f64 },
    /// Both `I - U` and `I + U` singular.
    Pauli { theta: f64, phi: f64 },
}

impl SelfAdjointBC {
    pub fn dirichlet() -> Self {
        SelfAdjointBC::Named(NamedBc::Dirichlet)
    }

    pub fn neumann() -> Self {
        SelfAdjointBC::Named(NamedBc::Neumann)
    }

    pub fn from_unitary(u: &Mat2) -> Result<Self> {
        check_unitary(u)?;
        let e = |i: usize, j: usize| [u[(i, j)].re, u[(i, j)].im];
        Ok(SelfAdjointBC::Matrix([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]))
    }

    /// The unitary matrix `U`.
    pub fn unitary(&self) -> Result<Mat2> {
        let u = match *self {
            SelfAdjointBC::Named(n) => match n {
                NamedBc::Dirichlet => Mat2::identity(),
                NamedBc::Neumann => -Mat2::identity(),
                NamedBc::Mixed0 => Mat2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)),
                NamedBc::Mixed90 => Mat2::new(c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)),
            },
            SelfAdjointBC::Matrix(m) => {
                let e = |i: usize, j: usize| c(m[i][j][0], m[i][j][1]);
                Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
            }
            SelfAdjointBC::Robin(r) => {
                let beta = c(r.beta_re, r.beta_im);
                let k = Mat2::new(c(r.alpha, 0.0), beta, beta.conj(), c(-r.gamma, 0.0));
                robin_to_unitary(&k)?
            }
            SelfAdjointBC::Pauli(p) => {
                let (s, co) = (2.0 * p.theta).sin_cos();
                let e = C64::from_polar(1.0, p.phi);
                Mat2::new(c(co, 0.0), e * s, e.conj() * s, c(-co, 0.0))
            }
            SelfAdjointBC::SymmetricRobin { alpha } => {
                // Psi~ = alpha DPsi~ at both ends in the (Psi~+, -Psi~-) convention
                // gives U = -(alpha + i)/(alpha - i) I.
                let z = -(c(alpha, 1.0)) / c(alpha, -1.0);
                Mat2::identity() * z
            }
        };
        check_unitary(&u)?;
        Ok(u)
    }
}

/// Errors unless `U^dagger U = I` to [`UNITARY_TOL`].
pub fn check_unitary(u: &Mat2) -> Result<()> {
    let defect = (u.adjoint() * u - Mat2::identity()).norm();
    if !(defect <= UNITARY_TOL) {
        return Err(Error::BoundaryCondition(format!("matrix is not unitary (defect {defect:.3e})")));
    }
    Ok(())
}

/// `U = (K + i)^{-1} (K - i)` for the Hermitian Robin matrix `K`.
fn robin_to_unitary(k: &Mat2) -> Result<Mat2> {
    let i = Mat2::identity() * c(0.0, 1.0);
    let inv = (k + i)
        .try_inverse()
        .ok_or_else(|| Error::BoundaryCondition("singular Robin matrix".into()))?;
    Ok(inv * (k - i))
}

/// Classifies `U` into its canonical form.
pub fn classify_bc(bc: &SelfAdjointBC) -> Result<BcForm> {
    let u = bc.unitary()?;
    let near = |m: &Mat2| (u - m).norm() < FORM_TOL;
    let id = Mat2::identity();
    let d = |a: f64, b: f64| Mat2::new(c(a, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(b, 0.0));
    if near(&id) {
        return Ok(BcForm::Dirichlet);
    }
    if near(&(-id)) {
        return Ok(BcForm::Neumann);
    }
    if near(&d(1.0, -1.0)) {
        return Ok(BcForm::Mixed0);
    }
    if near(&d(-1.0, 1.0)) {
        return Ok(BcForm::Mixed90);
    }
    let i = c(0.0, 1.0);
    if (id - u).determinant().norm() > FORM_TOL {
        let k = (id - u).try_inverse().unwrap() * (id + u) * i;
        return Ok(BcForm::Robin { alpha: k[(0, 0)].re, beta: k[(0, 1)], gamma: -k[(1, 1)].re });
    }
    if (id + u).determinant().norm() > FORM_TOL {
        let j = (id + u).try_inverse().unwrap() * (id - u) * (-i);
        return Ok(BcForm::InverseRobin { a: j[(0, 0)].re, b: -j[(0, 1)], c: -j[(1, 1)].re });
    }
    // eigenvalues {1, -1}: U is a traceless Hermitian unitary
    let theta = 0.5 * u[(0, 0)].re.clamp(-1.0, 1.0).acos();
    let phi = if u[(0, 1)].norm() > FORM_TOL { u[(0, 1)].arg() } else { 0.0 };
    Ok(BcForm::Pauli { theta, phi })
}

/// Residual `(I - U) D - i (I + U) P` of the condition on a trace. Zero iff
/// the trace satisfies the condition.
pub fn apply_bc(u: &Mat2, t: &Trace) -> [C64; 2] {
    let id = Mat2::identity();
    let dv = Vector2::new(t.dpsi_plus, t.dpsi_minus);
    let pv = Vector2::new(t.psi_plus, -t.psi_minus);
    let r = (id - u) * dv - (id + u) * pv * c(0.0, 1.0);
    [r[0], r[1]]
}

/// `|apply_bc| / |trace|`, scale free.
pub fn relative_residual(u: &Mat2, t: &Trace) -> f64 {
    let r = apply_bc(u, t);
    let n = t.norm();
    if n == 0.0 {
        return 0.0;
    }
    (r[0].norm_sqr() + r[1].norm_sqr()).sqrt() / n
}

/// Half-angle matrices `S = sin(Theta/2)`, `C = cos(Theta/2)` of `U = e^{i Theta}`.
///
/// Both are Hermitian and commute. Multiplying the condition by
/// `U^{-1/2}` turns it into `S D + C P = 0`, whose determinant on real traces
/// is real. The overall sign of the pair depends on the square-root branch
/// and is fixed per `U`.
pub fn half_angle(u: &Mat2) -> (Mat2, Mat2) {
    let det = u.determinant();
    let tr = u.trace();
    let sd = det.sqrt();
    // pick the branch of sqrt(det) that keeps tr + 2 sqrt(det) away from zero
    let delta = if (tr + 2.0 * sd).norm() >= (tr - 2.0 * sd).norm() { sd } else { -sd };
    let tau = (tr + 2.0 * delta).sqrt();
    let root = (u + Mat2::identity() * delta) / tau;
    let root_inv = root.adjoint();
    let cm = (root + root_inv) * c(0.5, 0.0);
    let sm = (root - root_inv) * c(0.0, -0.5);
    (sm, cm)
}
