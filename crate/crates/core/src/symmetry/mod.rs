//! The sl(2, R) structure: ladder actions on boundary traces, invariance of
//! boundary conditions, representation labels, ladder coefficients of the
//! mode families and a truncated Fock-space model of the quantum charges.

mod fock;
mod ladder;
mod table;

pub use fock::{fock_commutator_check, FockFamily, FockReport, FockTruncation};
pub use ladder::{
    anomalous_coupling, apply_delta, ladder_coefficients, ladder_target, verify_ladder_numerically, LadderTarget,
};
pub use table::{table1, Table1Row};

use crate::boundary::{apply_bc, Mat2, NamedBc, SelfAdjointBC, Trace};
use crate::error::{Error, Result};
use crate::params::{FieldParams, Regime};
use crate::spectrum::{eigenmodes, ScanOptions};
use crate::C64;
use serde::{Deserialize, Serialize};

/// `L+` or `L-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Plus,
    Minus,
}

/// Image of the boundary trace of a solution at frequency `omega` under
/// `delta_-` or `delta_+`.
///
/// For `1/2 < lambda < 3/2`, `delta_-` multiplies the value at `+-pi/2` by
/// `+-(omega - 1 + lambda)` and the derivative by `+-(omega - lambda)`. At
/// `lambda = 1/2` both are multiplied by `+-(omega - 1/2)` and the derivative
/// also picks up `-4` times the value. `delta_+` is `delta_-` with
/// `omega -> -omega`.
pub fn ladder_action_trace(params: &FieldParams, omega: C64, t: &Trace, dir: Direction) -> Result<Trace> {
    let w = match dir {
        Direction::Minus => omega,
        Direction::Plus => -omega,
    };
    let l = params.lambda();
    match params.regime() {
        Regime::Middle => {
            let (a, b) = (w - 1.0 + l, w - l);
            Ok(Trace {
                psi_plus: a * t.psi_plus,
                psi_minus: -a * t.psi_minus,
                dpsi_plus: b * t.dpsi_plus,
                dpsi_minus: -b * t.dpsi_minus,
            })
        }
        Regime::Edge => {
            let a = w - 0.5;
            Ok(Trace {
                psi_plus: a * t.psi_plus,
                psi_minus: -a * t.psi_minus,
                dpsi_plus: a * t.dpsi_plus - 4.0 * t.psi_plus,
                dpsi_minus: -a * t.dpsi_minus - 4.0 * t.psi_minus,
            })
        }
        _ => Err(Error::Regime(format!(
            "ladder action on traces needs 1/2 <= lambda < 3/2, got {l}"
        ))),
    }
}

/// Distance below which `U` counts as diagonal with entries `+-1`.
pub const INVARIANCE_TOL: f64 = 1e-8;
/// Largest boundary-condition residual of a ladder image that still counts
/// as satisfying the condition.
pub const CERTIFICATE_TOL: f64 = 1e-7;
/// Number of eigenmodes the dynamic certificate transforms.
pub const CERTIFICATE_MODES: usize = 3;

/// Evidence behind an invariance verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceCertificate {
    /// Verdict from the form of `U` alone.
    pub analytic: bool,
    /// Verdict from transforming eigenmodes.
    pub dynamic: bool,
    /// `omega^2` of the modes that were transformed.
    pub modes_omega_sq: Vec<f64>,
    /// Largest relative residual of the condition on the `L-+` images.
    pub max_image_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Invariance {
    pub invariant: bool,
    pub certificate: InvarianceCertificate,
}

/// The named condition `U` equals to within `tol`, if any.
pub fn named_form(u: &Mat2, tol: f64) -> Option<NamedBc> {
    if u[(0, 1)].norm() > tol || u[(1, 0)].norm() > tol {
        return None;
    }
    let sign = |z: C64| {
        if (z - 1.0).norm() <= tol {
            Some(1)
        } else if (z + 1.0).norm() <= tol {
            Some(-1)
        } else {
            None
        }
    };
    match (sign(u[(0, 0)])?, sign(u[(1, 1)])?) {
        (1, 1) => Some(NamedBc::Dirichlet),
        (-1, -1) => Some(NamedBc::Neumann),
        (1, -1) => Some(NamedBc::Mixed0),
        _ => Some(NamedBc::Mixed90),
    }
}

fn analytic_invariance(params: &FieldParams, u: &Mat2) -> bool {
    match (params.regime(), named_form(u, INVARIANCE_TOL)) {
        (Regime::Edge, Some(NamedBc::Dirichlet)) => true,
        (Regime::Edge, _) => false,
        (_, named) => named.is_some(),
    }
}

fn certificate_scan(hi: f64) -> ScanOptions {
    ScanOptions { lo: -60.0, hi, grid_points: 1201, tol: 1e-12 }
}

/// Whether the condition is preserved by `L+-`.
///
/// Decided twice: from the form of `U`, and by transforming the traces of
/// the lowest eigenmodes with `L-` and `L+` and testing the condition on the
/// images. A disagreement between the two is reported as an error.
pub fn is_invariant_bc(params: &FieldParams, bc: &SelfAdjointBC) -> Result<Invariance> {
    if !params.has_extensions() {
        return Err(Error::Regime(format!(
            "lambda = {} has a unique extension; invariance is only decided for 1/2 <= lambda < 3/2",
            params.lambda()
        )));
    }
    let u = bc.unitary()?;
    let analytic = analytic_invariance(params, &u);

    let mut modes = Vec::new();
    for hi in [60.0, 240.0] {
        modes = eigenmodes(params, bc, &certificate_scan(hi), CERTIFICATE_MODES)?;
        if modes.len() == CERTIFICATE_MODES {
            break;
        }
    }
    if modes.is_empty() {
        return Err(Error::Convergence("no eigenvalues found for the dynamic certificate".into()));
    }
    let mut worst: f64 = 0.0;
    for m in &modes {
        let t = crate::boundary::boundary_trace(params, m.omega, m.c1, m.c2)?;
        for dir in [Direction::Minus, Direction::Plus] {
            let img = ladder_action_trace(params, m.omega, &t, dir)?;
            let r = apply_bc(&u, &img);
            let res = (r[0].norm_sqr() + r[1].norm_sqr()).sqrt() / img.norm().max(t.norm());
            worst = worst.max(res);
        }
    }
    let dynamic = worst < CERTIFICATE_TOL;
    let certificate = InvarianceCertificate {
        analytic,
        dynamic,
        modes_omega_sq: modes.iter().map(|m| m.omega_sq).collect(),
        max_image_residual: worst,
    };
    if analytic != dynamic {
        return Err(Error::Consistency(format!(
            "invariance of U = {u:?} at lambda = {}: analytic test says {analytic}, \
             ladder images give residual {worst:e}",
            params.lambda()
        )));
    }
    Ok(Invariance { invariant: analytic, certificate })
}

/// Kind of representation carried by the one-particle modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepKind {
    /// `D+` with lowest weight `lambda_hat > 1/2`.
    DiscretePlus,
    /// `D+_{1/2}`.
    MockDiscrete,
    /// `F+_{1-lambda}`: positive and negative frequencies mix.
    NonUnitaryDiscrete,
    /// Non-invariant condition, or positive and negative frequency modes
    /// forming a non-unitary representation without a label here.
    NoLabel,
    PrincipalSeries,
    ComplementarySeries,
}

/// Representation label, serialised as `{kind, lambda_hat, casimir_q, unitary}`
/// plus `mu` for the continuous series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RepLabel {
    pub kind: RepKind,
    pub lambda_hat: Option<f64>,
    pub casimir_q: f64,
    pub unitary: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu: Option<f64>,
}

impl RepLabel {
    fn discrete(kind: RepKind, lambda_hat: f64, unitary: bool) -> Self {
        RepLabel { kind, lambda_hat: Some(lambda_hat), casimir_q: lambda_hat * (lambda_hat - 1.0), unitary, mu: None }
    }

    fn none(q: f64) -> Self {
        RepLabel { kind: RepKind::NoLabel, lambda_hat: None, casimir_q: q, unitary: false, mu: None }
    }

    /// Short name in the notation `D+_{...}`, `F+_{...}` or `--`.
    pub fn symbol(&self, lambda: f64) -> String {
        let hat = self.lambda_hat.unwrap_or(f64::NAN);
        let sub = if (hat - lambda).abs() < 1e-12 && (lambda - 0.5).abs() > 1e-12 && (lambda - 1.0).abs() > 1e-12 {
            "lambda".to_string()
        } else if (hat - (1.0 - lambda)).abs() < 1e-12 && (lambda - 0.5).abs() > 1e-12 {
            "1-lambda".to_string()
        } else if (hat - 0.5).abs() < 1e-12 {
            "1/2".to_string()
        } else {
            format!("{hat}")
        };
        match self.kind {
            RepKind::DiscretePlus | RepKind::MockDiscrete => format!("D+_{{{sub}}}"),
            RepKind::NonUnitaryDiscrete => format!("F+_{{{sub}}}"),
            RepKind::NoLabel => "--".into(),
            RepKind::PrincipalSeries => format!("P^{{{}}}_{{is}}", self.mu.unwrap_or(f64::NAN)),
            RepKind::ComplementarySeries => format!("C^{{{}}}_{{{hat}}}", self.mu.unwrap_or(f64::NAN)),
        }
    }
}

/// Options for [`classify_representation_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    /// At `lambda = 1` with the Neumann condition, identify solutions that
    /// differ by a constant. Without it the zero-frequency mode leaves no
    /// invariant vacuum and the result is unlabelled.
    pub quotient_zero_mode: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { quotient_zero_mode: true }
    }
}

pub fn classify_representation(params: &FieldParams, bc: &SelfAdjointBC) -> Result<RepLabel> {
    classify_representation_with(params, bc, &ClassifyOptions::default())
}

/// Representation formed by the positive-frequency modes of the condition.
pub fn classify_representation_with(params: &FieldParams, bc: &SelfAdjointBC, opts: &ClassifyOptions) -> Result<RepLabel> {
    let l = params.lambda();
    let q = params.mass_sq();
    let u = bc.unitary()?;
    if !params.has_extensions() {
        return match named_form(&u, INVARIANCE_TOL) {
            Some(NamedBc::Dirichlet) => Ok(RepLabel::discrete(RepKind::DiscretePlus, l, true)),
            _ => Err(Error::BoundaryCondition(format!(
                "lambda = {l} admits only the Dirichlet (Friedrichs) extension"
            ))),
        };
    }
    if !is_invariant_bc(params, bc)?.invariant {
        return Ok(RepLabel::none(q));
    }
    let named = named_form(&u, INVARIANCE_TOL).expect("invariant conditions are named");
    Ok(match (params.regime(), named) {
        (Regime::Edge, _) => RepLabel::discrete(RepKind::MockDiscrete, 0.5, true),
        (_, NamedBc::Dirichlet) => RepLabel::discrete(RepKind::DiscretePlus, l, true),
        (_, NamedBc::Neumann) if l < 1.0 => RepLabel::discrete(RepKind::DiscretePlus, 1.0 - l, true),
        (_, NamedBc::Neumann) if l == 1.0 => {
            if opts.quotient_zero_mode {
                RepLabel::discrete(RepKind::DiscretePlus, 1.0, true)
            } else {
                RepLabel::none(q)
            }
        }
        (_, NamedBc::Neumann) => RepLabel::discrete(RepKind::NonUnitaryDiscrete, 1.0 - l, false),
        (_, NamedBc::Mixed0 | NamedBc::Mixed90) => RepLabel::none(q),
    })
}

/// The two products whose non-negativity unitarity requires for the
/// `L0`-eigenvector with `omega = mu + k` in a representation with Casimir
/// `lambda(lambda - 1)`: `|L- phi|^2 = (k+mu-lambda)(k+mu+lambda-1)` and
/// `|L+ phi|^2 = (k+mu+lambda)(k+mu-lambda+1)`.
pub fn unitarity_products(lambda: f64, mu: f64, k: i64) -> (f64, f64) {
    let w = k as f64 + mu;
    ((w - lambda) * (w + lambda - 1.0), (w + lambda) * (w - lambda + 1.0))
}

/// Norms `-q + omega^2 -+ omega` of `L-+ phi` for an `L0`-eigenvector.
pub fn ladder_norms(q: f64, omega: f64) -> (f64, f64) {
    (-q + omega * omega - omega, -q + omega * omega + omega)
}

/// Label of the irreducible unitary representation with parameters
/// `(lambda, mu)`, with `lambda = 1/2 + i s` allowed for the principal
/// series. `None` when the pair is not unitary.
pub fn uir_label(lambda: C64, mu: f64) -> Option<RepLabel> {
    let eps = 1e-12;
    if lambda.im.abs() > eps {
        let s = lambda.im;
        if (lambda.re - 0.5).abs() > eps || s <= 0.0 || !(mu > -0.5 && mu <= 0.5) {
            return None;
        }
        return Some(RepLabel {
            kind: RepKind::PrincipalSeries,
            lambda_hat: Some(s),
            casimir_q: -0.25 - s * s,
            unitary: true,
            mu: Some(mu),
        });
    }
    let l = lambda.re;
    if l > 0.0 && l < 0.5 && mu.abs() < l {
        return Some(RepLabel {
            kind: RepKind::ComplementarySeries,
            lambda_hat: Some(l),
            casimir_q: l * (l - 1.0),
            unitary: true,
            mu: Some(mu),
        });
    }
    if (l - 0.5).abs() < eps && (mu - 0.5).abs() < eps {
        return Some(RepLabel::discrete(RepKind::MockDiscrete, 0.5, true));
    }
    if l > 0.5 && (mu - l).abs() < eps {
        return Some(RepLabel::discrete(RepKind::DiscretePlus, l, true));
    }
    if l > 0.5 && l < 1.0 && (mu - (1.0 - l)).abs() < eps {
        return Some(RepLabel::discrete(RepKind::DiscretePlus, 1.0 - l, true));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_minus_scales_middle_traces() {
        let p = FieldParams::new(0.8).unwrap();
        let t = Trace {
            psi_plus: C64::new(1.0, 0.0),
            psi_minus: C64::new(1.0, 0.0),
            dpsi_plus: C64::new(0.2, 0.0),
            dpsi_minus: C64::new(-0.2, 0.0),
        };
        let img = ladder_action_trace(&p, C64::new(1.3, 0.0), &t, Direction::Minus).unwrap();
        assert!((img.psi_plus - 1.1).norm() < 1e-14);
        assert!((img.psi_minus + 1.1).norm() < 1e-14);
        assert!((img.dpsi_plus - 0.1).norm() < 1e-14);
        assert!((img.dpsi_minus - 0.1).norm() < 1e-14);
    }

    #[test]
    fn delta_minus_at_edge_has_extra_term() {
        let p = FieldParams::new(0.5).unwrap();
        let t = Trace {
            psi_plus: C64::new(0.3, 0.0),
            psi_minus: C64::new(0.0, 0.0),
            dpsi_plus: C64::new(2.0, 0.0),
            dpsi_minus: C64::new(0.0, 0.0),
        };
        let img = ladder_action_trace(&p, C64::new(1.5, 0.0), &t, Direction::Minus).unwrap();
        assert!((img.dpsi_plus - (2.0 - 1.2)).norm() < 1e-14);
    }

    #[test]
    fn unitarity_products_match_ladder_norms() {
        for (l, mu, k) in [(0.8, 0.8, 3), (1.3, 0.1, -2), (0.3, 0.2, 5)] {
            let (a, b) = unitarity_products(l, mu, k);
            let (na, nb) = ladder_norms(l * (l - 1.0), mu + k as f64);
            assert!((a - na).abs() < 1e-12 && (b - nb).abs() < 1e-12);
        }
    }

    #[test]
    fn continuous_series_labels() {
        let p = uir_label(C64::new(0.5, 2.0), 0.25).unwrap();
        assert_eq!(p.kind, RepKind::PrincipalSeries);
        assert!(p.casimir_q < -0.25);
        for k in -5..5 {
            let (a, b) = unitarity_products(0.3, 0.1, k);
            assert!(a >= 0.0 && b >= 0.0);
        }
        let c = uir_label(C64::new(0.3, 0.0), 0.1).unwrap();
        assert_eq!(c.kind, RepKind::ComplementarySeries);
        assert!(c.casimir_q > -0.25 && c.casimir_q < 0.0);
        assert!(uir_label(C64::new(0.3, 0.0), 0.4).is_none());
        assert!((uir_label(C64::new(0.7, 0.0), 0.3).unwrap().lambda_hat.unwrap() - 0.3).abs() < 1e-12);
    }
}
