//! Truncated Fock-space model of the charges `L+-`, `L0` for the two
//! conditions whose vacuum is not invariant.
//!
//! With `a_n` the annihilation operators of the positive-frequency modes,
//! the mixed condition (family III) gives
//! `i L+ = sum k_n a+_{n+1} a_n - (lambda - 1/2)/2 (a+_0)^2`,
//! `i L- = sum k_n a+_n a_{n+1} - (lambda - 1/2)/2 a_0^2` and
//! `L0 = sum (n + 1/2) a+_n a_n + (lambda - 1/2)^2 / 4`.
//! The Neumann condition at `1 < lambda < 3/2` gives
//! `i L+ = sum_{n>=1} q_n a+_{n+1} a_n - sqrt(2(lambda-1)) a+_1 a+_0`,
//! `i L- = sum_{n>=1} q_n a+_n a_{n+1} - sqrt(2(lambda-1)) a_1 a_0` and
//! `L0 = sum omega_n a+_n a_n + (lambda - 1)`.
//! `L0` is built from these normal-ordered forms, not from the commutator.

use super::ladder::{anomalous_coupling, ladder_coefficients};
use crate::error::{Error, Result};
use crate::modes::{family_omega, Family};
use crate::params::{FieldParams, Regime};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FockFamily {
    /// Neumann condition, `1 < lambda < 3/2`.
    Neumann,
    /// Mixed condition of family III.
    Mixed,
}

/// Modes `0..n_modes` and states with total occupation at most
/// `max_total_occupation`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockTruncation {
    pub n_modes: usize,
    pub max_total_occupation: usize,
}

impl Default for FockTruncation {
    fn default() -> Self {
        FockTruncation { n_modes: 6, max_total_occupation: 6 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockReport {
    pub family: FockFamily,
    pub lambda: f64,
    pub basis_size: usize,
    pub protected_states: usize,
    /// `max |([L+, L-] - 2 L0) psi|` over protected basis states.
    pub commutator_error: f64,
    /// `L0` on the vacuum.
    pub vacuum_l0: f64,
    /// `<n| L0 |n>` for the one-particle states `a+_n |0>`.
    pub one_particle_l0: Vec<f64>,
    /// `omega_n` of the modes.
    pub omegas: Vec<f64>,
}

/// Occupation-number basis, in lexicographic order.
struct Basis {
    states: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl Basis {
    fn new(t: &FockTruncation) -> Basis {
        let mut states = Vec::new();
        let mut cur = vec![0u8; t.n_modes];
        fn rec(pos: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if pos == cur.len() {
                out.push(cur.clone());
                return;
            }
            for k in 0..=left {
                cur[pos] = k as u8;
                rec(pos + 1, left - k, cur, out);
            }
            cur[pos] = 0;
        }
        rec(0, t.max_total_occupation, &mut cur, &mut states);
        let index = states.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Basis { states, index }
    }
}

/// One ladder operator: `true` for a creation operator on the mode.
type Op = (bool, usize);

/// A sparse real matrix stored by columns.
struct Sparse {
    cols: Vec<Vec<(usize, f64)>>,
}

impl Sparse {
    /// Matrix of `sum coef * ops` on the basis; the operator string acts
    /// right to left and images outside the truncation are dropped.
    fn from_terms(basis: &Basis, terms: &[(f64, Vec<Op>)]) -> Sparse {
        let mut cols = Vec::with_capacity(basis.states.len());
        for s in &basis.states {
            let mut col: HashMap<usize, f64> = HashMap::new();
            'term: for (coef, ops) in terms {
                let mut occ: Vec<i32> = s.iter().map(|&x| x as i32).collect();
                let mut amp = *coef;
                for &(create, mode) in ops.iter().rev() {
                    if create {
                        occ[mode] += 1;
                        amp *= (occ[mode] as f64).sqrt();
                    } else {
                        if occ[mode] == 0 {
                            continue 'term;
                        }
                        amp *= (occ[mode] as f64).sqrt();
                        occ[mode] -= 1;
                    }
                }
                let key: Vec<u8> = occ.iter().map(|&x| x as u8).collect();
                if let Some(&j) = basis.index.get(&key) {
                    *col.entry(j).or_insert(0.0) += amp;
                }
            }
            let mut v: Vec<(usize, f64)> = col.into_iter().filter(|(_, a)| *a != 0.0).collect();
            v.sort_by_key(|e| e.0);
            cols.push(v);
        }
        Sparse { cols }
    }

    fn apply(&self, x: &HashMap<usize, f64>) -> HashMap<usize, f64> {
        let mut y = HashMap::new();
        for (&j, &xj) in x {
            for &(i, a) in &self.cols[j] {
                *y.entry(i).or_insert(0.0) += a * xj;
            }
        }
        y
    }
}

fn unit(j: usize) -> HashMap<usize, f64> {
    HashMap::from([(j, 1.0)])
}

/// Builds `i L+`, `i L-` and `L0` on the truncated space and measures how far
/// `[L+, L-] = 2 L0` fails on states whose images stay inside the
/// truncation: total occupation at most `max - 2` and the highest mode empty
/// (the chain `sum k_n a+_{n+1} a_n` is cut after that mode).
pub fn fock_commutator_check(params: &FieldParams, family: FockFamily, trunc: &FockTruncation) -> Result<FockReport> {
    if trunc.max_total_occupation < 4 || trunc.n_modes < 2 {
        return Err(Error::Domain(format!(
            "truncation too small: need max_total_occupation >= 4 and n_modes >= 2, got {trunc:?}"
        )));
    }
    if trunc.max_total_occupation > u8::MAX as usize {
        return Err(Error::Domain("max_total_occupation must fit in a byte".into()));
    }
    let l = params.lambda();
    if params.regime() != Regime::Middle {
        return Err(Error::Regime(format!("Fock model needs 1/2 < lambda < 3/2, got {l}")));
    }
    let n = trunc.n_modes;
    let (fam, first_linear, anomalous, constant) = match family {
        FockFamily::Mixed => {
            let c = anomalous_coupling(params, Family::III)?;
            let terms = vec![(0.5 * c, vec![(true, 0), (true, 0)])];
            (Family::III, 0, terms, 0.25 * c * c)
        }
        FockFamily::Neumann => {
            if l <= 1.0 {
                return Err(Error::Regime(format!("Neumann Fock model needs 1 < lambda < 3/2, got {l}")));
            }
            let c = anomalous_coupling(params, Family::II)?;
            (Family::II, 1, vec![(-c, vec![(true, 1), (true, 0)])], l - 1.0)
        }
    };
    let omegas: Vec<f64> = (0..n).map(|k| family_omega(fam, params, k)).collect::<Result<_>>()?;
    let mut plus = anomalous.clone();
    let mut minus: Vec<(f64, Vec<Op>)> =
        anomalous.iter().map(|(c, ops)| (*c, ops.iter().map(|&(_, m)| (false, m)).rev().collect())).collect();
    for k in first_linear..n - 1 {
        let c = ladder_coefficients(params, fam, k)?;
        plus.push((c, vec![(true, k + 1), (false, k)]));
        minus.push((c, vec![(true, k), (false, k + 1)]));
    }
    let mut zero: Vec<(f64, Vec<Op>)> = omegas.iter().enumerate().map(|(k, &w)| (w, vec![(true, k), (false, k)])).collect();
    zero.push((constant, vec![]));

    let basis = Basis::new(trunc);
    let ip = Sparse::from_terms(&basis, &plus);
    let im = Sparse::from_terms(&basis, &minus);
    let l0 = Sparse::from_terms(&basis, &zero);

    let mut worst: f64 = 0.0;
    let mut protected = 0;
    for (j, s) in basis.states.iter().enumerate() {
        let total: usize = s.iter().map(|&x| x as usize).sum();
        if total + 2 > trunc.max_total_occupation || s[n - 1] != 0 {
            continue;
        }
        protected += 1;
        let e = unit(j);
        // L+- = -i (i L+-), so [L+, L-] = -[i L+, i L-]
        let pm = ip.apply(&im.apply(&e));
        let mp = im.apply(&ip.apply(&e));
        let z = l0.apply(&e);
        let mut keys: Vec<usize> = pm.keys().chain(mp.keys()).chain(z.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        let get = |m: &HashMap<usize, f64>, k: usize| m.get(&k).copied().unwrap_or(0.0);
        let err: f64 = keys
            .iter()
            .map(|&k| (-(get(&pm, k) - get(&mp, k)) - 2.0 * get(&z, k)).powi(2))
            .sum::<f64>()
            .sqrt();
        worst = worst.max(err);
    }

    let vac = basis.index[&vec![0u8; n]];
    let diag = |j: usize| l0.cols[j].iter().find(|e| e.0 == j).map_or(0.0, |e| e.1);
    let one_particle = (0..n)
        .map(|k| {
            let mut occ = vec![0u8; n];
            occ[k] = 1;
            diag(basis.index[&occ])
        })
        .collect();
    Ok(FockReport {
        family,
        lambda: l,
        basis_size: basis.states.len(),
        protected_states: protected,
        commutator_error: worst,
        vacuum_l0: diag(vac),
        one_particle_l0: one_particle,
        omegas,
    })
}
