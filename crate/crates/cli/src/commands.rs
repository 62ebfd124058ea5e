use crate::args::{Command, Common, FockFamilyArg};
use crate::output::{num, Report};
use ads2::boundary::{boundary_trace, classify_bc, relative_residual, Mat2, SelfAdjointBC};
use ads2::config::RunConfig;
use ads2::extensions::{deficiency_functions, domain_basis_traces, identity_defect, map_um_with_traces, trace_matrices};
use ads2::flux::{flux_from_trace, flux_invariance_equivalence, flux_killing_beta, BetaSet};
use ads2::modes::{gram_defect, interior_points, kg_gram, mode_ode_residual, Family, ModeFunction};
use ads2::point::Side;
use ads2::sampling::{haar_unitary, seeded_rng};
use ads2::spectrum::{eigenmodes, find_spectrum, negative_modes_robin, rayleigh_parts, ScanOptions};
use ads2::symmetry::{
    classify_representation, fock_commutator_check, is_invariant_bc, named_form, table1, FockFamily,
    FockTruncation, INVARIANCE_TOL,
};
use ads2::{FieldParams, C64};
use rayon::prelude::*;
use serde_json::json;
use std::f64::consts::FRAC_PI_2;

type Res = Result<Report, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn run(command: &Command, common: &Common, cfg: &RunConfig) -> Res {
    let params = FieldParams::new(cfg.lambda).map_err(err)?;
    match command {
        Command::Spectrum => spectrum(&params, cfg),
        Command::Modes { family, count, samples } => modes(&params, cfg, family, *count, *samples),
        Command::Classify => classify(&params, cfg),
        Command::Invariance { random } => invariance(&params, cfg, *random),
        Command::MapU { um, random } => map_u(&params, cfg, um.as_deref(), *random),
        Command::Flux { beta, count } => flux(&params, cfg, *beta, *count),
        Command::NegativeModes => negative(cfg, common.alpha),
        Command::FockCheck { family, modes, max_occupation } => fock(&params, *family, *modes, *max_occupation),
        Command::Rayleigh { a, k_min, k_max } => rayleigh(*a, *k_min, *k_max),
        Command::Table1 => table(),
    }
}

fn spectrum(params: &FieldParams, cfg: &RunConfig) -> Res {
    let s = find_spectrum(params, &cfg.bc, &cfg.scan).map_err(err)?;
    let form = classify_bc(&cfg.bc).map_err(err)?;
    let mut r = Report::new(
        &json!({ "bc_form": form, "eigenvalues": s.eigenvalues }),
        vec!["index", "omega_sq", "omega_or_nu", "negative", "multiplicity"],
    )?;
    for (i, e) in s.eigenvalues.iter().enumerate() {
        r.row(vec![
            i.to_string(),
            num(e.omega_sq),
            num(e.omega_or_nu),
            e.negative.to_string(),
            e.multiplicity.to_string(),
        ]);
    }
    r.warnings.extend(s.warning);
    Ok(r)
}

fn modes(params: &FieldParams, cfg: &RunConfig, family: &str, count: usize, samples: usize) -> Res {
    let fam = Family::from_name(family).map_err(err)?;
    let ms = ModeFunction::first(fam, params, count).map_err(err)?;
    let defect = gram_defect(&kg_gram(&ms).map_err(err)?);
    let rhos = if samples > 0 { interior_points(samples, 0.0) } else { Vec::new() };
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for m in &ms {
        let res = mode_ode_residual(m).map_err(err)?;
        let (c1, c2) = m.coefficients();
        let profile: Vec<[f64; 2]> = rhos.iter().map(|&x| [x, m.profile(x)]).collect();
        entries.push(json!({
            "n": m.n, "omega": m.omega, "norm": m.norm, "c1": c1, "c2": c2,
            "ode_residual": res, "profile": profile,
        }));
        rows.push(vec![m.n.to_string(), num(m.omega), num(m.norm), num(c1.re), num(c1.im), num(c2.re), num(c2.im), num(res)]);
    }
    let mut r = Report::new(
        &json!({
            "family": fam, "gram_defect": defect,
            "orthonormal": defect < cfg.tolerances.gram, "modes": entries,
        }),
        vec!["n", "omega", "norm", "c1_re", "c1_im", "c2_re", "c2_im", "ode_residual"],
    )?;
    r.rows = rows;
    if defect >= cfg.tolerances.gram {
        eprintln!("note: Gram defect {defect:e} exceeds {:e}", cfg.tolerances.gram);
    }
    Ok(r)
}

fn classify(params: &FieldParams, cfg: &RunConfig) -> Res {
    let label = classify_representation(params, &cfg.bc).map_err(err)?;
    let invariance = if params.has_extensions() { Some(is_invariant_bc(params, &cfg.bc).map_err(err)?) } else { None };
    let symbol = label.symbol(params.lambda());
    let mut r = Report::new(
        &json!({
            "bc_form": classify_bc(&cfg.bc).map_err(err)?,
            "label": label, "symbol": symbol, "invariance": invariance,
        }),
        vec!["kind", "symbol", "lambda_hat", "casimir_q", "unitary"],
    )?;
    let kind = serde_json::to_value(label.kind).map_err(err)?;
    r.row(vec![
        kind.as_str().unwrap_or_default().to_string(),
        symbol,
        label.lambda_hat.map(num).unwrap_or_default(),
        num(label.casimir_q),
        label.unitary.to_string(),
    ]);
    Ok(r)
}

fn random_unitaries(seed: u64, n: usize) -> Vec<Mat2> {
    let mut rng = seeded_rng(seed);
    (0..n).map(|_| haar_unitary(&mut rng)).collect()
}

fn invariance(params: &FieldParams, cfg: &RunConfig, random: usize) -> Res {
    let mut bcs = vec![cfg.bc];
    for u in random_unitaries(cfg.seed, random) {
        bcs.push(SelfAdjointBC::from_unitary(&u).map_err(err)?);
    }
    let results: Vec<_> = bcs
        .par_iter()
        .map(|bc| {
            let inv = is_invariant_bc(params, bc)?;
            let named = named_form(&bc.unitary()?, INVARIANCE_TOL);
            Ok((bc, named, inv))
        })
        .collect::<ads2::Result<_>>()
        .map_err(err)?;
    let entries: Vec<_> = results
        .iter()
        .map(|(bc, named, inv)| json!({ "bc": bc, "named": named, "invariant": inv.invariant, "certificate": inv.certificate }))
        .collect();
    let mut r = Report::new(
        &json!({ "lambda": params.lambda(), "entries": entries }),
        vec!["index", "named", "invariant", "analytic", "dynamic", "max_image_residual"],
    )?;
    for (i, (_, named, inv)) in results.iter().enumerate() {
        let named = named.map(|n| serde_json::to_value(n).unwrap().as_str().unwrap_or_default().to_string());
        r.row(vec![
            i.to_string(),
            named.unwrap_or_default(),
            inv.invariant.to_string(),
            inv.certificate.analytic.to_string(),
            inv.certificate.dynamic.to_string(),
            num(inv.certificate.max_image_residual),
        ]);
    }
    Ok(r)
}

fn parse_matrix(s: &str) -> Result<Mat2, String> {
    let m: [[[f64; 2]; 2]; 2] = serde_json::from_str(s).map_err(|e| format!("--um: {e}"))?;
    let e = |i: usize, j: usize| C64::new(m[i][j][0], m[i][j][1]);
    Ok(Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1)))
}

fn map_u(params: &FieldParams, cfg: &RunConfig, um: Option<&str>, random: Option<usize>) -> Res {
    let inputs = match (um, random) {
        (Some(s), _) => vec![parse_matrix(s)?],
        (None, Some(n)) => random_unitaries(cfg.seed, n),
        (None, None) => return Err("map-u needs --um or --random".into()),
    };
    let (a, b) = trace_matrices(params).map_err(err)?;
    let (t1, t2) = deficiency_functions(params).map_err(err)?.traces().map_err(err)?;
    let defect = identity_defect(&a, &b);
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for (i, u_m) in inputs.iter().enumerate() {
        let u = map_um_with_traces(u_m, &a, &b).map_err(err)?;
        let bc = SelfAdjointBC::from_unitary(&u).map_err(err)?;
        let residual = domain_basis_traces(u_m, &t1, &t2)
            .iter()
            .map(|t| relative_residual(&u, t))
            .fold(0.0, f64::max);
        entries.push(json!({ "u_m": SelfAdjointBC::from_unitary(u_m).map_err(err)?, "bc": bc, "residual": residual }));
        let mut row = vec![i.to_string()];
        for z in u.iter() {
            row.push(num(z.re));
            row.push(num(z.im));
        }
        row.push(num(residual));
        rows.push(row);
    }
    // nalgebra iterates column-major
    let mut r = Report::new(
        &json!({ "lambda": params.lambda(), "identity_defect": defect, "entries": entries }),
        vec!["index", "u00_re", "u00_im", "u10_re", "u10_im", "u01_re", "u01_im", "u11_re", "u11_im", "residual"],
    )?;
    r.rows = rows;
    Ok(r)
}

fn flux(params: &FieldParams, cfg: &RunConfig, beta: Option<f64>, count: usize) -> Res {
    let tol = cfg.tolerances.flux;
    let modes = eigenmodes(params, &cfg.bc, &cfg.scan, count).map_err(err)?;
    let mut set = BetaSet::All;
    let mut entries = Vec::new();
    let mut r = Report::new(&(), vec!["omega_sq", "boundary", "beta_kind", "beta", "flux_value", "flux_order", "vanishes"])?;
    for m in &modes {
        let t = boundary_trace(params, m.omega, m.c1, m.c2).map_err(err)?;
        for side in [Side::Plus, Side::Minus] {
            let killing = flux_killing_beta(params, &t, side, tol);
            set = set.intersect(killing, 1e-9);
            let report = beta.map(|b| flux_from_trace(params, b, &t, side, tol));
            let (kind, value) = match killing {
                BetaSet::All => ("all", String::new()),
                BetaSet::Single(b) => ("single", num(b)),
                BetaSet::Empty => ("empty", String::new()),
            };
            let order = report.map(|f| serde_json::to_value(f.order).unwrap().as_str().unwrap_or_default().to_string());
            r.row(vec![
                num(m.omega_sq),
                serde_json::to_value(side).map_err(err)?.as_str().unwrap_or_default().to_string(),
                kind.to_string(),
                value,
                report.map(|f| num(f.value)).unwrap_or_default(),
                order.unwrap_or_default(),
                report.map(|f| f.vanishes.to_string()).unwrap_or_default(),
            ]);
            entries.push(json!({ "omega_sq": m.omega_sq, "boundary": side, "killing_beta": killing, "flux": report }));
        }
    }
    let equivalence = if params.has_extensions() {
        Some(flux_invariance_equivalence(params, &[cfg.bc]).map_err(err)?)
    } else {
        None
    };
    r.result = json!({
        "lambda": params.lambda(), "modes": entries, "killing_beta": set,
        "equivalence": equivalence,
    });
    Ok(r)
}

fn negative(cfg: &RunConfig, alpha: Option<f64>) -> Res {
    let alpha = match (alpha, cfg.bc) {
        (Some(a), _) => a,
        (None, SelfAdjointBC::SymmetricRobin { alpha }) => alpha,
        _ => return Err("negative-modes needs --alpha (or a symmetric_robin bc in the config)".into()),
    };
    let modes = negative_modes_robin(alpha).map_err(err)?;
    // cross-check against the determinant scan at lambda = 1
    let p1 = FieldParams::new(1.0).map_err(err)?;
    let scan = ScanOptions { hi: cfg.scan.hi.min(1.0), ..cfg.scan };
    let s = find_spectrum(&p1, &SelfAdjointBC::SymmetricRobin { alpha }, &scan).map_err(err)?;
    let from_scan: Vec<f64> = s.eigenvalues.iter().filter(|e| e.negative).map(|e| e.omega_sq).collect();
    let mut r = Report::new(
        &json!({ "alpha": alpha, "modes": modes, "scan_negative_omega_sq": from_scan }),
        vec!["parity", "nu", "omega_sq", "residual"],
    )?;
    for m in &modes {
        r.row(vec![
            serde_json::to_value(m.parity).map_err(err)?.as_str().unwrap_or_default().to_string(),
            num(m.nu),
            num(m.omega_sq),
            num(m.residual),
        ]);
    }
    r.warnings.extend(s.warning);
    Ok(r)
}

fn fock(params: &FieldParams, family: FockFamilyArg, modes: usize, max_occupation: usize) -> Res {
    let family = match family {
        FockFamilyArg::Mixed => FockFamily::Mixed,
        FockFamilyArg::Neumann => FockFamily::Neumann,
    };
    let trunc = FockTruncation { n_modes: modes, max_total_occupation: max_occupation };
    let rep = fock_commutator_check(params, family, &trunc).map_err(err)?;
    let mut r = Report::new(&rep, vec!["n", "omega", "one_particle_l0", "vacuum_l0", "commutator_error"])?;
    for (n, (w, l0)) in rep.omegas.iter().zip(&rep.one_particle_l0).enumerate() {
        r.row(vec![n.to_string(), num(*w), num(*l0), num(rep.vacuum_l0), num(rep.commutator_error)]);
    }
    Ok(r)
}

fn rayleigh(a: f64, k_min: u32, k_max: u32) -> Res {
    if k_min > k_max {
        return Err(format!("--k-min {k_min} exceeds --k-max {k_max}"));
    }
    let mut entries = Vec::new();
    let mut r = Report::new(&(), vec!["k", "eta", "quotient", "numerator", "denominator"])?;
    for k in k_min..=k_max {
        let eta = FRAC_PI_2 - 2f64.powi(-(k as i32));
        let (n, d) = rayleigh_parts(a, eta).map_err(err)?;
        entries.push(json!({ "k": k, "eta": eta, "quotient": n / d, "numerator": n, "denominator": d }));
        r.row(vec![k.to_string(), num(eta), num(n / d), num(n), num(d)]);
    }
    r.result = json!({ "a": a, "sweep": entries });
    Ok(r)
}

fn table() -> Res {
    let rows = table1().map_err(err)?;
    let mut r = Report::new(&rows, vec!["lambda_range", "profile", "omega", "bc", "irrep", "unitary", "reproduced"])?;
    for row in &rows {
        r.row(vec![
            row.lambda_range.clone(),
            row.profile.clone(),
            row.omega.clone(),
            row.bc.clone(),
            row.irrep.clone(),
            row.unitary.to_string(),
            row.reproduced.to_string(),
        ]);
        if !row.reproduced {
            r.warnings.push(format!("row '{} / {}' not reproduced", row.lambda_range, row.bc));
        }
    }
    Ok(r)
}
