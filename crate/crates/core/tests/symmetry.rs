use ads2::boundary::{NamedBc, SelfAdjointBC};
use ads2::modes::{Family, ModeFunction};
use ads2::sampling::{haar_unitary, seeded_rng};
use ads2::spectrum::{find_spectrum, ScanOptions};
use ads2::symmetry::{
    classify_representation, classify_representation_with, fock_commutator_check, is_invariant_bc,
    ladder_coefficients, ladder_norms, ladder_target, unitarity_products, verify_ladder_numerically, ClassifyOptions,
    Direction, FockFamily, FockTruncation, LadderTarget, RepKind,
};
use ads2::FieldParams;

const NAMED: [NamedBc; 4] = [NamedBc::Dirichlet, NamedBc::Neumann, NamedBc::Mixed0, NamedBc::Mixed90];

#[test]
fn ladder_relations_hold_for_every_family() {
    let mut cases = vec![(Family::V, 0.5), (Family::Lambda1Dirichlet, 1.0), (Family::Lambda1Neumann, 1.0)];
    for l in [0.6, 0.85, 1.15, 1.4] {
        cases.extend([(Family::I, l), (Family::II, l), (Family::III, l), (Family::IV, l)]);
    }
    cases.extend([(Family::I, 2.0), (Family::I, 3.3)]);
    for (f, l) in cases {
        let p = FieldParams::new(l).unwrap();
        let first = matches!(f, Family::Lambda1Dirichlet | Family::Lambda1Neumann) as usize;
        for n in first..first + 5 {
            let e = verify_ladder_numerically(&p, f, n).unwrap();
            assert!(e < 1e-8, "{f:?} lambda {l} n {n}: {e:e}");
        }
    }
}

#[test]
fn lowest_weight_states_are_annihilated() {
    for (f, l) in [(Family::I, 0.75), (Family::I, 2.5), (Family::II, 0.75), (Family::V, 0.5)] {
        let p = FieldParams::new(l).unwrap();
        assert_eq!(ladder_target(&p, f, 0, Direction::Minus).unwrap(), LadderTarget::Zero, "{f:?}");
    }
    // the mixed and Neumann (lambda > 1) ground states leak into negative frequencies
    let p = FieldParams::new(1.25).unwrap();
    assert!(matches!(
        ladder_target(&p, Family::III, 0, Direction::Minus).unwrap(),
        LadderTarget::Mode { conjugate: true, .. }
    ));
    assert!(matches!(
        ladder_target(&p, Family::II, 1, Direction::Minus).unwrap(),
        LadderTarget::Mode { n: 0, conjugate: true, .. }
    ));
}

#[test]
fn ladder_coefficients_match_closed_forms() {
    let p = FieldParams::new(0.8).unwrap();
    for n in 0..6 {
        let nf = n as f64;
        let k = ladder_coefficients(&p, Family::III, n).unwrap();
        assert!((k * k - (1.3 + nf) * (nf + 0.7)).abs() < 1e-12);
        let q = ladder_coefficients(&p, Family::II, n).unwrap();
        assert!((q * q - (nf + 1.0) * (0.4 + nf)).abs() < 1e-12);
    }
    assert!(ladder_coefficients(&p, Family::I, 0).is_err());
}

#[test]
fn named_conditions_are_invariant_and_random_ones_are_not() {
    let mut rng = seeded_rng(101);
    for l in [0.75, 1.25] {
        let p = FieldParams::new(l).unwrap();
        for b in NAMED {
            let inv = is_invariant_bc(&p, &SelfAdjointBC::Named(b)).unwrap();
            assert!(inv.invariant && inv.certificate.analytic && inv.certificate.dynamic, "{b:?} at {l}");
        }
        for _ in 0..25 {
            let bc = SelfAdjointBC::from_unitary(&haar_unitary(&mut rng)).unwrap();
            let inv = is_invariant_bc(&p, &bc).unwrap();
            assert!(!inv.invariant && !inv.certificate.dynamic, "lambda {l}: {bc:?}");
        }
    }
}

#[test]
fn at_the_edge_only_dirichlet_is_invariant() {
    let p = FieldParams::new(0.5).unwrap();
    for b in NAMED {
        let inv = is_invariant_bc(&p, &SelfAdjointBC::Named(b)).unwrap();
        assert_eq!(inv.invariant, b == NamedBc::Dirichlet, "{b:?}");
    }
}

#[test]
fn invariance_is_undefined_without_extensions() {
    let p = FieldParams::new(1.5).unwrap();
    assert!(is_invariant_bc(&p, &SelfAdjointBC::dirichlet()).is_err());
}

#[test]
fn classification_examples() {
    let label = |l: f64, b: NamedBc| classify_representation(&FieldParams::new(l).unwrap(), &SelfAdjointBC::Named(b)).unwrap();
    let d = label(0.75, NamedBc::Dirichlet);
    assert_eq!((d.kind, d.lambda_hat, d.unitary), (RepKind::DiscretePlus, Some(0.75), true));
    let n = label(0.75, NamedBc::Neumann);
    assert_eq!((n.kind, n.lambda_hat, n.unitary), (RepKind::DiscretePlus, Some(0.25), true));
    assert_eq!(n.symbol(0.75), "D+_{1-lambda}");
    let f = label(1.25, NamedBc::Neumann);
    assert_eq!((f.kind, f.unitary), (RepKind::NonUnitaryDiscrete, false));
    assert_eq!(f.symbol(1.25), "F+_{1-lambda}");
    assert_eq!(label(0.9, NamedBc::Mixed0).kind, RepKind::NoLabel);
    assert_eq!(label(0.5, NamedBc::Dirichlet).kind, RepKind::MockDiscrete);
    assert_eq!(label(3.0, NamedBc::Dirichlet).symbol(3.0), "D+_{lambda}");
    // Casimir of the label equals the mass squared
    for (l, b) in [(0.75, NamedBc::Dirichlet), (0.75, NamedBc::Neumann), (1.25, NamedBc::Neumann)] {
        assert!((label(l, b).casimir_q - l * (l - 1.0)).abs() < 1e-12);
    }
    let p1 = FieldParams::new(1.0).unwrap();
    let strict = classify_representation_with(&p1, &SelfAdjointBC::neumann(), &ClassifyOptions { quotient_zero_mode: false }).unwrap();
    assert_eq!(strict.kind, RepKind::NoLabel);
    assert_eq!(label(1.0, NamedBc::Neumann).symbol(1.0), "D+_{1}");
    assert!(classify_representation(&FieldParams::new(2.0).unwrap(), &SelfAdjointBC::neumann()).is_err());
}

#[test]
fn one_particle_l0_is_vacuum_plus_frequency() {
    for (family, l) in [(FockFamily::Mixed, 0.75), (FockFamily::Mixed, 1.3), (FockFamily::Neumann, 1.25)] {
        let r = fock_commutator_check(&FieldParams::new(l).unwrap(), family, &FockTruncation::default()).unwrap();
        assert!(r.commutator_error < 1e-10, "{family:?} {l}: {:e}", r.commutator_error);
        // only modes below the top one are protected
        for n in 0..r.omegas.len() - 1 {
            let want = r.vacuum_l0 + r.omegas[n];
            assert!((r.one_particle_l0[n] - want).abs() < 1e-10, "{family:?} {l} n {n}");
        }
    }
}

#[test]
fn vacuum_l0_is_frozen() {
    let v = |family, l: f64| {
        fock_commutator_check(&FieldParams::new(l).unwrap(), family, &FockTruncation::default()).unwrap().vacuum_l0
    };
    assert!((v(FockFamily::Mixed, 0.75) - 0.015625).abs() < 1e-12);
    assert!((v(FockFamily::Neumann, 1.25) - 0.25).abs() < 1e-12);
    assert!((v(FockFamily::Mixed, 1.1) - 0.09).abs() < 1e-12);
}

#[test]
fn truncation_limits_are_enforced() {
    let p = FieldParams::new(0.75).unwrap();
    assert!(fock_commutator_check(&p, FockFamily::Mixed, &FockTruncation { n_modes: 6, max_total_occupation: 3 }).is_err());
    assert!(fock_commutator_check(&p, FockFamily::Neumann, &FockTruncation::default()).is_err());
}

#[test]
fn discrete_series_unitarity_inequalities() {
    // D+_lambda with mu = lambda: every product is non-negative for k >= 0
    for l in [0.55, 0.75, 1.25, 2.0] {
        for k in 0..20 {
            let (lo, hi) = unitarity_products(l, l, k);
            assert!(lo >= -1e-12 && hi >= 0.0, "lambda {l} k {k}");
        }
        // and the lowering product vanishes on the lowest weight
        assert!(unitarity_products(l, l, 0).0.abs() < 1e-12);
    }
    // the Neumann tower at 1 < lambda < 3/2 starts at omega_0 = lambda - 1,
    // where the lowering norm is negative
    let l = 1.25;
    let (down0, _) = ladder_norms(l * (l - 1.0), l - 1.0);
    assert!(down0 < 0.0);
    let (down, _) = ladder_norms(l * (l - 1.0), l);
    assert!(down.abs() < 1e-12);
}

#[test]
fn neumann_spacing_witnesses_non_unitarity() {
    for l in [1.1, 1.25, 1.4] {
        let p = FieldParams::new(l).unwrap();
        let s = find_spectrum(&p, &SelfAdjointBC::neumann(), &ScanOptions { lo: -5.0, hi: 20.0, grid_points: 1001, tol: 1e-13 }).unwrap();
        let w: Vec<f64> = s.eigenvalues.iter().map(|e| e.omega_or_nu).collect();
        assert!((w[1] - w[0] - (3.0 - 2.0 * l)).abs() < 1e-8, "lambda {l}");
        assert!((w[2] - w[1] - 1.0).abs() < 1e-8);
        let m0 = ModeFunction::new(Family::II, &p, 0).unwrap();
        assert!((m0.omega - w[0]).abs() < 1e-8);
    }
}
