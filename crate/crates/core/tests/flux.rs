use ads2::boundary::{boundary_trace, NamedBc, SelfAdjointBC, Trace};
use ads2::flux::{
    energy_flux, flux_from_trace, flux_invariance_equivalence, flux_killing_beta, BetaSet, FluxOrder, FLUX_TOL,
};
use ads2::modes::{Family, ModeFunction};
use ads2::point::Side;
use ads2::sampling::{haar_unitary, seeded_rng};
use ads2::{FieldParams, C64};

fn mode_trace(family: Family, lambda: f64, n: usize) -> (FieldParams, Trace) {
    let p = FieldParams::new(lambda).unwrap();
    let m = ModeFunction::new(family, &p, n).unwrap();
    let (c1, c2) = m.coefficients();
    (p, boundary_trace(&p, C64::new(m.omega, 0.0), c1, c2).unwrap())
}

fn conformal(lambda: f64) -> f64 {
    (1.0 - lambda) / (3.0 - 2.0 * lambda)
}

fn killing(family: Family, lambda: f64, n: usize) -> BetaSet {
    let (p, t) = mode_trace(family, lambda, n);
    let a = flux_killing_beta(&p, &t, Side::Plus, FLUX_TOL);
    let b = flux_killing_beta(&p, &t, Side::Minus, FLUX_TOL);
    a.intersect(b, 1e-9)
}

#[test]
fn dirichlet_modes_carry_no_flux_for_any_coupling() {
    for l in [0.5, 0.6, 0.9, 1.2, 1.4] {
        let f = if l == 0.5 { Family::V } else { Family::I };
        for n in 0..3 {
            assert_eq!(killing(f, l, n), BetaSet::All, "lambda {l} n {n}");
        }
    }
}

#[test]
fn neumann_and_mixed_modes_need_the_conformal_coupling() {
    for l in [0.6, 0.75, 0.9, 1.1, 1.25, 1.4] {
        for f in [Family::II, Family::III, Family::IV] {
            for n in 0..3 {
                match killing(f, l, n) {
                    BetaSet::Single(b) => assert!((b - conformal(l)).abs() < 1e-10, "{f:?} {l} {n}: {b}"),
                    other => panic!("{f:?} {l} {n}: {other:?}"),
                }
            }
        }
    }
}

#[test]
fn flux_orders() {
    let (p, t) = mode_trace(Family::II, 0.75, 0);
    assert_eq!(flux_from_trace(&p, 0.0, &t, Side::Plus, FLUX_TOL).order, FluxOrder::Divergent);
    // at the conformal value the divergent and finite parts both vanish
    let r = flux_from_trace(&p, conformal(0.75), &t, Side::Plus, FLUX_TOL);
    assert!(r.vanishes && r.order == FluxOrder::Zero);
    // a generic solution (not an eigenmode) keeps a finite part at the conformal value
    let g = boundary_trace(&p, C64::new(1.3, 0.0), C64::new(1.0, 0.0), C64::new(0.4, 0.0)).unwrap();
    assert_eq!(flux_from_trace(&p, conformal(0.75), &g, Side::Plus, FLUX_TOL).order, FluxOrder::Finite);
}

#[test]
fn edge_neumann_cannot_be_made_flux_free() {
    let p = FieldParams::new(0.5).unwrap();
    let t = boundary_trace(&p, C64::new(1.3, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)).unwrap();
    assert!(t.psi_plus.norm() > 0.1);
    assert_eq!(flux_killing_beta(&p, &t, Side::Plus, FLUX_TOL), BetaSet::Empty);
    let r = flux_from_trace(&p, 0.25, &t, Side::Plus, FLUX_TOL);
    assert_eq!(r.order, FluxOrder::SubDivergent);
}

#[test]
fn no_flux_without_extensions() {
    let p = FieldParams::new(2.0).unwrap();
    let m = ModeFunction::new(Family::I, &p, 1).unwrap();
    let (c1, c2) = m.coefficients();
    let r = energy_flux(&p, 0.37, c1, c2, C64::new(m.omega, 0.0), Side::Minus, FLUX_TOL).unwrap();
    assert!(r.vanishes);
}

#[test]
fn flux_and_invariance_single_out_the_same_conditions() {
    let mut rng = seeded_rng(77);
    for l in [0.6, 1.1, 0.5] {
        let p = FieldParams::new(l).unwrap();
        let mut bcs: Vec<SelfAdjointBC> = [NamedBc::Dirichlet, NamedBc::Neumann, NamedBc::Mixed0, NamedBc::Mixed90]
            .into_iter()
            .map(SelfAdjointBC::Named)
            .collect();
        for _ in 0..12 {
            bcs.push(SelfAdjointBC::from_unitary(&haar_unitary(&mut rng)).unwrap());
        }
        let r = flux_invariance_equivalence(&p, &bcs).unwrap();
        assert!(r.all_equivalent, "lambda {l}: {:?}", r.entries.iter().filter(|e| !e.equivalent).collect::<Vec<_>>());
        let invariant = r.entries.iter().filter(|e| e.invariant).count();
        assert_eq!(invariant, if l == 0.5 { 1 } else { 4 }, "lambda {l}");
    }
}
