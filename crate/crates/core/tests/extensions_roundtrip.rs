use ads2::boundary::relative_residual;
use ads2::extensions::{
    deficiency_functions, domain_basis_traces, identity_defect, map_um_with_traces, trace_matrices,
};
use ads2::sampling::{haar_unitary, seeded_rng};
use ads2::FieldParams;

#[test]
fn identity_across_lambda() {
    for l in [0.5, 0.55, 0.75, 1.0, 1.25, 1.45] {
        let p = FieldParams::new(l).unwrap();
        let (a, b) = trace_matrices(&p).unwrap();
        let d = identity_defect(&a, &b);
        assert!(d < 1e-8, "lambda {l}: {d:e}");
    }
}

#[test]
fn random_round_trips_satisfy_the_image_condition() {
    let mut rng = seeded_rng(11);
    for l in [0.5, 0.8, 1.3] {
        let p = FieldParams::new(l).unwrap();
        let (a, b) = trace_matrices(&p).unwrap();
        let (t1, t2) = deficiency_functions(&p).unwrap().traces().unwrap();
        let mut prev = None;
        for _ in 0..50 {
            let u_m = haar_unitary(&mut rng);
            let u = map_um_with_traces(&u_m, &a, &b).unwrap();
            assert!((u.adjoint() * u - ads2::boundary::Mat2::identity()).norm() < 1e-10);
            for t in domain_basis_traces(&u_m, &t1, &t2) {
                let r = relative_residual(&u, &t);
                assert!(r < 1e-7, "lambda {l}: residual {r:e}");
            }
            if let Some(q) = prev {
                let diff: ads2::boundary::Mat2 = u - q;
                assert!(diff.iter().map(|z| z.norm()).fold(0.0, f64::max) > 1e-6);
            }
            prev = Some(u);
        }
    }
}
