//! Regularised boundary traces against values obtained from a 300-digit
//! evaluation of the hypergeometric solutions at points 1e-40 and 1e-60
//! from the ends, with the literal regularised derivative taken by
//! numerical differentiation. Frozen here.

use ads2::boundary::{boundary_trace, Trace};
use ads2::{FieldParams, C64};

const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

type Case = (f64, C64, u8, [C64; 4]);

const CASES: &[Case] = &[
    (0.75, c(1.3, 0.0), 1, [c(-1.4220362779964578, 0.0), c(-1.4220362779964578, 0.0), c(-1.0247825993683769, 0.0), c(1.0247825993683769, 0.0)]),
    (0.75, c(1.3, 0.0), 2, [c(8.9348407978609177e-1, 0.0), c(-8.9348407978609177e-1, 0.0), c(-5.9332566635657109e-2, 0.0), c(-5.9332566635657109e-2, 0.0)]),
    (0.55, c(2.2, 0.0), 1, [c(-6.0581613806345669, 0.0), c(-6.0581613806345669, 0.0), c(-4.7501180555675061e-1, 0.0), c(4.7501180555675061e-1, 0.0)]),
    (0.55, c(2.2, 0.0), 2, [c(-4.3910522255869642, 0.0), c(4.3910522255869642, 0.0), c(-5.0936273434941532e-1, 0.0), c(-5.0936273434941532e-1, 0.0)]),
    (1.25, c(1.3, 0.0), 1, [c(-5.9332566635657109e-2, 0.0), c(-5.9332566635657109e-2, 0.0), c(-1.4541453398518645, 0.0), c(1.4541453398518645, 0.0)]),
    (1.25, c(1.3, 0.0), 2, [c(6.2966672772250494e-1, 0.0), c(-6.2966672772250494e-1, 0.0), c(-1.4220362779964578, 0.0), c(-1.4220362779964578, 0.0)]),
    (1.25, c(0.0, 0.4), 1, [c(1.2032005966972257, 0.0), c(1.2032005966972257, 0.0), c(6.5150041815170884e-1, 0.0), c(-6.5150041815170884e-1, 0.0)]),
    (1.25, c(0.0, 0.4), 2, [c(1.2937286856067559, 0.0), c(-1.2937286856067559, 0.0), c(1.5316355266996281, 0.0), c(1.5316355266996281, 0.0)]),
    (0.75, c(1.0, 1.0), 1, [c(-1.0656440854862837, -4.2625763419451348), c(-1.0656440854862837, -4.2625763419451348), c(-1.5937896343391442, -2.1250528457855256), c(1.5937896343391442, 2.1250528457855256)]),
    (0.75, c(1.0, 1.0), 2, [c(1.964393223007111, -2.6191909640094813), c(-1.964393223007111, 2.6191909640094813), c(4.2486035789479062e-1, -1.6994414315791625), c(4.2486035789479062e-1, -1.6994414315791625)]),
    (0.5, c(1.3, 0.0), 1, [c(4.455098658483386e-1, 0.0), c(4.455098658483386e-1, 0.0), c(2.1018132276794671, 0.0), c(-2.1018132276794671, 0.0)]),
    (0.5, c(1.3, 0.0), 2, [c(-1.0499086052867571e-1, 0.0), c(1.0499086052867571e-1, 0.0), c(1.7492964360539663, 0.0), c(1.7492964360539663, 0.0)]),
    (0.5, c(1.0, 1.0), 1, [c(5.1390114579528813e-1, 1.0278022915905763), c(5.1390114579528813e-1, 1.0278022915905763), c(5.0728504041168043, 1.9232824755089985), c(-5.0728504041168043, -1.9232824755089985)]),
    (0.5, c(1.0, 1.0), 2, [c(-3.5900224760823117e-1, 7.1800449521646233e-1), c(3.5900224760823117e-1, -7.1800449521646233e-1), c(1.4406051416263241, 2.8628256784790504), c(1.4406051416263241, 2.8628256784790504)]),
    (0.5, c(0.5, 0.0), 1, [c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0), c(-2.0, 0.0)]),
    (0.5, c(0.5, 0.0), 2, [c(-5.0e-1, 0.0), c(5.0e-1, 0.0), c(3.8629436111989062e-1, 0.0), c(3.8629436111989062e-1, 0.0)]),
];

#[test]
fn analytic_traces_match_the_numerical_limits() {
    for &(lambda, omega, which, expect) in CASES {
        let p = FieldParams::new(lambda).unwrap();
        let (c1, c2) = if which == 1 { (c(1.0, 0.0), c(0.0, 0.0)) } else { (c(0.0, 0.0), c(1.0, 0.0)) };
        let t: Trace = boundary_trace(&p, omega, c1, c2).unwrap();
        let scale = expect.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for (got, want) in t.as_array().iter().zip(expect.iter()) {
            assert!(
                (got - want).norm() < 1e-10 * scale,
                "lambda={lambda} omega={omega} Psi{which}: got {got}, want {want}"
            );
        }
    }
}
