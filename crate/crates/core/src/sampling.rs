//! Seeded random draws of boundary conditions for scans and checks.

use crate::boundary::{Mat2, RobinParams};
use crate::C64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rand_distr::StandardNormal;

/// Deterministic generator used by every randomised scan.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A Haar-distributed 2x2 unitary: QR of a complex Gaussian matrix with the
/// phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let mut g = || C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let z = Mat2::new(g(), g(), g(), g());
    let qr = z.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut out = q;
    for k in 0..2 {
        let d = r[(k, k)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..2 {
            out[(i, k)] *= ph;
        }
    }
    out
}

/// Robin parameters with entries drawn uniformly from `[-scale, scale]`.
pub fn random_robin<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> RobinParams {
    let mut u = || rng.gen_range(-scale..=scale);
    RobinParams { alpha: u(), beta_re: u(), beta_im: u(), gamma: u() }
}
