//! Special functions and numerical building blocks.

pub mod gamma;
pub mod hyper;
pub mod jacobi;
pub mod quad;
pub mod roots;

pub use gamma::{digamma, digamma_c, gamma, gamma_real, pochhammer, rgamma, rgamma_deriv};
pub use hyper::{hyp2f1, SeriesControl};
pub use jacobi::{jacobi_norm, jacobi_p, legendre_p};
