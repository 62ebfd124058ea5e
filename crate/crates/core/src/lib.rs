//! Numerics for a free massive scalar field on global AdS2 under every
//! self-adjoint boundary condition of the radial operator
//! `-d^2/drho^2 + lambda(lambda-1) sec^2 rho` on `(-pi/2, pi/2)`.

pub mod boundary;
pub mod config;
pub mod error;
pub mod extensions;
pub mod flux;
pub mod modes;
pub mod params;
pub mod point;
pub mod sampling;
pub mod specfun;
pub mod spectrum;
pub mod symmetry;

pub use error::{Error, Result};
pub use params::{deficiency_indices, FieldParams, Regime};

/// Complex double used throughout.
pub type C64 = num_complex::Complex64;
