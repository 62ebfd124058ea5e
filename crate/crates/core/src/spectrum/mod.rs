//! Eigenvalues `omega^2` of the self-adjoint extensions.

mod determinant;
mod fd;
mod negative;
mod rayleigh;

pub use determinant::{eigenmodes, null_vectors, Eigenmode, find_spectrum, quantization_determinant, Eigenvalue, ScanOptions, Spectrum};
pub use fd::{finite_difference_oracle, FdOptions, FdSpectrum};
pub use negative::{negative_modes_robin, NegativeMode, Parity};
pub use rayleigh::{core_integral, rayleigh_parts, rayleigh_quotient_unbounded, rayleigh_sweep};
