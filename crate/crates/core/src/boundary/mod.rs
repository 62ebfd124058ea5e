//! Local solutions, boundary traces and the U(2) family of boundary
//! conditions.

pub mod bc;
pub mod solution;

pub use bc::{
    apply_bc, classify_bc, half_angle, relative_residual, BcForm, Mat2, NamedBc, PauliParams,
    RobinParams, SelfAdjointBC,
};
pub use solution::{
    boundary_form, boundary_trace, connection_coefficients, log_connection_coefficients,
    solution_at, spatial_solution, Connection, LogConnection, Trace,
};
