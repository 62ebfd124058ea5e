use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Mass parameter of the field. `lambda >= 1/2` and `M^2 = lambda(lambda-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldParams {
    lambda: f64,
}

/// Which of the structurally different cases a given `lambda` falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `lambda >= 3/2`, not a half-integer: unique self-adjoint extension.
    Large,
    /// `lambda = k + 1/2` with `k >= 1`: unique extension, logarithmic expansions.
    HalfIntegerLarge { k: u32 },
    /// `1/2 < lambda < 3/2`: a U(2) family of extensions, power-law traces.
    Middle,
    /// `lambda = 1/2`: a U(2) family with logarithmic traces.
    Edge,
}

/// Tolerance used to snap `lambda` onto a half-integer.
pub const HALF_INTEGER_SNAP: f64 = 1e-12;

impl FieldParams {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.5 - HALF_INTEGER_SNAP {
            return Err(Error::Domain(format!("lambda = {lambda} must be >= 1/2")));
        }
        Ok(FieldParams { lambda: lambda.max(0.5) })
    }

    /// Builds the parameters from `M^2 >= -1/4`, taking the root `lambda >= 1/2`.
    pub fn from_mass_sq(m2: f64) -> Result<Self> {
        if !m2.is_finite() || m2 < -0.25 {
            return Err(Error::Domain(format!("M^2 = {m2} is below the bound -1/4")));
        }
        Self::new(0.5 + (0.25 + m2).sqrt())
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mass_sq(&self) -> f64 {
        self.lambda * (self.lambda - 1.0)
    }

    /// `Some(k)` when `lambda = k + 1/2`.
    pub fn half_integer_k(&self) -> Option<u32> {
        let k = (self.lambda - 0.5).round();
        ((self.lambda - 0.5 - k).abs() < HALF_INTEGER_SNAP).then_some(k as u32)
    }

    pub fn regime(&self) -> Regime {
        match self.half_integer_k() {
            Some(0) => Regime::Edge,
            Some(k) => Regime::HalfIntegerLarge { k },
            None if self.lambda < 1.5 => Regime::Middle,
            None => Regime::Large,
        }
    }

    /// True when the operator has a family of self-adjoint extensions.
    pub fn has_extensions(&self) -> bool {
        matches!(self.regime(), Regime::Middle | Regime::Edge)
    }
}

/// Deficiency indices of the minimal operator: `(0,0)` for `lambda >= 3/2`
/// and `(2,2)` below.
pub fn deficiency_indices(params: &FieldParams) -> (u32, u32) {
    if params.has_extensions() {
        (2, 2)
    } else {
        (0, 0)
    }
}
