//! Run configuration shared by the command-line tool and the bindings.

use crate::boundary::SelfAdjointBC;
use crate::error::{Error, Result};
use crate::flux::FLUX_TOL;
use crate::spectrum::ScanOptions;
use serde::{Deserialize, Serialize};

/// Version stamped on every serialised artefact.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Threshold on the scale-free flux value.
    pub flux: f64,
    /// Threshold on the Klein-Gordon Gram defect reported by `modes`.
    pub gram: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { flux: FLUX_TOL, gram: 1e-8 }
    }
}

/// Everything a run needs besides the subcommand's own flags.
///
/// Missing fields take their defaults; unknown fields are rejected.
/// [`RunConfig::to_canonical_json`] of a parsed config parses back to the
/// same config and serialises to the same bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub schema: u32,
    pub lambda: f64,
    pub bc: SelfAdjointBC,
    pub scan: ScanOptions,
    pub tolerances: Tolerances,
    pub format: OutputFormat,
    /// Destination of the machine-readable output; standard output if absent.
    pub output: Option<String>,
    /// Seed for the randomised checks.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            schema: SCHEMA_VERSION,
            lambda: 0.75,
            bc: SelfAdjointBC::dirichlet(),
            scan: ScanOptions::default(),
            tolerances: Tolerances::default(),
            format: OutputFormat::Json,
            output: None,
            seed: 20240101,
        }
    }
}

impl RunConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let c: RunConfig = serde_json::from_str(s)?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Config(format!("schema {} is not supported (expected {SCHEMA_VERSION})", self.schema)));
        }
        if !(self.lambda.is_finite() && self.lambda >= 0.5) {
            return Err(Error::Config(format!("lambda = {} must be >= 1/2", self.lambda)));
        }
        if !(self.scan.lo < self.scan.hi) || self.scan.grid_points < 3 || !(self.scan.tol > 0.0) {
            return Err(Error::Config(format!("bad scan window {:?}", self.scan)));
        }
        if !(self.tolerances.flux > 0.0 && self.tolerances.gram > 0.0) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        self.bc.unitary().map_err(|e| Error::Config(format!("bc: {e}")))?;
        Ok(())
    }

    /// Compact JSON with fields in declaration order.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("RunConfig always serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config_fills_defaults() {
        let c = RunConfig::from_json(r#"{"lambda": 1.25, "bc": {"named": "neumann"}}"#).unwrap();
        assert_eq!(c.lambda, 1.25);
        assert_eq!(c.scan, ScanOptions::default());
        let again = RunConfig::from_json(&c.to_canonical_json()).unwrap();
        assert_eq!(again.to_canonical_json(), c.to_canonical_json());
    }

    #[test]
    fn unknown_fields_and_bad_values_are_rejected() {
        assert!(RunConfig::from_json(r#"{"lamda": 1.0}"#).is_err());
        assert!(RunConfig::from_json(r#"{"lambda": 0.2}"#).is_err());
        assert!(RunConfig::from_json(r#"{"schema": 2}"#).is_err());
    }
}
