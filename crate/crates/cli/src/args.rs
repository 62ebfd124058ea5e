use ads2::boundary::{NamedBc, PauliParams, SelfAdjointBC};
use ads2::config::{OutputFormat, RunConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "ads2", version, about = "Massive scalar field on global AdS2 under self-adjoint boundary conditions")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand. Anything given here overrides the
/// matching field of `--config`.
#[derive(Debug, Args)]
pub struct Common {
    /// JSON run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Worker threads for scans; defaults to 1.
    #[arg(long, global = true, env = "ADS2_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub bc: Option<BcName>,
    /// Boundary condition as JSON, e.g. '{"matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]}'.
    #[arg(long, global = true, conflicts_with = "bc")]
    pub bc_json: Option<String>,
    /// Robin parameter for `--bc robin`, and the coupling for `negative-modes`.
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true)]
    pub theta: Option<f64>,
    #[arg(long, global = true)]
    pub phi: Option<f64>,
    /// Lower end of the omega^2 scan window.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lo: Option<f64>,
    /// Upper end of the omega^2 scan window.
    #[arg(long, global = true)]
    pub hi: Option<f64>,
    #[arg(long, global = true)]
    pub grid_points: Option<usize>,
    /// Bisection tolerance in omega^2.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BcName {
    Dirichlet,
    Neumann,
    Mixed0,
    Mixed90,
    /// `Psi~(+-pi/2) = +-alpha DPsi~(+-pi/2)`.
    Robin,
    /// The one-parameter family mixing the two ends, from `--theta` and `--phi`.
    Pauli,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenfrequencies of the radial operator.
    Spectrum,
    /// Closed-form mode families with their normalisation checks.
    Modes {
        /// I, II, III, IV, V, lambda1_dirichlet or lambda1_neumann.
        #[arg(long, default_value = "i")]
        family: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
        /// Profile samples per mode on the open interval; 0 omits profiles.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Representation carried by the modes of a boundary condition.
    Classify,
    /// Whether boundary conditions are preserved by the ladder generators.
    Invariance {
        /// Also test this many seeded Haar-random conditions.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    /// Map deficiency-space unitaries to trace-form boundary conditions.
    MapU {
        /// U_M as JSON `[[[re, im], [re, im]], [[re, im], [re, im]]]`.
        #[arg(long, conflicts_with = "random")]
        um: Option<String>,
        /// Seeded Haar-random U_M draws.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Boundary energy flux of the eigenmodes.
    Flux {
        /// Evaluate the flux at this coupling; without it only the
        /// flux-killing couplings are reported.
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Negative eigenvalues at lambda = 1 under the symmetric Robin condition.
    NegativeModes,
    /// Commutator identity of the charges in a truncated Fock space.
    FockCheck {
        #[arg(long, value_enum, default_value = "mixed")]
        family: FockFamilyArg,
        #[arg(long, default_value_t = 6)]
        modes: usize,
        #[arg(long, default_value_t = 6)]
        max_occupation: usize,
    },
    /// Rayleigh quotients demonstrating unboundedness below the mass bound.
    Rayleigh {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 3)]
        k_min: u32,
        #[arg(long, default_value_t = 10)]
        k_max: u32,
    },
    /// Regenerate the classification table.
    Table1,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FockFamilyArg {
    Mixed,
    Neumann,
}

impl Common {
    /// `--config` (or the defaults) with the command-line overrides applied.
    pub fn run_config(&self) -> Result<RunConfig, String> {
        let mut c = match &self.config {
            Some(p) => {
                let s = std::fs::read_to_string(p).map_err(|e| format!("reading {}: {e}", p.display()))?;
                RunConfig::from_json(&s).map_err(|e| format!("config {}: {e}", p.display()))?
            }
            None => RunConfig::default(),
        };
        if let Some(l) = self.lambda {
            c.lambda = l;
        }
        if let Some(bc) = self.bc_override()? {
            c.bc = bc;
        }
        if let Some(v) = self.lo {
            c.scan.lo = v;
        }
        if let Some(v) = self.hi {
            c.scan.hi = v;
        }
        if let Some(v) = self.grid_points {
            c.scan.grid_points = v;
        }
        if let Some(v) = self.tol {
            c.scan.tol = v;
        }
        if let Some(f) = self.format {
            c.format = match f {
                Format::Json => OutputFormat::Json,
                Format::Csv => OutputFormat::Csv,
            };
        }
        if self.output.is_some() {
            c.output = self.output.clone();
        }
        if let Some(s) = self.seed {
            c.seed = s;
        }
        c.validate().map_err(|e| e.to_string())?;
        Ok(c)
    }

    fn bc_override(&self) -> Result<Option<SelfAdjointBC>, String> {
        if let Some(j) = &self.bc_json {
            return serde_json::from_str(j).map(Some).map_err(|e| format!("--bc-json: {e}"));
        }
        let Some(name) = self.bc else { return Ok(None) };
        Ok(Some(match name {
            BcName::Dirichlet => SelfAdjointBC::Named(NamedBc::Dirichlet),
            BcName::Neumann => SelfAdjointBC::Named(NamedBc::Neumann),
            BcName::Mixed0 => SelfAdjointBC::Named(NamedBc::Mixed0),
            BcName::Mixed90 => SelfAdjointBC::Named(NamedBc::Mixed90),
            BcName::Robin => {
                let alpha = self.alpha.ok_or("--bc robin needs --alpha")?;
                SelfAdjointBC::SymmetricRobin { alpha }
            }
            BcName::Pauli => SelfAdjointBC::Pauli(PauliParams {
                theta: self.theta.ok_or("--bc pauli needs --theta")?,
                phi: self.phi.unwrap_or(0.0),
            }),
        }))
    }
}
