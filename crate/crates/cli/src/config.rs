use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use circle_sqm::coulomb::CoulombSystem;
use circle_sqm::numerics::{Suite, SuiteConfig};
use circle_sqm::oscillator::OscillatorSystem;
use circle_sqm::{Branch, CircleGeometry};

use crate::Failure;

pub const THREADS_ENV: &str = "CIRCLE_SQM_THREADS";

#[derive(Debug, Parser)]
#[command(name = "circle-sqm", version, about = "Singular oscillator and Coulomb systems on a circle")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels, sorted by energy.
    Spectrum(SpectrumArgs),
    /// Samples of one wavefunction on a uniform interior grid.
    Wavefunction(WavefunctionArgs),
    /// Run a validation suite; exits 1 if any check fails.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    Oscillator,
    Coulomb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchArg {
    Plus,
    Minus,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Plus => Branch::Plus,
            BranchArg::Minus => Branch::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file (written atomically); standard output if omitted.
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SystemArgs {
    #[arg(long, value_enum)]
    pub system: SystemKind,
    /// Oscillator frequency ω.
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Coulomb coupling μ.
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 1.0)]
    pub k1: f64,
    /// Branch of the singular term; all admissible branches if omitted
    /// (spectrum), plus otherwise.
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Number of levels per branch (n = 0..levels-1).
    #[arg(long, default_value_t = 5)]
    pub levels: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Radial quantum number.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// oscillator-fd, coulomb-fd, norms, specfun, contraction or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Coarse FD grid (interior nodes) for the oscillator; the fine grid has 2N+1.
    #[arg(long, default_value_t = 4096)]
    pub oscillator_grid: usize,
    /// Coarse FD grid (interior nodes) for the Coulomb system.
    #[arg(long, default_value_t = 8192)]
    pub coulomb_grid: usize,
    /// Steps of the coarse ODE residual grid.
    #[arg(long, default_value_t = 200)]
    pub residual_steps: usize,
    #[arg(long, default_value_t = 1e-5)]
    pub oscillator_tol: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub coulomb_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub norm_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub specfun_tol: f64,
    /// Minimum observed convergence order.
    #[arg(long, default_value_t = 1.8)]
    pub min_order: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl ValidateArgs {
    pub fn suite(&self) -> Result<Suite, Failure> {
        Suite::parse(&self.suite).ok_or_else(|| {
            Failure::Config(format!(
                "unknown suite '{}' (expected oscillator-fd, coulomb-fd, norms, specfun, contraction or all)",
                self.suite
            ))
        })
    }

    pub fn suite_config(&self) -> Result<SuiteConfig, Failure> {
        if self.oscillator_grid < 16 || self.coulomb_grid < 16 {
            return Err(Failure::Config("FD grids need at least 16 interior nodes".into()));
        }
        if self.residual_steps < 2 {
            return Err(Failure::Config("residual grid needs at least 2 steps".into()));
        }
        for (name, tol) in [
            ("oscillator-tol", self.oscillator_tol),
            ("coulomb-tol", self.coulomb_tol),
            ("norm-tol", self.norm_tol),
            ("specfun-tol", self.specfun_tol),
        ] {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(Failure::Config(format!("--{name} must be positive, got {tol}")));
            }
        }
        Ok(SuiteConfig {
            oscillator_grid: self.oscillator_grid,
            coulomb_grid: self.coulomb_grid,
            residual_steps: self.residual_steps,
            oscillator_tolerance: self.oscillator_tol,
            coulomb_tolerance: self.coulomb_tol,
            norm_tolerance: self.norm_tol,
            specfun_tolerance: self.specfun_tol,
            min_order: self.min_order,
            ..SuiteConfig::default()
        })
    }
}

/// A validated physical system.
#[derive(Debug, Clone, Copy)]
pub enum System {
    Oscillator(OscillatorSystem),
    Coulomb(CoulombSystem),
}

impl SystemArgs {
    /// Builds the system for `branch`, checking every invariant.
    pub fn build(&self, branch: Branch) -> Result<System, Failure> {
        let geometry = CircleGeometry::new(self.radius)?;
        Ok(match self.system {
            SystemKind::Oscillator => System::Oscillator(OscillatorSystem::new(geometry, self.omega, self.k1, branch)?),
            SystemKind::Coulomb => System::Coulomb(CoulombSystem::new(geometry, self.mu, self.k1, branch)?),
        })
    }

    /// The requested branch, or every admissible one.
    pub fn branches(&self) -> Vec<Branch> {
        match self.branch {
            Some(b) => vec![b.into()],
            None => Branch::admissible(self.k1),
        }
    }
}

/// Sizes the global rayon pool from `CIRCLE_SQM_THREADS` when set.
pub fn init_thread_pool() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Config(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Config(format!("cannot size thread pool: {e}")))
}
