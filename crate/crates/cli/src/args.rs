use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diraccomb::{CombCouplings, CombParams, QuadratureConfig};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "diraccomb",
    version,
    about = "Band structures and vacuum energies of δ-δ′ combs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vacuum energy per unit cell.
    Energy {
        #[command(flatten)]
        couplings: CouplingArgs,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Energy of one cell with quasi-periodic plates at phase θ.
    Plate {
        #[command(flatten)]
        couplings: CouplingArgs,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[command(flatten)]
        theta: ThetaArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Dispersion k_n(q) and band edges.
    Bands {
        #[command(flatten)]
        couplings: CouplingArgs,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 4)]
        n_bands: usize,
        #[arg(long, default_value_t = 101)]
        theta_points: usize,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Energy as a function of the lattice spacing.
    ScanA {
        #[command(flatten)]
        couplings: CouplingArgs,
        #[arg(long, default_value_t = 0.1)]
        a_min: f64,
        #[arg(long, default_value_t = 5.0)]
        a_max: f64,
        #[arg(long, default_value_t = 50)]
        a_count: usize,
        /// Space the grid logarithmically.
        #[arg(long)]
        log: bool,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Energy over a (γ, Ω) grid at fixed a.
    ScanCouplings {
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma_min: f64,
        #[arg(long, default_value_t = 10.0)]
        gamma_max: f64,
        #[arg(long, default_value_t = 41)]
        gamma_count: usize,
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        omega_min: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        omega_max: f64,
        #[arg(long, default_value_t = 41)]
        omega_count: usize,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// E/(w0 ln w0) for a pure δ comb on a logarithmic w0 grid.
    RatioW0 {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1e-6)]
        w0_min: f64,
        #[arg(long, default_value_t = 1e-1)]
        w0_max: f64,
        #[arg(long, default_value_t = 21)]
        w0_count: usize,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Run the numerical self-checks.
    Verify {
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
}

/// Either the bare couplings `(w0, w1)` or the reduced pair `(Ω, γ)`.
#[derive(Debug, Clone, Copy, Args)]
#[group(required = true, multiple = true)]
pub struct CouplingArgs {
    #[arg(long, requires = "w1", conflicts_with_all = ["omega", "gamma"], allow_hyphen_values = true)]
    pub w0: Option<f64>,
    #[arg(long, requires = "w0", allow_hyphen_values = true)]
    pub w1: Option<f64>,
    #[arg(long, requires = "gamma", conflicts_with_all = ["w0", "w1"], allow_hyphen_values = true)]
    pub omega: Option<f64>,
    #[arg(long, requires = "omega", allow_hyphen_values = true)]
    pub gamma: Option<f64>,
}

impl CouplingArgs {
    pub fn params(&self, a: f64) -> Result<CombParams, CliError> {
        match (self.w0, self.w1, self.omega, self.gamma) {
            (Some(w0), Some(w1), None, None) => Ok(CombCouplings::new(w0, w1, a)?.params()),
            (None, None, Some(omega), Some(gamma)) => Ok(CombParams::new(omega, gamma, a)?),
            _ => Err(CliError::Usage(
                "give exactly one of --w0/--w1 or --omega/--gamma".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ThetaArgs {
    /// Single Bloch phase θ = qa.
    #[arg(long, conflicts_with = "theta_points", allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Closed grid on [-π, π].
    #[arg(long)]
    pub theta_points: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct QuadArgs {
    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub max_subdivisions: Option<usize>,
    /// Upper momentum cutoff; the default is max(40/a, 40).
    #[arg(long)]
    pub truncation_k: Option<f64>,
    #[arg(long)]
    pub root_tol: Option<f64>,
}

impl QuadArgs {
    pub fn config(&self) -> Result<QuadratureConfig, CliError> {
        let base = QuadratureConfig::default();
        let cfg = QuadratureConfig {
            abs_tol: self.abs_tol.unwrap_or(base.abs_tol),
            rel_tol: self.rel_tol.unwrap_or(base.rel_tol),
            max_subdivisions: self.max_subdivisions.unwrap_or(base.max_subdivisions),
            truncation_k: self.truncation_k.or(base.truncation_k),
            root_tol: self.root_tol.unwrap_or(base.root_tol),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Grid of `count` points from `lo` to `hi` inclusive.
pub fn grid(lo: f64, hi: f64, count: usize, log: bool, name: &str) -> Result<Vec<f64>, CliError> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) || count < 2 {
        return Err(CliError::Usage(format!(
            "{name} range needs lo < hi and count >= 2 (got {lo}..{hi}, {count})"
        )));
    }
    if log && lo <= 0.0 {
        return Err(CliError::Usage(format!("{name} log grid needs lo > 0")));
    }
    let last = (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            let t = i as f64 / last;
            match (i, log) {
                (0, _) => lo,
                (i, _) if i == count - 1 => hi,
                (_, true) => 10f64.powf(lo.log10() + t * (hi.log10() - lo.log10())),
                (_, false) => lo + t * (hi - lo),
            }
        })
        .collect())
}
