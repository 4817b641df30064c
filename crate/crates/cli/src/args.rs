use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fqext::fourier::DEFAULT_GRID_CAP;

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "fqext",
    version,
    about = "Fourier analysis and extension estimates over F_q^d"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-stratum profile of the Fourier transform of the surface measure.
    Decay(DecayArgs),
    /// Exact and estimated extension constants R*(2 -> r).
    Norm(NormArgs),
    /// Hamming sweep over a list of fields.
    Sweep(SweepArgs),
    /// Identity suite on seeded random functions.
    Verify(VerifyArgs),
    /// Kloosterman sum scans against (s+1) q^(s/2).
    Kloosterman(KloostermanArgs),
    /// Additive energy of a variety or imported point set.
    Energy(EnergyArgs),
    /// Sizes of the zero-count strata.
    Strata(StrataArgs),
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Decay(a) => &a.output,
            Command::Norm(a) => &a.output,
            Command::Sweep(a) => &a.output,
            Command::Verify(a) => &a.output,
            Command::Kloosterman(a) => &a.output,
            Command::Energy(a) => &a.output,
            Command::Strata(a) => &a.output,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VarietyName {
    Hamming,
    Paraboloid,
    AltQuadric,
    Sphere,
}

#[derive(Clone, Debug, Args)]
pub struct FieldArgs {
    /// Characteristic (odd prime).
    #[arg(long)]
    pub p: u64,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
}

#[derive(Clone, Debug, Args)]
pub struct SpaceArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    /// Largest admissible q^d.
    #[arg(long, default_value_t = DEFAULT_GRID_CAP)]
    pub cap: usize,
}

#[derive(Clone, Debug, Args)]
pub struct VarietyArgs {
    #[arg(long, value_enum, default_value = "hamming")]
    pub variety: VarietyName,
    /// Variety parameter: an integer for prime fields, a coefficient list
    /// (constant term first) otherwise.
    #[arg(long, default_value = "1")]
    pub j: String,
    /// Read the point set from a CSV file instead of building a named variety.
    #[arg(long)]
    pub points: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Report destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Add a wall_ms column (makes reports run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Clone, Debug, Args)]
pub struct PowerArgs {
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
    #[arg(long, default_value_t = 500)]
    pub iters: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Debug, Args)]
pub struct DecayArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub variety: VarietyArgs,
    /// Write the transform as `index,re,im` CSV.
    #[arg(long)]
    pub dump: Option<PathBuf>,
    /// Write the variety's points as CSV.
    #[arg(long)]
    pub export_points: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct NormArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub variety: VarietyArgs,
    /// Target exponent (a number > 1, or `inf`).
    #[arg(long, default_value = "4")]
    pub r: String,
    #[command(flatten)]
    pub power: PowerArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated fields, each `p` or `p^n`.
    #[arg(long)]
    pub q_list: String,
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    #[arg(long, default_value = "1")]
    pub j: String,
    #[arg(long, default_value = "4")]
    pub r: String,
    #[command(flatten)]
    pub power: PowerArgs,
    /// Constant asserted against every R_lower.
    #[arg(long, default_value_t = 3.0)]
    pub bound: f64,
    #[arg(long, default_value_t = DEFAULT_GRID_CAP)]
    pub cap: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value = "1")]
    pub j: String,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct KloostermanArgs {
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Comma-separated fields, each `p` or `p^n`; replaces --p/--n.
    #[arg(long)]
    pub q_list: Option<String>,
    /// Number of summation variables.
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    /// Draw this many coefficient tuples instead of scanning all of them.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub variety: VarietyArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct StrataArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}
