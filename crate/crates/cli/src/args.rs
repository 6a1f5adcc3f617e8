use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use crnconn::experiments::{Preset, SweepVariable};
use crnconn::AntennaRegime;

#[derive(Debug, Parser)]
#[command(name = "crnconn", version, about = "Connectivity of secondary-user pairs in underlay cognitive radio networks")]
pub struct Cli {
    /// Worker threads for simulations (default: all cores). Results do not
    /// depend on this.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form probabilities at one parameter point.
    Analytic(PointArgs),
    /// Monte Carlo estimates at one parameter point, next to the closed forms.
    Simulate(PointArgs),
    /// Sweep one parameter and write CSV.
    Sweep(SweepArgs),
    /// Run the verification report.
    Verify(VerifyArgs),
    /// Write the CSV data behind one of the standard figures.
    Preset(PresetArgs),
}

/// Parameter overrides shared by every command that takes a point.
#[derive(Debug, Args, Default, Clone)]
pub struct ParamFlags {
    /// JSON config file with optional `params`, `sim` and `sweep` sections.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long = "lambda-p", allow_negative_numbers = true)]
    pub lambda_p: Option<f64>,
    #[arg(long = "lambda-s", allow_negative_numbers = true)]
    pub lambda_s: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    #[arg(long = "theta-p", allow_negative_numbers = true)]
    pub theta_p: Option<f64>,
    #[arg(long = "theta-s", allow_negative_numbers = true)]
    pub theta_s: Option<f64>,
    /// Use the standalone omni topological form, whose interference terms
    /// are 2π² smaller, instead of the reduction of the sector form.
    #[arg(long)]
    pub as_printed: bool,
}

#[derive(Debug, Args, Default, Clone)]
pub struct SimFlags {
    /// Monte Carlo realisations per point.
    #[arg(long)]
    pub omega: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Fewer realisations for a fast run.
    #[arg(long)]
    pub quick: bool,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub params: ParamFlags,
    #[command(flatten)]
    pub sim: SimFlags,
    /// Regimes to evaluate, comma separated (default: all).
    #[arg(long, value_delimiter = ',')]
    pub regime: Vec<AntennaRegime>,
    /// Also write the result as a one-point CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub params: ParamFlags,
    #[command(flatten)]
    pub sim: SimFlags,
    /// Swept parameter; overrides the config file.
    #[arg(long)]
    pub variable: Option<SweepVariable>,
    /// Swept values, comma separated and strictly increasing.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub values: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub regime: Vec<AntennaRegime>,
    /// Run the simulator at every point even without a `sim` section.
    #[arg(long)]
    pub simulate: bool,
    /// CSV destination (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub sim: SimFlags,
    /// Also write the report as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PresetArgs {
    pub name: Preset,
    #[command(flatten)]
    pub sim: SimFlags,
    /// Directory for the CSV files.
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
}
