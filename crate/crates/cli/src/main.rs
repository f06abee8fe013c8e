//! `icr`: reliability analysis for Likert-scale response files.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or validation error,
//! 3 degenerate computation.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use icr_core::format::DEFAULT_PRECISION;
use icr_core::simulation::{DEFAULT_REPLICATES, DEFAULT_SEED};
use icr_core::Measure;

#[derive(Debug, Parser)]
#[command(
    name = "icr",
    version,
    about = "Cronbach alpha and information consistency ratios for Likert data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the reliability report for a response CSV.
    Analyze(AnalyzeArgs),
    /// Compute a pairwise item distance matrix.
    Distances(DistancesArgs),
    /// Run the duplicated-item benchmark sweep.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Response CSV: one respondent per row, one item per column.
    input: PathBuf,
    /// Number of Likert levels K (levels are 1..=K).
    #[arg(short = 'k', long, default_value_t = 5)]
    scale: usize,
    /// Field delimiter of the input file.
    #[arg(long, default_value_t = ',')]
    delimiter: char,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Significant digits for floating-point CSV output.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct DistancesArgs {
    #[command(flatten)]
    input: InputArgs,
    /// One of: kl2, vi, bc, tv, hellinger.
    #[arg(short, long, value_parser = parse_measure)]
    measure: Measure,
    /// Additive smoothing added to every level before kl2 and bc.
    #[arg(long)]
    smoothing: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Respondents per matrix.
    #[arg(short, long, default_value_t = 1000)]
    n: usize,
    /// Items per matrix.
    #[arg(short, long, default_value_t = 50)]
    p: usize,
    /// Number of Likert levels K.
    #[arg(short = 'k', long, default_value_t = 5)]
    scale: usize,
    /// Comma-separated fractions of duplicated items, each in (0, 1].
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0"
    )]
    fractions: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(short, long, default_value_t = DEFAULT_REPLICATES)]
    replicates: usize,
    /// Sweep table path.
    #[arg(short, long, default_value = "sweep.csv")]
    output: PathBuf,
    /// Long-format plot data path; defaults to `<output stem>_plot.csv`.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Format of the sweep table.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Significant digits for floating-point output.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
}

fn parse_measure(s: &str) -> Result<Measure, String> {
    s.parse().map_err(|e: icr_core::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };

    let result = match cli.command {
        Command::Analyze(args) => commands::analyze(args),
        Command::Distances(args) => commands::distances(args),
        Command::Simulate(args) => commands::simulate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
