//! `hcs`: batch analysis, feature extraction and instance generation.

mod batch;
mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hcs", version, about = "Hierarchical community structure of CNF formulas")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomized step; recorded in all outputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = one per core). Never changes output bytes.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Reject header mismatches and unterminated clauses.
    #[arg(long, global = true)]
    pub strict: bool,
    #[arg(long, global = true, default_value_t = 64)]
    pub max_depth: usize,
    /// Communities of at most this many variables are not split.
    #[arg(long, global = true, default_value_t = 1)]
    pub min_size: usize,
    /// Split wider clauses into chains of at most this width before analysis.
    #[arg(long, global = true)]
    pub max_width: Option<usize>,
    /// Per-instance wall-clock limit in seconds.
    #[arg(long, global = true)]
    pub timeout: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Dimacs,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose instances; one JSON (tree, features, expansion audit) per file.
    Analyze(commands::analyze::AnalyzeArgs),
    /// Write the 49-feature CSV for a set of instances.
    Features(commands::features::FeaturesArgs),
    /// Generate planted-HCS instances from flags or a JSON manifest.
    Generate(commands::generate::GenerateArgs),
    /// Build one of the fixed constructions.
    #[command(subcommand)]
    Construct(commands::construct::Construct),
    /// Exact edge expansion and per-node audit for each instance.
    Expansion(commands::expansion::ExpansionArgs),
    /// Log-log fit of root inter-community edges against size, per class.
    ScalingReport(commands::scaling::ScalingArgs),
}

/// Outcome of a batch command.
pub enum Status {
    Ok,
    /// Some inputs failed; their error records were written.
    Partial,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("HCS_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Partial) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.threads)
        .build_global()?;
    let g = &cli.global;
    match cli.command {
        Command::Analyze(a) => commands::analyze::run(g, a),
        Command::Features(a) => commands::features::run(g, a),
        Command::Generate(a) => commands::generate::run(g, a),
        Command::Construct(c) => commands::construct::run(g, c),
        Command::Expansion(a) => commands::expansion::run(g, a),
        Command::ScalingReport(a) => commands::scaling::run(g, a),
    }
}

/// Output directory argument shared by the batch commands.
#[derive(Args, Debug, Clone)]
pub struct OutDir {
    #[arg(long, short, default_value = ".")]
    pub out: PathBuf,
}
