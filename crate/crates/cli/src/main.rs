//! `rarnet`: reduced autoregressive model selection and temporal-network export.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rarnet::series::SeriesFormat;

#[derive(Debug, Parser)]
#[command(
    name = "rarnet",
    version,
    about = "Reduced autoregressive models as temporal networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exhaustive SIC search over all lag subsets of a series.
    Select(SelectArgs),
    /// Distances, full-window network and optimal path tree of a model.
    Network(NetworkArgs),
    /// Load, select, build the network and write every artifact.
    Pipeline(PipelineArgs),
    /// Simulate a linear AR series from a model.
    Synth(SynthArgs),
    /// Print the text report of a model without writing files.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Series file; the bundled 1700-2008 sunspot series when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Column layout of the input file.
    #[arg(long, default_value_t = SeriesFormat::SingleColumn)]
    format: SeriesFormat,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Largest candidate lag (1..=30).
    #[arg(long, default_value_t = 15)]
    max_lag: u32,
    /// Fit models without a constant term.
    #[arg(long)]
    no_intercept: bool,
    /// Number of ranked models to report.
    #[arg(long, default_value_t = 10)]
    top_k: usize,
    /// Worker threads for the subset search.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Full-network window (default: 2.5 x the largest model lag, rounded up).
    #[arg(long)]
    window: Option<u32>,
    /// Target node time (default: the last node of the window).
    #[arg(long)]
    target: Option<u32>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Artifact formats to write.
    #[arg(long, value_delimiter = ',', default_values_t = [commands::Emit::Dot, commands::Emit::Json])]
    emit: Vec<commands::Emit>,
}

#[derive(Debug, Args)]
struct SelectArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct NetworkArgs {
    /// Model JSON (bare model, selection document or export bundle).
    #[arg(long)]
    model: PathBuf,
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct PipelineArgs {
    /// Use this model instead of fitting one.
    #[arg(long, conflicts_with = "input")]
    model: Option<PathBuf>,
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Generating model (default: x(t) = 0.6 x(t-1) - 0.3 x(t-2) + e(t)).
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long, default_value_t = 2000)]
    length: usize,
    #[arg(long, default_value_t = 500)]
    burn_in: usize,
    #[arg(long, default_value_t = 1.0)]
    noise_std: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (single-column); stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Model JSON (bare model, selection document or export bundle).
    #[arg(long)]
    model: PathBuf,
    #[command(flatten)]
    graph: GraphArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Select(a) => commands::select(&a),
        Command::Network(a) => commands::network(&a),
        Command::Pipeline(a) => commands::pipeline(&a),
        Command::Synth(a) => commands::synth(&a),
        Command::Report(a) => commands::report(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
