//! `hqf`: command-line driver for hypercube form optimization, oracles,
//! associative-memory synthesis, threshold augmentation and Toeplitz forms.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 validation failure,
//! 3 dynamics budget exhausted.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "hqf",
    version,
    about = "Quadratic and Hermitian forms on hypercubes"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Stable,
    Anti,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExecArg {
    Serial,
    Parallel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Cyclic,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Real,
    Complex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the dynamics on a matrix (as a zero-threshold network) or a network.
    Optimize(OptimizeArgs),
    /// Exhaustive oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Build weights that store a pattern set.
    Synth(SynthArgs),
    /// Eliminate thresholds with a clamped dummy node.
    Augment(AugmentArgs),
    /// Toeplitz forms.
    #[command(subcommand)]
    Toeplitz(ToeplitzCommand),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "input")]
pub struct Input {
    /// Matrix JSON file.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Network JSON file.
    #[arg(long)]
    net: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    #[command(flatten)]
    input: Input,
    /// Hypercube for --matrix input; defaults to real for real matrices.
    #[arg(long, value_enum)]
    flavor: Option<FlavorArg>,
    #[arg(long, value_enum, default_value_t = ModeArg::Anti)]
    mode: ModeArg,
    #[arg(long = "exec", value_enum, default_value_t = ExecArg::Serial)]
    exec: ExecArg,
    #[arg(long, value_enum, default_value_t = OrderArg::Cyclic)]
    order: OrderArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sweeps (serial) or steps (parallel); defaults to 4n.
    #[arg(long)]
    budget: Option<usize>,
    /// Independent random starts; the best final energy wins.
    #[arg(long, default_value_t = 1)]
    restarts: usize,
    /// Write the winning run as JSON lines, one record per step.
    #[arg(long)]
    trajectory: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Global minimum and maximum with all attaining vertices.
    Extrema(MatrixArgs),
    /// Check the sign condition at every global minimizer.
    Verify(MatrixArgs),
    /// Corner positivity on the real hypercube.
    Corner(CornerArgs),
    /// Classify every vertex as stable and/or anti-stable.
    Census(NetArgs),
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    #[arg(long)]
    matrix: PathBuf,
    /// Defaults to real for real matrices, complex otherwise.
    #[arg(long, value_enum)]
    flavor: Option<FlavorArg>,
}

#[derive(Args, Debug)]
pub struct CornerArgs {
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Args, Debug)]
pub struct NetArgs {
    #[arg(long)]
    net: PathBuf,
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    #[arg(long)]
    patterns: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Stable)]
    kind: ModeArg,
    /// Re-check storage of every pattern before writing.
    #[arg(long)]
    verify: bool,
    /// Write the weight matrix JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AugmentArgs {
    #[arg(long)]
    net: PathBuf,
    /// Re-check that stable and anti-stable states are preserved.
    #[arg(long)]
    verify: bool,
    /// Write the augmented network JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ToeplitzCommand {
    /// Expand a first-row spec into the dense matrix.
    Dense {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the form at a vertex from the first row alone.
    Eval {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        vector: PathBuf,
        /// Cross-check against the dense evaluation.
        #[arg(long)]
        verify: bool,
    },
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(raw) = std::env::var("HQF_THREADS") {
        let threads: usize = raw.parse().map_err(|_| {
            Failure::Usage(format!(
                "HQF_THREADS must be a positive integer, got {raw:?}"
            ))
        })?;
        if threads == 0 {
            return Err(Failure::Usage("HQF_THREADS must be at least 1".into()));
        }
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    Ok(())
}

fn run(cli: Cli) -> Result<commands::Report, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Optimize(args) => commands::optimize(&args),
        Command::Oracle(OracleCommand::Extrema(args)) => commands::extrema(&args),
        Command::Oracle(OracleCommand::Verify(args)) => commands::verify(&args),
        Command::Oracle(OracleCommand::Corner(args)) => commands::corner(&args),
        Command::Oracle(OracleCommand::Census(args)) => commands::census(&args),
        Command::Synth(args) => commands::synth(&args),
        Command::Augment(args) => commands::augment(&args),
        Command::Toeplitz(ToeplitzCommand::Dense { spec, out }) => {
            commands::toeplitz_dense(&spec, out.as_deref())
        }
        Command::Toeplitz(ToeplitzCommand::Eval {
            spec,
            vector,
            verify,
        }) => commands::toeplitz_eval(&spec, &vector, verify),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            report.emit(format);
            ExitCode::from(report.exit_code())
        }
        Err(failure) => {
            eprintln!("hqf: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
