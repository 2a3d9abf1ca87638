mod commands;
mod output;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seqpriv::code::CodeMode;
use seqpriv::{ErrorKind, DEFAULT_STATE_LIMIT};

#[derive(Parser, Debug)]
#[command(name = "seqpriv", version, about = "Perfectly private sequential delivery experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Functional representation construction for a two-variable law
    #[command(subcommand)]
    Frl(FrlCommand),
    /// Private multi-part delivery sessions
    #[command(subcommand)]
    Pipeline(PipelineCommand),
    /// Bound tables for the masked file family
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Coded caching with private delivery
    #[command(subcommand)]
    Cache(CacheCommand),
    /// Exact leakage and losslessness audit, optionally decoding a packed transcript
    Audit(AuditArgs),
}

#[derive(Subcommand, Debug)]
enum FrlCommand {
    /// Print atoms, P(U) and the decoding table
    Build(FrlBuildArgs),
}

#[derive(Subcommand, Debug)]
enum PipelineCommand {
    /// Encode one sampled realization, decode it and audit the scheme
    Run(RunArgs),
    /// Audit every ordered choice of K files
    Sweep(SweepArgs),
}

#[derive(Subcommand, Debug)]
enum BoundsCommand {
    /// Closed-form bounds over a range of file sizes
    Sweep(BoundsSweepArgs),
}

#[derive(Subcommand, Debug)]
enum CacheCommand {
    /// Placement, delivery, private wrap and per-user decoding
    Demo(CacheDemoArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Fixed,
    Entropy,
}

impl From<Mode> for CodeMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Fixed => CodeMode::Fixed,
            Mode::Entropy => CodeMode::Entropy,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Where the joint law comes from.
#[derive(Args, Debug, Clone)]
struct SourceArgs {
    /// Distribution file; the first variable is private, the rest are files
    #[arg(long, conflicts_with = "example1")]
    spec: Option<PathBuf>,
    /// Use the masked family: X ~ Bern(p), file bits Z AND X
    #[arg(long)]
    example1: bool,
    /// Prior P(X = 1) of the masked family
    #[arg(long, default_value = "1/2")]
    p: String,
    /// Number of files in the masked family
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Bits per file in the masked family
    #[arg(long, default_value_t = 1)]
    f: u32,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Write the structured report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Structured report format
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct FrlBuildArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Search all segment orderings for the lowest-entropy auxiliary
    #[arg(long)]
    search: bool,
    /// Maximum number of orderings the search may try
    #[arg(long, default_value_t = 1_000_000)]
    budget: u128,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Requested files, 1-based, in request order
    #[arg(long, value_delimiter = ',', required = true)]
    demands: Vec<usize>,
    #[arg(long, value_enum, default_value = "fixed")]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Key alphabet size; defaults to the private alphabet size
    #[arg(long)]
    key_size: Option<usize>,
    /// Maximum number of enumerated states
    #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
    limit: u128,
    /// Write the encoded transcript in packed binary form
    #[arg(long)]
    transcript: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Number of demands per vector
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "fixed")]
    mode: Mode,
    #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
    limit: u128,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct BoundsSweepArgs {
    /// Numbers of demands
    #[arg(long, value_delimiter = ',', default_value = "2")]
    k: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    f_min: u32,
    #[arg(long, default_value_t = 32)]
    f_max: u32,
    /// Also build and audit the scheme where the enumeration limit allows
    #[arg(long)]
    measure: bool,
    /// Prior used when measuring
    #[arg(long, default_value = "1/2")]
    p: String,
    #[arg(long, value_enum, default_value = "fixed")]
    mode: Mode,
    #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
    limit: u128,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct CacheDemoArgs {
    /// Distribution file; defaults to the masked family with --p
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, default_value = "1/2")]
    p: String,
    /// Number of files
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Number of users
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Cache size in files
    #[arg(long, default_value = "1")]
    m: String,
    /// Bits per file
    #[arg(long, default_value_t = 2)]
    f: u32,
    /// One requested file per user, 1-based; defaults to 1, 2, ..
    #[arg(long, value_delimiter = ',')]
    demands: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value = "fixed")]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
    limit: u128,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_delimiter = ',', required = true)]
    demands: Vec<usize>,
    #[arg(long, value_enum, default_value = "fixed")]
    mode: Mode,
    #[arg(long)]
    key_size: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
    limit: u128,
    /// Packed transcript to decode
    #[arg(long, requires = "key")]
    transcript: Option<PathBuf>,
    /// Key value used to decode --transcript
    #[arg(long)]
    key: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Validation => 1,
        ErrorKind::Invariant => 2,
        ErrorKind::Resource => 3,
    }
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
    let started = std::time::Instant::now();
    let result = match cli.command {
        Command::Frl(FrlCommand::Build(a)) => commands::frl_build(a),
        Command::Pipeline(PipelineCommand::Run(a)) => commands::pipeline_run(a),
        Command::Pipeline(PipelineCommand::Sweep(a)) => commands::pipeline_sweep(a),
        Command::Bounds(BoundsCommand::Sweep(a)) => commands::bounds_sweep(a),
        Command::Cache(CacheCommand::Demo(a)) => commands::cache_demo(a),
        Command::Audit(a) => commands::audit(a),
    };
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.kind()))
        }
    }
}
