//! Command-line front end: `features`, `hierarchy`, `mgs`, `stats` and
//! `export` subcommands over a dictionary file.
//!
//! Exit status: 0 success, 1 exact search budget exhausted, 2 empty result,
//! 3 no overlap between norms and dictionary, 64 usage, 65 malformed input,
//! 74 I/O failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod config;
pub mod error;
pub mod export;
pub mod features;
pub mod hierarchy;
pub mod input;
pub mod mgs;
mod output;
pub mod stats;

pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "lexkernel",
    version,
    about = "Grounding-kernel analysis of dictionary graphs"
)]
pub struct Cli {
    /// Read default settings from a `key = value` file.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Size and density of the graph, its grounding kernel and its kernel core.
    Features(features::FeaturesArgs),
    /// Per-word levels of the three hierarchies.
    Hierarchy(hierarchy::HierarchyArgs),
    /// Minimum grounding sets (exact) or a greedy grounding set.
    Mgs(mgs::MgsArgs),
    /// Psycholinguistic norms against hierarchy levels.
    Stats(stats::StatsArgs),
    /// DOT and adjacency CSV renderings of the graph.
    Export(export::ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// `headword<TAB>[sense<TAB>]definition` lines.
    Tsv,
    /// `[{"word": .., "definition": ..}, ..]`.
    Json,
    /// `source,target` arc list; used as the graph without normalization.
    Edges,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Dictionary file, `-` for standard input.
    #[arg(short, long, value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Tsv)]
    pub input_format: InputFormat,
    /// Do not stem headwords and definition words.
    #[arg(long)]
    pub no_stem: bool,
    /// Merge all senses of a headword instead of keeping the first.
    #[arg(long)]
    pub keep_all_senses: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Dot,
}

impl OutputFormat {
    fn extension(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Dot => "dot",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write files into this directory instead of printing to stdout.
    #[arg(long, env = "LEXKERNEL_OUTDIR", value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

/// Parses `args` (including the program name) and runs the command,
/// printing results to `stdout` unless an output directory is set.
pub fn run(args: Vec<OsString>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let args = config::expand(args)?;
    let cli = Cli::try_parse_from(args)?;
    match cli.command {
        Command::Features(a) => features::run(&a, stdout),
        Command::Hierarchy(a) => hierarchy::run(&a, stdout),
        Command::Mgs(a) => mgs::run(&a, stdout),
        Command::Stats(a) => stats::run(&a, stdout),
        Command::Export(a) => export::run(&a, stdout),
    }
}

/// [`run`] with error reporting on stderr; returns the exit status.
pub fn main_with(args: Vec<OsString>) -> i32 {
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let result = run(args, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) => match flushed {
            Ok(()) => 0,
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
            Err(e) => {
                eprintln!("lexkernel: {}", CliError::io("<stdout>", e));
                74
            }
        },
        Err(CliError::Clap(e)) => {
            let _ = e.print();
            CliError::Clap(e).exit_code()
        }
        Err(e) => {
            eprintln!("lexkernel: {e}");
            e.exit_code()
        }
    }
}
