//! `nilpotwo` — command-line front end for the nilpotent-subgroup bound
//! toolkit.
//!
//! Four subcommands:
//!
//! * `analyze`   — run the bound pipeline on one group and print a JSON report.
//! * `verify`    — run a manifest (or the built-in corpus) and print one report
//!   row per entry, with a summary on stderr.
//! * `oracle`    — exhaustive small-order sweep: largest abelian section and
//!   the exhaustively minimized class-≤2 witness for every built-in group in
//!   range.
//! * `construct` — realize a family expression as a permutation group spec.
//!
//! Exit codes: `0` success (including out-of-range notices), `1` input or
//! usage error, `2` a claimed inequality or certificate failed to check out.

mod commands;
mod input;
mod manifest;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact verification of a nilpotent-subgroup size bound for finite groups.
#[derive(Parser)]
#[command(name = "nilpotwo", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one group and print a JSON bound report.
    Analyze(AnalyzeArgs),
    /// Run every entry of a manifest and report each as a row.
    Verify(VerifyArgs),
    /// Exhaustively check small built-in groups and report their witnesses.
    Oracle(OracleArgs),
    /// Realize a group family expression as a permutation group spec.
    Construct(ConstructArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Inline group spec ("perm deg=N gens=..."), a file path, or "-" for
    /// stdin. May be omitted when input is piped or --family is given.
    source: Option<String>,

    /// Build the group from a family expression instead of reading a spec.
    #[arg(long, conflicts_with_all = ["source", "table"])]
    family: Option<String>,

    /// Treat the input as a multiplication table (0-based, one row per line).
    #[arg(long)]
    table: bool,

    /// Seed for randomized searches. Overrides NILPOTWO_SEED.
    #[arg(long)]
    seed: Option<u64>,

    /// Entry name used in the report row.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Manifest path ("-" for stdin). Lines: name<TAB>kind<TAB>source.
    manifest: Option<PathBuf>,

    /// Run the built-in corpus instead of reading a manifest.
    #[arg(long, conflicts_with = "manifest")]
    builtin: bool,

    /// Worker threads for analysis (default: one per CPU).
    #[arg(long)]
    jobs: Option<usize>,

    /// Seed for randomized searches. Overrides the manifest and NILPOTWO_SEED.
    #[arg(long)]
    seed: Option<u64>,

    /// Output format for report rows.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Test hook: tamper with every certificate before re-verification, to
    /// exercise the failure path.
    #[arg(long, hide = true)]
    corrupt_certificates: bool,
}

#[derive(Args)]
struct OracleArgs {
    /// Only check built-in groups of order at most this (max 256).
    #[arg(long, default_value_t = 256)]
    max_order: u64,
}

#[derive(Args)]
struct ConstructArgs {
    /// Family expression, e.g. "symmetric(4)" or "wreath(cyclic(3),2)".
    family: String,

    /// Write the group spec to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// A command failure carrying its exit code: `1` for input/usage problems,
/// `2` for a mathematical claim that failed verification.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    fn violation(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<nilpotwo_core::Error> for CliError {
    fn from(e: nilpotwo_core::Error) -> Self {
        match e {
            nilpotwo_core::Error::TheoremViolation { .. } => CliError::violation(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

type CmdResult = Result<u8, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => commands::analyze(args),
        Command::Verify(args) => commands::verify(args),
        Command::Oracle(args) => commands::oracle(args),
        Command::Construct(args) => commands::construct(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
