//! `fdecomp`: sequences, decompositions, recurrences and summand statistics
//! for generalized Zeckendorf f-rules.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 when a mathematical check
//! (uniqueness, recurrence verification or synthesis) fails.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "fdecomp", version, about = "Exact f-decompositions and f-sequences")]
struct Cli {
    /// Output format. Defaults to json, except csv for `stats`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print terms of the f-sequence.
    Seq(SeqArgs),
    /// Greedy f-decomposition of an integer.
    Decomp(DecompArgs),
    /// Exhaustively check that 0..=x-max decompose uniquely.
    CheckUnique(CheckUniqueArgs),
    /// Synthesize, minimize and verify a linear recurrence for a periodic rule.
    Recurrence(RecurrenceArgs),
    /// Exact summand-count tables, moments and normal-approximation distance.
    Stats(StatsArgs),
    /// Search for a multiple with a nonnegative-coefficient recurrence.
    Nonneg(NonnegArgs),
}

#[derive(Args, Debug)]
pub struct RuleArg {
    /// Inline rule (constant:<c>, periodic:<v,...>, factorial, bbin:<b>, base:<b>)
    /// or path to a JSON rule file.
    #[arg(long)]
    pub rule: String,
}

#[derive(Args, Debug)]
pub struct SeqArgs {
    #[command(flatten)]
    pub rule: RuleArg,
    /// Number of terms.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    /// First index to print.
    #[arg(long, default_value_t = 0)]
    pub start: usize,
}

#[derive(Args, Debug)]
pub struct DecompArgs {
    #[command(flatten)]
    pub rule: RuleArg,
    /// Nonnegative integer to decompose (any size).
    #[arg(long)]
    pub x: String,
}

#[derive(Args, Debug)]
pub struct CheckUniqueArgs {
    #[command(flatten)]
    pub rule: RuleArg,
    #[arg(long)]
    pub x_max: u64,
    /// Highest index the search may use; defaults to the floor index of x-max.
    #[arg(long)]
    pub index_cap: Option<usize>,
}

#[derive(Args, Debug)]
pub struct RecurrenceArgs {
    #[command(flatten)]
    pub rule: RuleArg,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub minimize: bool,
    #[arg(long, default_value_t = 300)]
    pub verify_horizon: usize,
    #[arg(long, default_value_t = 30)]
    pub nonneg_max_degree: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Table,
    Moments,
    Ks,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    /// bbin:<b> or factorial.
    #[arg(long)]
    pub system: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Emit::Moments)]
    pub emit: Emit,
    /// Emit every row 0..=n instead of row n only.
    #[arg(long)]
    pub all: bool,
    /// Print means and variances as exact fractions instead of decimals.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Args, Debug)]
pub struct NonnegArgs {
    /// Coefficients, highest power first, e.g. 1,0,0,-4,0,0,1.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "rule", required_unless_present = "rule")]
    pub charpoly: Option<String>,
    /// Use the minimal recurrence of this periodic rule.
    #[arg(long)]
    pub rule: Option<String>,
    #[arg(long, default_value_t = 30)]
    pub max_degree: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match &cli.command {
        Command::Seq(a) => commands::seq(a, cli.format.unwrap_or(Format::Json)),
        Command::Decomp(a) => commands::decomp(a, cli.format.unwrap_or(Format::Json)),
        Command::CheckUnique(a) => commands::check_unique(a, cli.format.unwrap_or(Format::Json)),
        Command::Recurrence(a) => commands::recurrence(a, cli.format.unwrap_or(Format::Json)),
        Command::Stats(a) => commands::stats(a, cli.format.unwrap_or(Format::Csv)),
        Command::Nonneg(a) => commands::nonneg(a, cli.format.unwrap_or(Format::Json)),
    };
    let mut stdout = std::io::stdout().lock();
    match result {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check { message, partial }) => {
            if let Some(text) = partial {
                let _ = stdout.write_all(text.as_bytes());
            }
            eprintln!("check failed: {message}");
            ExitCode::from(2)
        }
    }
}
