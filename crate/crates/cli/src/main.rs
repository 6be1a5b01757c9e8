//! `trijac`: compute J3 / JL3 / K3 terms, expand generating functions,
//! verify the identity catalog and benchmark the term engines.
//!
//! Exit codes: 0 success, 1 verification or cross-check failure, 2 usage error.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use trijac::{Engine, IdentityId, SequenceId};

use crate::output::OutputFormat;

#[derive(Parser, Debug)]
#[command(
    name = "trijac",
    version,
    about = "Exact third-order Jacobsthal-family sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a single term.
    Compute(ComputeArgs),
    /// Print an inclusive run of terms.
    Range(RangeArgs),
    /// Print generating-function coefficients, constant term first.
    Gf(GfArgs),
    /// Check catalog identities exactly over an index range.
    Verify(VerifyArgs),
    /// Time one term across engines and cross-check the values.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[arg(long, value_parser = parse_seq)]
    seq: SequenceId,
    /// Index; negative values are accepted for K3 only.
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, value_parser = parse_engine, default_value = "closed")]
    engine: Engine,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct RangeArgs {
    #[arg(long, value_parser = parse_seq)]
    seq: SequenceId,
    #[arg(long)]
    from: u64,
    #[arg(long)]
    to: u64,
    #[arg(long, value_parser = parse_engine, default_value = "iter")]
    engine: Engine,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct GfArgs {
    #[arg(long, value_parser = parse_seq)]
    seq: SequenceId,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    terms: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Identity labels (repeatable or comma separated), e.g. CASSINI,E9.
    #[arg(long = "id", value_delimiter = ',', value_parser = parse_identity)]
    ids: Vec<IdentityId>,
    /// Check the whole catalog.
    #[arg(long, conflicts_with = "ids")]
    all: bool,
    #[arg(long, default_value_t = 300)]
    n_max: u64,
    /// Maximum number of index pairs for two-index identities.
    #[arg(long, default_value_t = 5000, value_parser = clap::value_parser!(u64).range(1..))]
    pair_budget: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Perturb the right-hand side of one identity by +1 (self-test of the reporting path).
    #[arg(long, value_parser = parse_identity, hide = true)]
    inject_fault: Option<IdentityId>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_parser = parse_seq)]
    seq: SequenceId,
    #[arg(long)]
    n: u64,
    #[arg(long, value_delimiter = ',', value_parser = parse_engine, default_value = "closed,matpow")]
    engines: Vec<Engine>,
    /// Largest index the O(n) iteration engine will accept.
    #[arg(long, default_value_t = 10_000_000)]
    iter_cap: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
}

fn parse_seq(s: &str) -> Result<SequenceId, String> {
    s.parse().map_err(|e: trijac::SeqError| e.to_string())
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse().map_err(|e: trijac::SeqError| e.to_string())
}

fn parse_identity(s: &str) -> Result<IdentityId, String> {
    s.parse().map_err(|e: trijac::IdentityError| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => commands::compute(a.seq, a.n, a.engine, a.format),
        Command::Range(a) => commands::range(a.seq, a.from, a.to, a.engine, a.format),
        Command::Gf(a) => commands::gf(a.seq, a.terms as usize, a.format),
        Command::Verify(a) => commands::verify(commands::VerifyRequest {
            ids: a.ids,
            all: a.all,
            n_max: a.n_max,
            pair_budget: a.pair_budget as usize,
            format: a.format,
            out: a.out,
            inject_fault: a.inject_fault,
        }),
        Command::Bench(a) => commands::bench(a.seq, a.n, &a.engines, a.iter_cap, a.format),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
