//! `stingy`: validate, run, and audit greedy descent on instance files.
//!
//! Exit codes: 0 success with nothing found, 1 usage or I/O error, 2 the
//! instance is malformed or fails validation, 3 a ratio-bound or flawed
//! inequality violation was found.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stingy::TiePolicy;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_FINDINGS: u8 = 3;

/// Overrides the trajectory enumeration cap.
pub const TRACE_LIMIT_ENV: &str = "STINGY_TRACE_LIMIT";

#[derive(Parser, Debug)]
#[command(name = "stingy", version, about = "Greedy descent over comatroid circuits, with exact audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Print the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    /// Instance file (JSON).
    file: PathBuf,
    /// Run even if the function is not nonincreasing, supermodular and normalized.
    #[arg(long)]
    allow_invalid: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the function and the dependence family.
    Validate {
        /// Instance file (JSON).
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Run greedy descent under a tie policy (`all` lists every trajectory).
    Greedy {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_parser = parse_policy, default_value = "worst")]
        policy: TiePolicy,
        #[command(flatten)]
        out: Output,
    },
    /// Minimum of f over all circuits.
    Opt {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Greedy-to-optimal ratio against the steepness bound.
    Report {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Tie policy; `all` reports every single-trajectory policy.
        #[arg(long, value_parser = parse_policy, default_value = "all")]
        policy: TiePolicy,
        #[command(flatten)]
        out: Output,
    },
    /// Check both per-step inequalities on every trajectory and optimum.
    Audit {
        #[command(flatten)]
        instance: InstanceArgs,
        /// List every distinct step audit in the text output.
        #[arg(long)]
        steps: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Write a generated instance file.
    Gen {
        #[arg(long, value_enum, default_value = "paper")]
        kind: GenKind,
        #[arg(long, value_enum, default_value = "uniform")]
        matroid: MatroidArg,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Destination; stdout when omitted.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Audit a seeded random corpus and report violations.
    Search {
        /// Function kinds to draw from (repeatable); all when omitted.
        #[arg(long, value_enum)]
        kind: Vec<FunctionArg>,
        /// Matroid kinds to draw from (repeatable); all when omitted.
        #[arg(long, value_enum)]
        matroid: Vec<MatroidArg>,
        /// Ground set size, `N` or `LO..HI` (inclusive).
        #[arg(long, default_value = "4..8", value_parser = parse_range)]
        n: (usize, usize),
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Put the fixed four-element counterexample at index 0.
        #[arg(long)]
        include_paper: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Paper,
    Modular,
    Coverage,
    Pmedian,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionArg {
    Modular,
    Coverage,
    Pmedian,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatroidArg {
    Uniform,
    Partition,
}

fn parse_policy(s: &str) -> Result<TiePolicy, String> {
    s.parse()
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            Ok((parse(lo)?, parse(hi)?))
        }
        None => {
            let n = parse(s)?;
            Ok((n, n))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match commands::dispatch(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    };
    ExitCode::from(code)
}
