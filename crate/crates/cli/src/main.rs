//! `kgraph`: validate, rewrite and classify single-vertex k-graphs.

mod commands;

use clap::{Parser, Subcommand};
use kgraph::Error;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "kgraph", version, about = "Exact toolkit for single-vertex k-graphs")]
pub struct Cli {
    /// Cap on the number of terms any algebra operation may create.
    #[arg(long, global = true, env = "KGRAPH_MAX_TERMS", default_value_t = kgraph::DEFAULT_MAX_TERMS)]
    pub max_terms: usize,

    /// Height bound for the periodicity search.
    #[arg(long, global = true, default_value_t = kgraph::DEFAULT_PERIODICITY_BOUND)]
    pub periodicity_bound: u32,

    /// Tolerance for averaging, as p/q.
    #[arg(long, global = true, default_value = "1/100")]
    pub eps: String,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the structure and the cubic condition of a graph file.
    Validate {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Normal form of a word given as JSON `[[colour, index], ...]`.
    NormalForm {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Minimal common extensions of two words.
    LambdaMin {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
    },
    /// Little pull-back property, and optionally single alignment up to a degree.
    Lpb {
        #[arg(long)]
        graph: PathBuf,
        /// Degree bound such as `3,3`.
        #[arg(long)]
        maxdeg: Option<String>,
    },
    /// Bounded search for a periodicity witness.
    Periodicity {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Intrinsic group and spectrum for edge counts such as `2,2`.
    IntrinsicGroup {
        #[arg(long)]
        m: String,
    },
    /// Factor type report.
    Classify {
        #[arg(long)]
        graph: PathBuf,
    },
    /// KMS identity for two element files.
    KmsCheck {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Averages an element to a scalar and records the schedule.
    Dixmier {
        #[arg(long)]
        element: PathBuf,
        /// Where to write the schedule; it is also included in the report.
        #[arg(long)]
        schedule_out: Option<PathBuf>,
    },
    /// Enumerates and classifies all graphs with the given edge counts.
    Census {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: String,
        #[arg(long, value_enum, default_value_t = commands::Format::Json)]
        format: commands::Format,
        #[arg(long, default_value_t = kgraph::census::DEFAULT_CENSUS_CAP)]
        cap: u128,
    },
    /// Re-executes a schedule file and re-verifies its bound.
    Replay {
        #[arg(long)]
        schedule: PathBuf,
    },
}

/// Exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_UNCONFIRMED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;
pub const EXIT_USAGE: u8 = 64;

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Structural(_) => "structural",
        Error::Cubic(_) => "cubic",
        Error::Degree(_) => "degree",
        Error::Domain(_) => "domain",
        Error::Resource(_) => "resource",
        Error::Shape(_) => "shape",
        Error::Mode(_) => "mode",
        Error::GraphMismatch => "graph_mismatch",
        Error::Unsupported(_) => "unsupported",
        Error::Parse(_) => "parse",
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
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
    match commands::run(&cli) {
        Ok((output, code)) => {
            emit(&output);
            ExitCode::from(code)
        }
        Err(e) => {
            let mut report = serde_json::json!({
                "error": error_kind(&e),
                "message": e.to_string(),
            });
            if let Error::Cubic(v) = &e {
                report["violations"] = serde_json::to_value(v).unwrap_or_default();
            }
            emit(&report.to_string());
            let code = if matches!(e, Error::Resource(_)) {
                EXIT_RESOURCE
            } else {
                EXIT_INVALID
            };
            ExitCode::from(code)
        }
    }
}
