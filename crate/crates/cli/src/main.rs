mod commands;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ietkit::iet::Precision;
use ietkit::numerics::DEFAULT_MAX_BITS;

#[derive(Parser, Debug)]
#[command(name = "ietkit", version, about = "Interval exchange transformations and recurrence-word certificates")]
pub struct Cli {
    /// Working precision of enclosures, in bits.
    #[arg(long, global = true, default_value_t = 256)]
    precision_bits: u32,
    /// Refinement cap for undecided comparisons, in bits.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_BITS)]
    max_bits: u32,
    /// Seed for randomized stages.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Rauzy graph of the class of a permutation.
    Graph {
        /// Permutation as `5,4,3,2,1` or a JSON file containing `[5,4,3,2,1]`.
        #[arg(long)]
        perm: String,
    },
    /// Rauzy class summary: vertices, edges, cyclic sets.
    Class {
        #[arg(long)]
        perm: String,
    },
    /// Rauzy induction steps on an IET.
    Induce {
        /// IET JSON file: `{"permutation": [...], "lengths": {...}}`.
        #[arg(long, conflicts_with_all = ["perm", "lengths"])]
        iet: Option<PathBuf>,
        #[arg(long, requires = "lengths")]
        perm: Option<String>,
        /// Comma-separated rationals or decimals.
        #[arg(long, requires = "perm")]
        lengths: Option<String>,
        #[arg(long, default_value_t = 12)]
        steps: usize,
    },
    /// Closed primitive Rauzy paths up to a length.
    FindPeriodic {
        #[arg(long)]
        perm: String,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        /// Keep at most this many paths in the output.
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// Reproduce the five-interval example.
    VerifyGolden {
        /// Replace entry (i, j) of the path matrix by adding `delta`: `i,j,delta`.
        #[arg(long)]
        tamper: Option<String>,
        #[arg(long, default_value_t = 1000)]
        idoc: usize,
        /// Periods for the tower diagnostics; 0 skips them.
        #[arg(long, default_value_t = 4)]
        periods: usize,
    },
    /// Witness pair for the periodic IET of a closed primitive path.
    SearchWitness {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        path: String,
        #[arg(long, default_value_t = 64)]
        budget: usize,
        #[arg(long, default_value_t = 1000)]
        idoc: usize,
    },
    /// Witness certificate at the symmetric permutation for odd m.
    Reduce {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 16)]
        draws: usize,
        #[arg(long, default_value_t = 1000)]
        idoc: usize,
        #[arg(long, default_value_t = 9)]
        cap: usize,
        /// Longest recurrence word tried in the witness search.
        #[arg(long, default_value_t = 128)]
        budget: usize,
        /// Longest closed path tried for the periodic-type fallback.
        #[arg(long, default_value_t = 40)]
        loop_max_len: usize,
    },
    /// Tower diagnostics of a periodic IET.
    FlowDiag {
        /// Defaults to the five-interval example.
        #[arg(long, requires = "path")]
        perm: Option<String>,
        #[arg(long, requires = "perm")]
        path: Option<String>,
        #[arg(long, default_value_t = 4)]
        periods: usize,
        #[arg(long, default_value_t = 64)]
        budget: usize,
    },
}

impl Command {
    fn schema(&self) -> &'static str {
        match self {
            Command::Graph { .. } => "ietkit.graph/1",
            Command::Class { .. } => "ietkit.class/1",
            Command::Induce { .. } => "ietkit.induce/1",
            Command::FindPeriodic { .. } => "ietkit.find-periodic/1",
            Command::VerifyGolden { .. } => "ietkit.verify-golden/1",
            Command::SearchWitness { .. } => "ietkit.search-witness/1",
            Command::Reduce { .. } => "ietkit.reduce/1",
            Command::FlowDiag { .. } => "ietkit.flow-diag/1",
        }
    }
}

/// What a command hands back: a JSON body, optional DOT text, and whether every
/// verification in scope passed.
pub struct Outcome {
    pub result: Value,
    pub dot: Option<String>,
    pub passed: bool,
}

impl Cli {
    pub fn precision(&self) -> Precision {
        Precision {
            working_bits: self.precision_bits,
            max_bits: self.max_bits,
        }
    }

    fn config(&self) -> Value {
        json!({
            "command": self.command,
            "precision_bits": self.precision_bits,
            "max_bits": self.max_bits,
            "seed": self.seed,
            "format": self.format,
        })
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(p) => fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.write_all(b"\n")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match commands::run(&cli) {
        Ok(o) => o,
        Err(e) => {
            let body = json!({
                "schema": cli.command.schema(),
                "version": env!("CARGO_PKG_VERSION"),
                "config": cli.config(),
                "error": e.to_string(),
                "passed": false,
            });
            eprintln!("error: {e}");
            if cli.format == Format::Json {
                let _ = emit(&cli, &serde_json::to_string_pretty(&body).unwrap_or_default());
            }
            return ExitCode::from(2);
        }
    };
    let text = match (cli.format, &outcome.dot) {
        (Format::Dot, Some(d)) => d.clone(),
        (Format::Dot, None) => {
            eprintln!("error: this command has no DOT output");
            return ExitCode::from(2);
        }
        (Format::Json, _) => {
            let body = json!({
                "schema": cli.command.schema(),
                "version": env!("CARGO_PKG_VERSION"),
                "config": cli.config(),
                "result": outcome.result,
                "passed": outcome.passed,
            });
            serde_json::to_string_pretty(&body).expect("JSON values serialize")
        }
    };
    if let Err(e) = emit(&cli, &text) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
