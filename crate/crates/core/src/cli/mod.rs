//! Command-line surface, file formats, the iteration simulator and the
//! built-in example.
//!
//! Exit codes: `0` success, `1` a check failed, `2` usage or file-format error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{assess_feasibility, cycle_impossibility_evidence};
use crate::analysis::{extract_even_cycle_certificate, Certificate};
use crate::constructor::{construct_average_sequence, construct_weighted_sequence};
use crate::error::{Error, Result};
use crate::graph::DEFAULT_NODE_LIMIT;

pub mod demo;
pub mod fixture;
pub mod io;
pub mod simulate;
pub mod verify;

pub use demo::{demo_paper_example, DemoReport};
pub use fixture::PaperFixture;
pub use simulate::{simulate, Mode, Trajectory, DEFAULT_TOLERANCE};
pub use verify::{verify_sequence, Goal, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ftconsensus",
    version,
    about = "Exact finite-time consensus sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SimMode {
    Exact,
    Approx,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an averaging (or weighted-averaging) sequence for a graph.
    Construct {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a sequence against a graph; exit 0 iff every check passes.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: PathBuf,
        #[arg(long, value_enum)]
        goal: Goal,
    },
    /// Print the trajectory x(0), ..., x(T).
    Simulate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        init: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        mode: SimMode,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Feasibility verdict for a directed graph.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        cycle_node_limit: usize,
    },
    /// Even-cycle sign walk from a sequence reaching consensus.
    Certificate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        init: PathBuf,
    },
    /// Random sequences on an even directed cycle; counts rank-one products.
    Evidence {
        #[arg(long)]
        cycle_length: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        max_length: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Verify and simulate the built-in 4-node example.
    Demo,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. }
        | Error::Format { .. }
        | Error::InvalidGraph(_)
        | Error::InvalidWeights(_)
        | Error::NotSquare { .. }
        | Error::DimensionMismatch { .. }
        | Error::NodeLimitExceeded { .. } => EXIT_USAGE,
        _ => EXIT_CHECK_FAILED,
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("report types serialize");
    writeln!(out, "{text}").map_err(|source| Error::Io {
        path: "<stdout>".into(),
        source,
    })
}

/// Runs one command, writing its JSON output to `out`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Construct {
            graph,
            weights,
            out: target,
        } => {
            let g = io::load_graph(&graph)?;
            let seq = match weights {
                Some(path) => construct_weighted_sequence(&g, &io::load_weights(&path)?)?,
                None => construct_average_sequence(&g)?,
            };
            io::write_json(&target, &seq)?;
            Ok(EXIT_OK)
        }
        Command::Verify { graph, seq, goal } => {
            let g = io::load_graph(&graph)?;
            let s = io::load_sequence(&seq)?;
            let report = verify_sequence(&g, &s, goal);
            emit(out, &report)?;
            Ok(if report.passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Simulate {
            graph,
            seq,
            init,
            mode,
            tolerance,
        } => {
            let g = io::load_graph(&graph)?;
            let s = io::load_sequence(&seq)?;
            let x0 = io::load_vector(&init)?;
            if s.order() != g.n() {
                return Err(Error::DimensionMismatch {
                    left: g.n(),
                    right: s.order(),
                });
            }
            let mode = match mode {
                SimMode::Exact => Mode::Exact,
                SimMode::Approx => Mode::Approximate { tolerance },
            };
            emit(out, &simulate(&s, &x0, mode)?)?;
            Ok(EXIT_OK)
        }
        Command::Analyze {
            graph,
            cycle_node_limit,
        } => {
            let g = io::load_graph(&graph)?;
            emit(out, &assess_feasibility(&g, cycle_node_limit)?)?;
            Ok(EXIT_OK)
        }
        Command::Certificate { graph, seq, init } => {
            let g = io::load_graph(&graph)?;
            let s = io::load_sequence(&seq)?;
            let x0 = io::load_vector(&init)?;
            match extract_even_cycle_certificate(&g, &s, &x0)? {
                Certificate::Walk(walk) => emit(out, &walk)?,
                Certificate::Degenerate => {
                    writeln!(out, "degenerate").map_err(|source| Error::Io {
                        path: "<stdout>".into(),
                        source,
                    })?
                }
            }
            Ok(EXIT_OK)
        }
        Command::Evidence {
            cycle_length,
            trials,
            max_length,
            seed,
        } => {
            let report = cycle_impossibility_evidence(cycle_length, trials, max_length, seed)
                .map_err(|e| match e {
                    Error::Precondition(m) => Error::Format {
                        path: "<arguments>".into(),
                        message: m,
                        schema: "--cycle-length even >= 4, --max-length >= 1",
                    },
                    other => other,
                })?;
            emit(out, &report)?;
            Ok(if report.clean() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Demo => {
            let report = demo_paper_example()?;
            emit(out, &report)?;
            Ok(if report.passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}
