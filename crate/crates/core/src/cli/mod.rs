//! Command-line driver: model loading, job orchestration, caching and reports.

mod cache;
mod job;
mod report;
mod run;

pub use cache::{sha256_hex, Cache, ENGINE_VERSION};
pub use job::{load_model, Cli, Command, ComputeArgs, Format, JobSpec, Span, DEFAULT_MAX_DIM};
pub use report::{emit_report, parse_report, CellReport, CheckRecord, DecompositionEntry, Report, SCHEMA_VERSION};
pub use run::run;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use thiserror::Error;

use crate::dermodel::DerError;
use crate::fistab::FiError;
use crate::gradedlie::{ParseError, Violation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;
pub const EXIT_RESOURCE_CAP: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{error}")]
    Parse { path: String, error: ParseError },
    #[error("{path}: invalid model:\n{}", .violations.iter().map(|v| format!("  {v}")).collect::<Vec<_>>().join("\n"))]
    Validation { path: String, violations: Vec<Violation> },
    #[error("model {model}, mode {mode}, n={n}, k={k}: {source}")]
    Cell {
        model: String,
        mode: String,
        n: usize,
        k: u32,
        source: FiError,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Cell {
                source: FiError::Der(DerError::CellTooLarge { .. }),
                ..
            } => EXIT_RESOURCE_CAP,
            CliError::Cell { .. } => EXIT_CHECK_FAILED,
            _ => EXIT_VALIDATION,
        }
    }
}

/// Runs the CLI and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    match cli.command {
        Command::Models => {
            for (name, _) in crate::models::BUNDLED {
                println!("builtin:{name}");
            }
            EXIT_OK
        }
        Command::Compute(args) => match JobSpec::from_args(&args).and_then(|job| run(&job).map(|r| (job, r))) {
            Ok((job, report)) => {
                let bytes = emit_report(&report, job.format);
                let mut out = std::io::stdout().lock();
                let _ = out.write_all(&bytes);
                let _ = out.flush();
                for c in report.failed_checks() {
                    eprintln!("check failed: {} at {}", c.check, c.cell);
                }
                if report.all_checks_passed {
                    EXIT_OK
                } else {
                    EXIT_CHECK_FAILED
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
    }
}
