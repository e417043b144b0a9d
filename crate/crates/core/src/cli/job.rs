use std::fmt;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::CliError;
use crate::gradedlie::{parse_model, ModelSpec};
use crate::models::bundled;

#[derive(Debug, Parser)]
#[command(
    name = "autfi",
    version,
    about = "Rational homotopy of automorphisms of wedges and connected sums, as FI-modules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute homology dimensions, characters and checks over a grid of (n, k).
    Compute(ComputeArgs),
    /// List the bundled model files.
    Models,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

/// An inclusive range written `A..B` or `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn iter(&self) -> RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start == 0 {
            return Err("ranges start at 1".into());
        }
        if start > end {
            return Err(format!("empty range {start}..{end}"));
        }
        Ok(Span { start, end })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    /// Model file, or `builtin:<name>` for a bundled model.
    #[arg(long)]
    pub model: String,
    /// Complex to compute: `pointed` or `boundary`.
    #[arg(long, default_value = "pointed")]
    pub mode: String,
    /// Homological degrees, `A..B` (inclusive).
    #[arg(long, default_value = "1")]
    pub k: Span,
    /// Arities, `A..B` (inclusive).
    #[arg(long, default_value = "1..3")]
    pub n: Span,
    /// Decompose each cell into irreducibles, in padded coordinates.
    #[arg(long)]
    pub decompose: bool,
    /// Check induced maps against permutations fixing their image (all n < m in range), and sample bracket closure.
    #[arg(long)]
    pub check_consistency: bool,
    /// Report whether each H_k(m) is generated from smaller arities.
    #[arg(long)]
    pub check_generation: bool,
    /// Check the PBW identity for L(H^{⊕n}) at every arity in range.
    #[arg(long)]
    pub check_pbw: bool,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest pointed slice dimension to attempt.
    #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    pub workers: Option<usize>,
}

pub const DEFAULT_MAX_DIM: usize = 20_000;

/// A validated request.
#[derive(Debug, Clone)]
pub struct JobSpec {
    pub model_label: String,
    pub model_bytes: Vec<u8>,
    pub model: ModelSpec,
    pub mode: String,
    pub k: Span,
    pub n: Span,
    pub decompose: bool,
    pub check_consistency: bool,
    pub check_generation: bool,
    pub check_pbw: bool,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
    pub max_dim: usize,
    pub workers: Option<usize>,
}

/// Reads `path` (or a `builtin:` name), parses and validates it.
pub fn load_model(path: &str) -> Result<(Vec<u8>, ModelSpec), CliError> {
    let bytes = match path.strip_prefix("builtin:") {
        Some(name) => bundled(name)
            .ok_or_else(|| CliError::Usage(format!("no bundled model named `{name}`")))?
            .as_bytes()
            .to_vec(),
        None => std::fs::read(Path::new(path)).map_err(|e| CliError::Io {
            path: path.to_string(),
            message: e.to_string(),
        })?,
    };
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Usage(format!("{path} is not UTF-8")))?;
    let model = parse_model(&text).map_err(|e| CliError::Parse {
        path: path.to_string(),
        error: e,
    })?;
    let violations = model.validate();
    if !violations.is_empty() {
        return Err(CliError::Validation {
            path: path.to_string(),
            violations,
        });
    }
    Ok((bytes, model))
}

impl JobSpec {
    pub fn from_args(args: &ComputeArgs) -> Result<Self, CliError> {
        let (model_bytes, model) = load_model(&args.model)?;
        let registry = crate::dermodel::ModeRegistry::default();
        let mode = registry.get(&args.mode).map_err(|e| CliError::Usage(e.to_string()))?;
        mode.check_model(&model).map_err(|e| CliError::Usage(e.to_string()))?;
        if args.workers == Some(0) {
            return Err(CliError::Usage("--workers must be positive".into()));
        }
        Ok(Self {
            model_label: model.name.clone(),
            model_bytes,
            model,
            mode: args.mode.clone(),
            k: args.k,
            n: args.n,
            decompose: args.decompose,
            check_consistency: args.check_consistency,
            check_generation: args.check_generation,
            check_pbw: args.check_pbw,
            format: args.format,
            cache_dir: args.cache_dir.clone(),
            seed: args.seed,
            max_dim: args.max_dim,
            workers: args.workers,
        })
    }
}
