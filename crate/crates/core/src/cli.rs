//! Command-line front end.
//!
//! ```text
//! windowed-shor factor --n 15 --base 2 --blocks 3,4,4,5 --overlaps 0,2,3,2 \
//!     --shots 0 --top-k 2 --max-combos 2 --seed 7
//! ```
//!
//! Exit codes: 0 factor found, 2 no factor after all attempts, 1 bad input.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::blocksim::Backend;
use crate::error::{Error, Result};
use crate::pipeline::{factor, RunOptions};
use crate::report::{emit_report, write_histograms, Destination};
use crate::windows::RunConfig;

pub const EXIT_FACTOR_FOUND: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_FACTOR: i32 = 2;

pub const DEFAULT_SHOTS: u64 = 1024;
pub const DEFAULT_TOP_K: usize = 4;
pub const DEFAULT_MAX_COMBOS: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "windowed-shor", version, about = "Shor factoring with windowed phase estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Factor N by order finding over overlapping phase-estimation blocks.
    Factor(FactorArgs),
}

#[derive(Debug, Args)]
struct FactorArgs {
    /// Odd composite to factor (not a prime power).
    #[arg(long)]
    n: Option<u64>,
    /// Base coprime to N; sampled from the seed when omitted.
    #[arg(long)]
    base: Option<u64>,
    /// Counting qubits per block, e.g. 3,4,4,5.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    blocks: Option<Vec<u32>>,
    /// Overlap of each block with its left neighbor; the first must be 0.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    overlaps: Option<Vec<u32>>,
    /// Shots per block; 0 ranks outcomes by exact probability.
    #[arg(long)]
    shots: Option<u64>,
    /// Candidates kept per block.
    #[arg(long)]
    top_k: Option<usize>,
    /// Cap on block sequences kept while stitching.
    #[arg(long)]
    max_combos: Option<usize>,
    /// Master seed for base sampling and shot noise.
    #[arg(long)]
    seed: Option<u64>,
    /// analytic or statevector.
    #[arg(long, value_parser = parse_backend)]
    backend: Option<Backend>,
    /// Total attempts; attempts after the first use fresh bases.
    #[arg(long)]
    retries: Option<u32>,
    /// Worker threads for block simulation (default: one per block).
    #[arg(long)]
    jobs: Option<usize>,
    /// Report path (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for per-block CSV histograms.
    #[arg(long)]
    emit_histograms: Option<PathBuf>,
    /// JSON file with any of the run settings; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Include wall-clock stage timings in the report.
    #[arg(long)]
    timings: bool,
}

fn parse_backend(s: &str) -> std::result::Result<Backend, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Settings accepted from `--config`. A saved report is accepted too: its
/// `config` object is used.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    n: Option<u64>,
    base: Option<u64>,
    blocks: Option<Vec<u32>>,
    overlaps: Option<Vec<u32>>,
    shots: Option<u64>,
    top_k: Option<usize>,
    max_combos: Option<usize>,
    seed: Option<u64>,
    backend: Option<Backend>,
    retries: Option<u32>,
}

fn load_config_file(path: &Path) -> Result<FileConfig> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let json_err = |source| Error::Json {
        path: path.to_path_buf(),
        source,
    };
    let mut value: serde_json::Value = serde_json::from_str(&text).map_err(json_err)?;
    if let Some(inner) = value.get_mut("config").map(serde_json::Value::take) {
        value = inner;
    }
    serde_json::from_value(value).map_err(json_err)
}

fn resolve(args: &FactorArgs) -> Result<(RunConfig, RunOptions)> {
    let file = match &args.config {
        Some(path) => load_config_file(path)?,
        None => FileConfig::default(),
    };
    let n = args
        .n
        .or(file.n)
        .ok_or_else(|| Error::config("n", "is required"))?;
    let blocks = args
        .blocks
        .clone()
        .or(file.blocks)
        .ok_or_else(|| Error::config("blocks", "is required"))?;
    let overlaps = args
        .overlaps
        .clone()
        .or(file.overlaps)
        .unwrap_or_else(|| vec![0; blocks.len()]);
    let jobs = match args.jobs {
        Some(0) => return Err(Error::config("jobs", "must be at least 1")),
        other => other,
    };
    let config = RunConfig {
        n,
        base: args.base.or(file.base),
        blocks,
        overlaps,
        shots: args.shots.or(file.shots).unwrap_or(DEFAULT_SHOTS),
        top_k: args.top_k.or(file.top_k).unwrap_or(DEFAULT_TOP_K),
        max_combos: args.max_combos.or(file.max_combos).unwrap_or(DEFAULT_MAX_COMBOS),
        seed: args.seed.or(file.seed).unwrap_or(0),
        backend: args.backend.or(file.backend).unwrap_or_default(),
    };
    let options = RunOptions {
        retries: args.retries.or(file.retries).unwrap_or(1),
        jobs,
        timings: args.timings,
    };
    if options.retries == 0 {
        return Err(Error::config("retries", "must be at least 1"));
    }
    Ok((config, options))
}

fn run_factor(args: &FactorArgs) -> Result<i32> {
    let (config, options) = resolve(args)?;
    let output = factor(&config, &options)?;

    let destination = match &args.out {
        Some(path) => Destination::File(path.clone()),
        None => Destination::Stdout,
    };
    emit_report(&output.report, &destination)?;
    if let Some(dir) = &args.emit_histograms {
        write_histograms(&output.histograms, dir)?;
    }

    let result = &output.report.result;
    Ok(match result.factor {
        Some(f) => {
            let via = match result.period {
                Some(r) => format!("period {r}"),
                None => "shared gcd".to_string(),
            };
            eprintln!(
                "{} = {} x {} (base {}, {via})",
                config.n,
                f,
                config.n / f,
                result.base.unwrap_or_default()
            );
            EXIT_FACTOR_FOUND
        }
        None => {
            eprintln!("no non-trivial factor of {} found", config.n);
            EXIT_NO_FACTOR
        }
    })
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run_command<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_FACTOR_FOUND;
            }
            let rendered = e.to_string();
            eprintln!("{}", rendered.lines().next().unwrap_or("error: invalid arguments"));
            return EXIT_USAGE;
        }
    };
    match cli.command {
        Command::Factor(args) => run_factor(&args).unwrap_or_else(|e| {
            eprintln!("error: {e}");
            EXIT_USAGE
        }),
    }
}
