//! JSON report and CSV histogram output.
//!
//! Key order is fixed by field order, phases are written as exact
//! `numerator/denominator` strings, and no wall-clock data is included unless
//! timings are requested. Reruns with the same inputs produce identical bytes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bits::Bitstring;
use crate::blocksim::Tally;
use crate::error::{Error, Result};
use crate::stitcher::StitchedCandidate;
use crate::windows::RunConfig;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactoringReport {
    pub config: ConfigEcho,
    pub n_target: u32,
    pub n_total: u32,
    pub attempts: Vec<AttemptRecord>,
    pub result: Outcome,
}

/// Every input needed to reproduce the run; accepted back by `--config`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    #[serde(flatten)]
    pub run: RunConfig,
    pub retries: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseSource {
    Given,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttemptRecord {
    /// 1-based.
    pub attempt: u32,
    pub base: u64,
    pub base_source: BaseSource,
    pub blocks: Vec<BlockRecord>,
    pub stitched: Vec<StitchedRecord>,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<StageTimings>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub index: usize,
    pub m: u32,
    pub overlap: u32,
    pub kappa: u32,
    /// `a^(2^kappa) mod N`.
    pub multiplier: u64,
    pub total_shots: u64,
    pub counts: Vec<Tally>,
    pub selected: Vec<Bitstring>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StitchedRecord {
    pub bitstring: Bitstring,
    pub y: String,
    pub phase: String,
}

impl From<&StitchedCandidate> for StitchedRecord {
    fn from(c: &StitchedCandidate) -> Self {
        let phase = c.phase();
        StitchedRecord {
            bitstring: c.bits,
            y: c.y().to_string(),
            phase: format!("{}/{}", phase.numer(), phase.denom()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "shor-period")]
    ShorPeriod,
    #[serde(rename = "classical-gcd")]
    ClassicalGcd,
    #[serde(rename = "none")]
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub method: Method,
    pub base: Option<u64>,
    pub period: Option<u64>,
    pub factor: Option<u64>,
    pub cofactor: Option<u64>,
}

impl Outcome {
    pub fn none(base: Option<u64>) -> Self {
        Outcome {
            method: Method::None,
            base,
            period: None,
            factor: None,
            cofactor: None,
        }
    }

    pub fn found(&self) -> bool {
        self.factor.is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageTimings {
    pub blocks_ms: f64,
    pub stitch_ms: f64,
    pub recover_ms: f64,
}

/// Where a report goes: a file, or standard output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Destination {
    Stdout,
    File(PathBuf),
}

/// Canonical serialization of `report`.
pub fn render_report(report: &FactoringReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report is always serializable");
    text.push('\n');
    text
}

pub fn emit_report(report: &FactoringReport, destination: &Destination) -> Result<()> {
    let text = render_report(report);
    match destination {
        Destination::Stdout => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| Error::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
        Destination::File(path) => fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
    }
}

/// Second column of a histogram.
#[derive(Clone, Debug, PartialEq)]
pub enum HistogramColumn {
    /// Exact outcome probabilities, every outcome listed in integer order.
    Probability(Vec<f64>),
    /// Sampled counts of observed outcomes, in rank order.
    Count(Vec<Tally>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub attempt: u32,
    pub block_index: usize,
    pub m: u32,
    pub column: HistogramColumn,
}

impl Histogram {
    pub fn file_name(&self) -> String {
        format!("attempt{}_block{}.csv", self.attempt, self.block_index)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match &self.column {
            HistogramColumn::Probability(probs) => {
                out.push_str("bitstring,probability\n");
                for (b, p) in probs.iter().enumerate() {
                    let bits = Bitstring::new(b as u128, self.m);
                    out.push_str(&format!("{bits},{p}\n"));
                }
            }
            HistogramColumn::Count(tallies) => {
                out.push_str("bitstring,count\n");
                for t in tallies {
                    out.push_str(&format!("{},{}\n", t.bitstring, t.count));
                }
            }
        }
        out
    }
}

/// Writes one CSV per histogram into `dir`, creating it if needed.
pub fn write_histograms(histograms: &[Histogram], dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    for h in histograms {
        let path = dir.join(h.file_name());
        fs::write(&path, h.to_csv()).map_err(|source| Error::Io { path, source })?;
    }
    Ok(())
}
