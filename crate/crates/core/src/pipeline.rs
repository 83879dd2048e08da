//! End-to-end factoring run: plan, simulate blocks, stitch, recover, and
//! retry with fresh bases.

use std::time::Instant;

use crate::blocksim::multiplier_power;
use crate::error::Result;
use crate::recovery::recover_period_and_factor;
use crate::report::{
    AttemptRecord, BaseSource, BlockRecord, ConfigEcho, FactoringReport, Histogram,
    HistogramColumn, Method, Outcome, StageTimings, StitchedRecord,
};
use crate::scalar::Real;
use crate::stitcher::integrate_and_stitch;
use crate::windows::{choose_base, run_all_blocks, validate_config, BaseChoice, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Total number of attempts; later attempts draw fresh bases.
    pub retries: u32,
    /// Worker threads for block execution; `None` means one per block.
    pub jobs: Option<usize>,
    /// Record wall-clock stage timings (makes reports non-reproducible).
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            retries: 1,
            jobs: None,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub report: FactoringReport,
    pub histograms: Vec<Histogram>,
}

/// Runs the full pipeline in double precision.
pub fn factor(config: &RunConfig, options: &RunOptions) -> Result<RunOutput> {
    factor_with::<f64>(config, options)
}

pub fn factor_with<T: Real>(config: &RunConfig, options: &RunOptions) -> Result<RunOutput> {
    let validated = validate_config(config)?;
    let plan = &validated.plan;
    let jobs = options.jobs.unwrap_or(plan.len());
    let attempts_allowed = options.retries.max(1);

    let mut attempts = Vec::new();
    let mut histograms = Vec::new();
    let mut result = Outcome::none(None);

    for attempt in 0..attempts_allowed {
        let choice = if attempt == 0 {
            validated.base
        } else {
            choose_base(config, attempt)?
        };
        let base_source = match (attempt, choice) {
            (0, BaseChoice::Given(_)) => BaseSource::Given,
            (0, BaseChoice::SharedFactor { .. }) if config.base.is_some() => BaseSource::Given,
            _ => BaseSource::Sampled,
        };

        if let BaseChoice::SharedFactor { base, factor } = choice {
            let outcome = Outcome {
                method: Method::ClassicalGcd,
                base: Some(base),
                period: None,
                factor: Some(factor),
                cofactor: Some(config.n / factor),
            };
            attempts.push(AttemptRecord {
                attempt: attempt + 1,
                base,
                base_source,
                blocks: Vec::new(),
                stitched: Vec::new(),
                outcome,
                timings: None,
            });
            result = outcome;
            break;
        }

        let a = choice.base();
        let clock = Instant::now();
        let runs = run_all_blocks::<T>(config, a, plan, attempt, jobs)?;
        let blocks_ms = clock.elapsed().as_secs_f64() * 1e3;

        let clock = Instant::now();
        let selected: Vec<_> = runs.iter().map(|r| r.selected.clone()).collect();
        let stitched = integrate_and_stitch(&selected, &plan.sizes(), &plan.overlaps(), config.max_combos);
        let stitch_ms = clock.elapsed().as_secs_f64() * 1e3;

        let clock = Instant::now();
        let recovered = recover_period_and_factor(&stitched, a, config.n);
        let recover_ms = clock.elapsed().as_secs_f64() * 1e3;

        let outcome = match recovered.factor {
            Some(f) => Outcome {
                method: Method::ShorPeriod,
                base: Some(a),
                period: recovered.period,
                factor: Some(f),
                cofactor: Some(config.n / f),
            },
            None => Outcome::none(Some(a)),
        };

        for run in &runs {
            histograms.push(Histogram {
                attempt: attempt + 1,
                block_index: run.plan.index,
                m: run.plan.m,
                column: if config.shots == 0 {
                    HistogramColumn::Probability(
                        run.distribution
                            .probabilities()
                            .iter()
                            .map(|p| p.to_f64().unwrap_or(f64::NAN))
                            .collect(),
                    )
                } else {
                    HistogramColumn::Count(run.candidates.entries.clone())
                },
            });
        }

        attempts.push(AttemptRecord {
            attempt: attempt + 1,
            base: a,
            base_source,
            blocks: runs
                .iter()
                .map(|run| BlockRecord {
                    index: run.plan.index,
                    m: run.plan.m,
                    overlap: run.plan.overlap,
                    kappa: run.plan.kappa,
                    multiplier: multiplier_power(a, run.plan.kappa, config.n),
                    total_shots: run.candidates.total_shots,
                    counts: run.candidates.entries.clone(),
                    selected: run.selected.clone(),
                })
                .collect(),
            stitched: stitched.iter().map(StitchedRecord::from).collect(),
            outcome,
            timings: options.timings.then_some(StageTimings {
                blocks_ms,
                stitch_ms,
                recover_ms,
            }),
        });

        result = outcome;
        if outcome.found() {
            break;
        }
    }

    Ok(RunOutput {
        report: FactoringReport {
            config: ConfigEcho {
                run: config.clone(),
                retries: attempts_allowed,
            },
            n_target: validated.n_target,
            n_total: plan.n_total(),
            attempts,
            result,
        },
        histograms,
    })
}
