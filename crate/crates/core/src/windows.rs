//! Block planning (sizes, overlaps, exponent offsets) and execution of all blocks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{Bitstring, MAX_BITS};
use crate::blocksim::{
    Backend, BlockCircuitParams, BlockDistribution, CandidateSet, MAX_BLOCK_QUBITS,
};
use crate::error::{Error, Result};
use crate::numtheory::{self, gcd, BaseDraw};
use crate::rng;
use crate::scalar::Real;

/// Longest stitched phase estimate, keeping `2^n_total` inside a `u128`.
pub const MAX_TOTAL_BITS: u32 = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPlan {
    /// 1-based block number.
    pub index: usize,
    pub m: u32,
    /// Overlap with the left neighbor; 0 for the first block.
    pub overlap: u32,
    pub kappa: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowPlan {
    blocks: Vec<BlockPlan>,
}

impl WindowPlan {
    pub fn blocks(&self) -> &[BlockPlan] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `Σ (m_i − t_i)`: length of every stitched phase estimate.
    pub fn n_total(&self) -> u32 {
        self.blocks.iter().map(|b| b.m - b.overlap).sum()
    }

    pub fn sizes(&self) -> Vec<u32> {
        self.blocks.iter().map(|b| b.m).collect()
    }

    pub fn overlaps(&self) -> Vec<u32> {
        self.blocks.iter().map(|b| b.overlap).collect()
    }
}

/// Builds the block sequence. Offsets follow `kappa_1 = 0`,
/// `kappa_{i+1} = kappa_i + m_i − t_{i+1}`.
pub fn plan_blocks(sizes: &[u32], overlaps: &[u32]) -> Result<WindowPlan> {
    if sizes.is_empty() {
        return Err(Error::config("blocks", "at least one block is required"));
    }
    if overlaps.len() != sizes.len() {
        return Err(Error::config(
            "overlaps",
            format!("{} overlaps given for {} blocks", overlaps.len(), sizes.len()),
        ));
    }
    for (i, &m) in sizes.iter().enumerate() {
        if m == 0 || m > MAX_BLOCK_QUBITS {
            return Err(Error::config(
                format!("blocks[{}]", i + 1),
                format!("size {m} is outside [1, {MAX_BLOCK_QUBITS}]"),
            ));
        }
    }
    if overlaps[0] != 0 {
        return Err(Error::config("overlaps[1]", "the first overlap must be 0"));
    }
    for i in 1..sizes.len() {
        let (t, m, m_prev) = (overlaps[i], sizes[i], sizes[i - 1]);
        if t >= m {
            return Err(Error::config(
                format!("overlaps[{}]", i + 1),
                format!("overlap {t} must be smaller than the block size {m}"),
            ));
        }
        if t > m_prev {
            return Err(Error::config(
                format!("overlaps[{}]", i + 1),
                format!("overlap {t} exceeds the previous block size {m_prev}"),
            ));
        }
    }

    let mut blocks = Vec::with_capacity(sizes.len());
    let mut kappa = 0u32;
    for (i, (&m, &t)) in sizes.iter().zip(overlaps).enumerate() {
        if i > 0 {
            kappa += sizes[i - 1] - t;
        }
        blocks.push(BlockPlan {
            index: i + 1,
            m,
            overlap: t,
            kappa,
        });
    }
    let plan = WindowPlan { blocks };
    if plan.n_total() > MAX_TOTAL_BITS.min(MAX_BITS) {
        return Err(Error::config(
            "blocks",
            format!("total phase length {} exceeds {MAX_TOTAL_BITS} bits", plan.n_total()),
        ));
    }
    Ok(plan)
}

/// Every input of one factoring run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: u64,
    pub base: Option<u64>,
    pub blocks: Vec<u32>,
    pub overlaps: Vec<u32>,
    /// 0 selects exact mode.
    pub shots: u64,
    pub top_k: usize,
    pub max_combos: usize,
    pub seed: u64,
    pub backend: Backend,
}

/// Where the base of an attempt came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseChoice {
    Given(u64),
    Sampled(u64),
    /// The base shares a factor with N, which ends the run classically.
    SharedFactor { base: u64, factor: u64 },
}

impl BaseChoice {
    pub fn base(&self) -> u64 {
        match *self {
            BaseChoice::Given(a) | BaseChoice::Sampled(a) => a,
            BaseChoice::SharedFactor { base, .. } => base,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidatedRun {
    pub config: RunConfig,
    pub n_target: u32,
    pub plan: WindowPlan,
    pub base: BaseChoice,
}

/// Checks every input and fixes the base of the first attempt.
pub fn validate_config(config: &RunConfig) -> Result<ValidatedRun> {
    let n = config.n;
    if n < 9 {
        return Err(Error::config("n", format!("{n} is not an odd composite")));
    }
    if n.is_multiple_of(2) {
        return Err(Error::config("n", format!("{n} is even")));
    }
    if numtheory::is_prime(n) {
        return Err(Error::config("n", format!("{n} is prime")));
    }
    if let Some((p, k)) = numtheory::prime_power(n) {
        return Err(Error::config("n", format!("{n} = {p}^{k} is a prime power")));
    }
    if config.top_k == 0 {
        return Err(Error::config("top_k", "must be at least 1"));
    }
    if config.max_combos == 0 {
        return Err(Error::config("max_combos", "must be at least 1"));
    }
    let plan = plan_blocks(&config.blocks, &config.overlaps)?;
    let base = choose_base(config, 0)?;
    Ok(ValidatedRun {
        config: config.clone(),
        n_target: numtheory::ceil_log2(n),
        plan,
        base,
    })
}

/// Base for `attempt`: the configured base on attempt 0, otherwise a fresh
/// draw from the attempt's seeded stream.
pub fn choose_base(config: &RunConfig, attempt: u32) -> Result<BaseChoice> {
    let n = config.n;
    match (attempt, config.base) {
        (0, Some(a)) => {
            if a < 2 || a >= n {
                return Err(Error::config("base", format!("{a} is outside [2, {}]", n - 1)));
            }
            let g = gcd(a, n);
            Ok(if g == 1 {
                BaseChoice::Given(a)
            } else {
                BaseChoice::SharedFactor { base: a, factor: g }
            })
        }
        _ => {
            let mut stream = rng::base_stream(config.seed, attempt);
            Ok(match numtheory::sample_coprime_base(n, &mut stream)? {
                BaseDraw::Coprime(a) => BaseChoice::Sampled(a),
                BaseDraw::Factor { base, factor } => BaseChoice::SharedFactor { base, factor },
            })
        }
    }
}

/// Result of running one block.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockRun<T> {
    pub plan: BlockPlan,
    pub distribution: BlockDistribution<T>,
    pub candidates: CandidateSet,
    pub selected: Vec<Bitstring>,
}

/// Runs every block of `plan` with base `a`, fanning out over `jobs` workers.
///
/// Output is ordered by block index and does not depend on `jobs`.
pub fn run_all_blocks<T: Real>(
    config: &RunConfig,
    a: u64,
    plan: &WindowPlan,
    attempt: u32,
    jobs: usize,
) -> Result<Vec<BlockRun<T>>> {
    let run_one = |block: &BlockPlan| -> Result<BlockRun<T>> {
        let params = BlockCircuitParams::new(config.n, a, block.kappa, block.m)?;
        let distribution = config.backend.distribution::<T>(&params)?;
        let mut stream = rng::block_stream(config.seed, attempt, block.index);
        let candidates =
            CandidateSet::from_distribution(block.index, &distribution, config.shots, &mut stream);
        let selected = candidates.top(config.top_k);
        Ok(BlockRun {
            plan: *block,
            distribution,
            candidates,
            selected,
        })
    };

    if jobs <= 1 {
        return plan.blocks().iter().map(run_one).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::config("jobs", e.to_string()))?;
    pool.install(|| plan.blocks().par_iter().map(run_one).collect())
}
