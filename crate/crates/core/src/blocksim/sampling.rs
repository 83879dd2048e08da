use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::BlockDistribution;
use crate::bits::Bitstring;
use crate::scalar::Real;

/// Count scale used in exact mode (`shots = 0`).
pub const EXACT_RESOLUTION: u64 = 1_000_000_000;

/// One observed outcome and how often it occurred.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub bitstring: Bitstring,
    pub count: u64,
}

/// Observed outcomes of one block, ranked by descending count with ties
/// broken by ascending integer value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSet {
    pub block_index: usize,
    pub total_shots: u64,
    pub entries: Vec<Tally>,
}

impl CandidateSet {
    pub fn from_distribution<T: Real, R: Rng + ?Sized>(
        block_index: usize,
        dist: &BlockDistribution<T>,
        shots: u64,
        rng: &mut R,
    ) -> Self {
        let entries = sample_counts(dist, shots, rng);
        let total_shots = if shots == 0 {
            entries.iter().map(|t| t.count).sum()
        } else {
            shots
        };
        CandidateSet {
            block_index,
            total_shots,
            entries,
        }
    }

    pub fn top(&self, k: usize) -> Vec<Bitstring> {
        select_top_candidates(&self.entries, k)
    }
}

/// Draws `shots` outcomes from `dist`, or in exact mode (`shots = 0`) scales
/// each probability to [`EXACT_RESOLUTION`] and rounds.
///
/// Only outcomes with a nonzero count are returned, already ranked.
pub fn sample_counts<T: Real, R: Rng + ?Sized>(
    dist: &BlockDistribution<T>,
    shots: u64,
    rng: &mut R,
) -> Vec<Tally> {
    let probs: Vec<f64> = dist
        .probabilities()
        .iter()
        .map(|p| p.to_f64().unwrap_or(0.0).max(0.0))
        .collect();

    let counts: Vec<u64> = if shots == 0 {
        probs
            .iter()
            .map(|&p| (p * EXACT_RESOLUTION as f64).round() as u64)
            .collect()
    } else {
        multinomial(&probs, shots, rng)
    };

    let mut entries: Vec<Tally> = counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(b, count)| Tally {
            bitstring: dist.outcome(b),
            count,
        })
        .collect();
    rank(&mut entries);
    entries
}

/// Sequential conditional binomials: bin `i` takes `Bin(remaining, p_i / mass_left)`.
fn multinomial<R: Rng + ?Sized>(probs: &[f64], shots: u64, rng: &mut R) -> Vec<u64> {
    let mut counts = vec![0u64; probs.len()];
    let mut remaining = shots;
    let mut mass_left: f64 = probs.iter().sum();
    let last = probs.iter().rposition(|&p| p > 0.0);
    for (i, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if Some(i) == last {
            counts[i] = remaining;
            break;
        }
        if p <= 0.0 {
            continue;
        }
        let frac = (p / mass_left).clamp(0.0, 1.0);
        let draw = Binomial::new(remaining, frac)
            .expect("probability clamped to [0, 1]")
            .sample(rng);
        counts[i] = draw;
        remaining -= draw;
        mass_left -= p;
    }
    counts
}

fn rank(entries: &mut [Tally]) {
    entries.sort_by(|x, y| {
        y.count
            .cmp(&x.count)
            .then_with(|| x.bitstring.value().cmp(&y.bitstring.value()))
    });
}

/// First `k` entries under (descending count, ascending value).
pub fn select_top_candidates(entries: &[Tally], k: usize) -> Vec<Bitstring> {
    assert!(k >= 1, "k must be at least 1");
    let mut ranked = entries.to_vec();
    rank(&mut ranked);
    ranked.into_iter().take(k).map(|t| t.bitstring).collect()
}
