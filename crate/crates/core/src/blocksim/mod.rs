//! Measurement law of a single windowed phase-estimation block.
//!
//! A block with exponent offset `kappa` and `m` counting qubits prepares the
//! work register in `|1⟩`, controls `U^(2^(kappa+j))` on counting qubit `j`
//! (`U: w ↦ a·w mod N`), applies an inverse QFT to the counting register and
//! measures it. Two backends compute the resulting outcome distribution:
//! [`Backend::Statevector`] runs the circuit gate by gate and
//! [`Backend::Analytic`] evaluates the closed form directly.

mod analytic;
mod sampling;
mod statevector;

use serde::{Deserialize, Serialize};

pub use analytic::{block_distribution_analytic, orbit_length_below};
pub use sampling::{
    sample_counts, select_top_candidates, CandidateSet, Tally, EXACT_RESOLUTION,
};
pub use statevector::{block_distribution_statevector, inverse_qft, STATEVECTOR_QUBIT_LIMIT};

use crate::bits::Bitstring;
use crate::error::{Error, Result};
use crate::numtheory::{ceil_log2, gcd, mul_mod};
use crate::scalar::Real;

/// Largest counting register a block may use.
pub const MAX_BLOCK_QUBITS: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockCircuitParams {
    n: u64,
    a: u64,
    kappa: u32,
    m: u32,
    n_target: u32,
}

impl BlockCircuitParams {
    pub fn new(n: u64, a: u64, kappa: u32, m: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::config("n", format!("{n} is below 3")));
        }
        if gcd(a, n) != 1 {
            return Err(Error::Domain(format!("base {a} is not coprime to {n}")));
        }
        if m == 0 || m > MAX_BLOCK_QUBITS {
            return Err(Error::config(
                "block size",
                format!("{m} is outside [1, {MAX_BLOCK_QUBITS}]"),
            ));
        }
        Ok(BlockCircuitParams {
            n,
            a,
            kappa,
            m,
            n_target: ceil_log2(n),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn base(&self) -> u64 {
        self.a
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    pub fn counting_qubits(&self) -> u32 {
        self.m
    }

    pub fn work_qubits(&self) -> u32 {
        self.n_target
    }

    /// `a^(2^(kappa + j)) mod N`: the multiplier controlled by counting qubit `j`.
    pub fn controlled_multiplier(&self, j: u32) -> u64 {
        multiplier_power(self.a, self.kappa + j, self.n)
    }
}

/// `a^(2^kappa) mod n` by `kappa` successive squarings.
pub fn multiplier_power(a: u64, kappa: u32, n: u64) -> u64 {
    let mut g = a % n;
    for _ in 0..kappa {
        g = mul_mod(g, g, n);
    }
    g
}

/// Probabilities of the `2^m` counting-register outcomes, indexed by the
/// outcome's integer value.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDistribution<T> {
    m: u32,
    probabilities: Vec<T>,
}

impl<T: Real> BlockDistribution<T> {
    pub fn new(m: u32, probabilities: Vec<T>) -> Self {
        assert_eq!(probabilities.len(), 1usize << m, "need 2^m probabilities");
        BlockDistribution { m, probabilities }
    }

    pub fn counting_qubits(&self) -> u32 {
        self.m
    }

    pub fn probabilities(&self) -> &[T] {
        &self.probabilities
    }

    pub fn probability(&self, outcome: u64) -> T {
        self.probabilities[outcome as usize]
    }

    pub fn outcome(&self, index: usize) -> Bitstring {
        Bitstring::new(index as u128, self.m)
    }

    pub fn total(&self) -> T {
        self.probabilities.iter().fold(T::zero(), |acc, &p| acc + p)
    }

    /// Outcomes whose probability exceeds `threshold`, ascending.
    pub fn support(&self, threshold: T) -> Vec<u64> {
        self.probabilities
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > threshold)
            .map(|(b, _)| b as u64)
            .collect()
    }

    /// `‖self − other‖_∞`.
    pub fn max_abs_diff(&self, other: &BlockDistribution<T>) -> T {
        assert_eq!(self.m, other.m);
        self.probabilities
            .iter()
            .zip(&other.probabilities)
            .fold(T::zero(), |acc, (&p, &q)| acc.max((p - q).abs()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Analytic,
    Statevector,
}

impl Backend {
    pub fn distribution<T: Real>(self, params: &BlockCircuitParams) -> Result<BlockDistribution<T>> {
        match self {
            Backend::Analytic => Ok(block_distribution_analytic(params)),
            Backend::Statevector => block_distribution_statevector(params),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Backend::Analytic => "analytic",
            Backend::Statevector => "statevector",
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Backend::Analytic),
            "statevector" => Ok(Backend::Statevector),
            other => Err(Error::config(
                "backend",
                format!("{other:?} is not one of analytic, statevector"),
            )),
        }
    }
}
