//! Windowed quantum phase estimation for Shor factoring.
//!
//! The phase register of order finding is split into small overlapping
//! blocks. Each block is simulated exactly ([`blocksim`]), its top outcomes
//! are stitched with carry-aware consistency checks ([`stitcher`]), and the
//! stitched phases go through continued fractions to a period and a factor
//! ([`recovery`]). [`pipeline`] runs the whole thing; [`cli`] wraps it.

pub mod bits;
pub mod blocksim;
pub mod cli;
pub mod error;
pub mod numtheory;
pub mod pipeline;
pub mod recovery;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod stitcher;
pub mod windows;

pub use bits::Bitstring;
pub use blocksim::{Backend, BlockCircuitParams, CandidateSet};
pub use error::{Error, Result};
pub use numtheory::{Fraction, PeriodCandidateList};
pub use recovery::RecoveryResult;
pub use scalar::Real;
pub use stitcher::StitchedCandidate;
pub use windows::{BlockPlan, RunConfig, WindowPlan};

/// Double-precision block distribution (the default everywhere).
pub type BlockDistribution = blocksim::BlockDistribution<f64>;
/// Single-precision block distribution.
pub type BlockDistributionF32 = blocksim::BlockDistribution<f32>;
/// Double-precision result of one block.
pub type BlockRun = windows::BlockRun<f64>;
/// Single-precision result of one block.
pub type BlockRunF32 = windows::BlockRun<f32>;
