//! Period recovery from stitched phases and the final gcd step.

use crate::error::{Error, Result};
use crate::numtheory::{cf_denominators, gcd, mod_pow_unchecked};
use crate::stitcher::StitchedCandidate;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RecoveryResult {
    pub period: Option<u64>,
    pub factor: Option<u64>,
    pub source: Option<StitchedCandidate>,
}

impl RecoveryResult {
    pub fn found(&self) -> bool {
        self.factor.is_some()
    }
}

/// Order in which candidates are examined: ascending `ŷ`, with `ŷ = 0` last.
pub fn candidate_order(candidates: &[StitchedCandidate]) -> Vec<StitchedCandidate> {
    let mut ordered = candidates.to_vec();
    ordered.sort_by_key(|c| (c.y() == 0, c.y(), c.n_total()));
    ordered
}

/// Tries every convergent denominator `r ≤ N` of each candidate's phase;
/// the first `r` with `a^r ≡ 1` that yields a nontrivial factor wins.
pub fn recover_period_and_factor(candidates: &[StitchedCandidate], a: u64, n: u64) -> RecoveryResult {
    assert!(n >= 3 && gcd(a, n) == 1, "base must be a unit mod N");
    for candidate in candidate_order(candidates) {
        let denominators = cf_denominators(candidate.y(), 1u128 << candidate.n_total(), n);
        for r in denominators.iter() {
            if r == 0 || r > n || mod_pow_unchecked(a, r, n) != 1 {
                continue;
            }
            if let Some(factor) = factor_from_verified_period(a, r, n) {
                return RecoveryResult {
                    period: Some(r),
                    factor: Some(factor),
                    source: Some(candidate),
                };
            }
        }
    }
    RecoveryResult::default()
}

/// Classical step given `a^r ≡ 1 (mod N)`: returns the first of
/// `gcd(a^(r/2) − 1, N)`, `gcd(a^(r/2) + 1, N)` strictly between 1 and N.
pub fn try_factor_from_period(a: u64, r: u64, n: u64) -> Result<Option<u64>> {
    if n < 3 {
        return Err(Error::config("n", format!("{n} is below 3")));
    }
    if r == 0 || mod_pow_unchecked(a, r, n) != 1 {
        return Err(Error::Domain(format!("{a}^{r} is not 1 mod {n}")));
    }
    Ok(factor_from_verified_period(a, r, n))
}

fn factor_from_verified_period(a: u64, r: u64, n: u64) -> Option<u64> {
    if r % 2 == 1 {
        return None;
    }
    let half = mod_pow_unchecked(a, r / 2, n);
    if half == n - 1 {
        return None;
    }
    let f1 = gcd((half + n - 1) % n, n);
    let f2 = gcd((half + 1) % n, n);
    let factor = [f1, f2].into_iter().find(|&f| f > 1 && f < n)?;
    assert!(n.is_multiple_of(factor), "gcd returned a non-divisor");
    Some(factor)
}
