//! Closed-form block distribution.
//!
//! With `g = a^(2^kappa) mod N` and `f(x) = g^x mod N`, the outcome law is
//!
//! ```text
//! P(b) = 4^(−m) · Σ_w | Σ_{x < 2^m, f(x) = w} e^(−2πi·b·x/2^m) |²
//! ```
//!
//! `f(x) = f(x')` exactly when `x ≡ x' (mod r)`, `r` being the order of `g`.
//! Each residue class `{c, c + r, c + 2r, …}` contributes a geometric series
//! whose squared modulus is a Fejér kernel `sin²(πLθ)/sin²(πθ)` with
//! `θ = b·r/2^m` and `L` the class size. Classes come in at most two sizes,
//! so each outcome costs O(1).

use super::{multiplier_power, BlockCircuitParams, BlockDistribution};
use crate::numtheory::mul_mod;
use crate::scalar::Real;

pub fn block_distribution_analytic<T: Real>(params: &BlockCircuitParams) -> BlockDistribution<T> {
    let m = params.counting_qubits();
    let size = 1u64 << m;
    let g = multiplier_power(params.base(), params.kappa(), params.modulus());

    let Some(r) = orbit_length_below(g, params.modulus(), size) else {
        // all 2^m powers are distinct: every class is a singleton
        let p = T::one() / T::from_int(size);
        return BlockDistribution::new(m, vec![p; size as usize]);
    };

    let short_len = size / r;
    let long_classes = size % r;
    let short_classes = r - long_classes;
    let scale = T::one() / T::from_int(size).powi(2);

    let probabilities = (0..size)
        .map(|b| {
            // θ = phase_num / size, reduced mod 1
            let phase_num = ((b as u128 * r as u128) % size as u128) as u64;
            let long = if long_classes == 0 {
                T::zero()
            } else {
                T::from_int(long_classes) * fejer(short_len + 1, phase_num, size)
            };
            (long + T::from_int(short_classes) * fejer(short_len, phase_num, size)) * scale
        })
        .collect();
    BlockDistribution::new(m, probabilities)
}

/// `|Σ_{k<len} e^(−2πi·k·θ)|²` for `θ = phase_num / size`.
fn fejer<T: Real>(len: u64, phase_num: u64, size: u64) -> T {
    if phase_num == 0 {
        return T::from_int(len).powi(2);
    }
    // sin² has period π, so reduce len·phase_num mod size before scaling
    let top = ((len as u128 * phase_num as u128) % size as u128) as u64;
    let size_t = T::from_int(size);
    let numer = (T::PI() * T::from_int(top) / size_t).sin();
    let denom = (T::PI() * T::from_int(phase_num) / size_t).sin();
    (numer / denom).powi(2)
}

/// Order of `g` modulo `n` if it is smaller than `limit`, else `None`.
pub fn orbit_length_below(g: u64, n: u64, limit: u64) -> Option<u64> {
    let one = 1 % n;
    let mut x = g % n;
    for r in 1..limit {
        if x == one {
            return Some(r);
        }
        x = mul_mod(x, g, n);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(n: u64, a: u64, kappa: u32, m: u32) -> BlockDistribution<f64> {
        block_distribution_analytic(&BlockCircuitParams::new(n, a, kappa, m).unwrap())
    }

    /// Direct evaluation of the defining double sum.
    fn brute_force(n: u64, a: u64, kappa: u32, m: u32) -> Vec<f64> {
        let size = 1u64 << m;
        let g = multiplier_power(a, kappa, n);
        let mut classes: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        let mut w = 1 % n;
        for x in 0..size {
            classes.entry(w).or_default().push(x);
            w = mul_mod(w, g, n);
        }
        (0..size)
            .map(|b| {
                classes
                    .values()
                    .map(|xs| {
                        xs.iter()
                            .map(|&x| {
                                let angle = -2.0 * std::f64::consts::PI * (b * x) as f64 / size as f64;
                                num_complex::Complex::from_polar(1.0, angle)
                            })
                            .sum::<num_complex::Complex<f64>>()
                            .norm_sqr()
                    })
                    .sum::<f64>()
                    / (size * size) as f64
            })
            .collect()
    }

    #[test]
    fn two_outcomes_for_orbit_two() {
        let d = dist(15, 2, 1, 4);
        for b in 0..16u64 {
            let expected = if b == 0 || b == 8 { 0.5 } else { 0.0 };
            assert!((d.probability(b) - expected).abs() < 1e-12, "b={b}");
        }
    }

    #[test]
    fn four_outcomes_for_orbit_four() {
        let d = dist(221, 12, 2, 4);
        for b in 0..16u64 {
            let expected = if b % 4 == 0 { 0.25 } else { 0.0 };
            assert!((d.probability(b) - expected).abs() < 1e-12, "b={b}");
        }
    }

    #[test]
    fn unit_multiplier_is_point_mass() {
        for m in 1..=6 {
            let d = dist(221, 12, 4, m);
            assert!((d.probability(0) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn long_orbit_is_uniform() {
        let d = dist(221, 12, 0, 3);
        assert!(d.probabilities().iter().all(|&p| (p - 0.125).abs() < 1e-15));
    }

    #[test]
    fn matches_double_sum_on_non_dyadic_orbits() {
        for &(n, a) in &[(21u64, 2u64), (33, 5), (35, 3), (55, 7), (39, 2)] {
            for kappa in 0..4 {
                for m in 1..=7 {
                    let fast = dist(n, a, kappa, m);
                    let slow = brute_force(n, a, kappa, m);
                    for (b, (&p, &q)) in fast.probabilities().iter().zip(&slow).enumerate() {
                        assert!((p - q).abs() < 1e-12, "n={n} a={a} kappa={kappa} m={m} b={b}");
                    }
                    assert!((fast.total() - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn handles_large_modulus_without_guard() {
        // 2^31 − 1 is prime, so use a semiprime just below 2^31
        let n = 46337u64 * 46327;
        let d = dist(n, 3, 5, 18);
        assert!((d.total() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn single_precision_alias() {
        let d: BlockDistribution<f32> =
            block_distribution_analytic(&BlockCircuitParams::new(15, 2, 0, 3).unwrap());
        assert!((d.probability(6) - 0.25).abs() < 1e-6);
    }
}
