//! Integer primitives: modular exponentiation, gcd, continued-fraction
//! convergents, multiplicative order and base sampling.

use num_rational::Ratio;
use rand::Rng;

use crate::error::{Error, Result};

/// Exact non-negative rational, always held in lowest terms.
pub type Fraction = Ratio<u128>;

/// `base^exponent mod modulus` by square-and-multiply.
pub fn mod_pow(base: u64, exponent: u64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(Error::config("modulus", format!("{modulus} is below 2")));
    }
    Ok(mod_pow_unchecked(base, exponent, modulus))
}

pub(crate) fn mod_pow_unchecked(base: u64, mut exponent: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut result = 1u128 % m;
    let mut acc = base as u128 % m;
    while exponent > 0 {
        if exponent & 1 == 1 {
            result = result * acc % m;
        }
        acc = acc * acc % m;
        exponent >>= 1;
    }
    result as u64
}

pub(crate) fn mul_mod(x: u64, y: u64, modulus: u64) -> u64 {
    ((x as u128 * y as u128) % modulus as u128) as u64
}

/// Greatest common divisor. `gcd(0, 0)` is 0.
pub fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

/// Ascending, duplicate-free denominators of continued-fraction convergents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodCandidateList(Vec<u64>);

impl PeriodCandidateList {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn contains(&self, q: u64) -> bool {
        self.0.binary_search(&q).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Denominators of the convergents of `y / denominator` that do not exceed `qmax`.
///
/// The expansion stops at a zero remainder or as soon as the next convergent's
/// denominator would exceed `qmax`. `y = 0` yields `[1]`.
pub fn cf_denominators(y: u128, denominator: u128, qmax: u64) -> PeriodCandidateList {
    assert!(denominator > 0, "denominator must be positive");
    let qmax = qmax as u128;
    let mut out: Vec<u64> = Vec::new();

    // q_{-2} = 1, q_{-1} = 0
    let (mut q_prev, mut q_cur) = (1u128, 0u128);
    let (mut num, mut den) = (y, denominator);
    while den != 0 {
        let a = num / den;
        (num, den) = (den, num - a * den);
        let q_next = match a.checked_mul(q_cur).and_then(|v| v.checked_add(q_prev)) {
            Some(q) if q <= qmax => q,
            _ => break,
        };
        (q_prev, q_cur) = (q_cur, q_next);
        if out.last() != Some(&(q_cur as u64)) {
            out.push(q_cur as u64);
        }
    }
    PeriodCandidateList(out)
}

/// Smallest `r ≥ 1` with `a^r ≡ 1 (mod n)`, by direct iteration.
pub fn multiplicative_order(a: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::config("modulus", format!("{n} is below 2")));
    }
    if gcd(a, n) != 1 {
        return Err(Error::Domain(format!("gcd({a}, {n}) != 1, order undefined")));
    }
    let a = a % n;
    let mut x = a;
    for r in 1..=n {
        if x == 1 % n {
            return Ok(r);
        }
        x = mul_mod(x, a, n);
    }
    unreachable!("order of a unit mod {n} exceeds {n}")
}

/// Outcome of drawing a base for order finding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseDraw {
    Coprime(u64),
    /// The drawn base shared a factor with N; the gcd is a nontrivial factor.
    Factor { base: u64, factor: u64 },
}

/// Draws `a` uniformly from `[2, n − 2]`.
///
/// A draw with `gcd(a, n) > 1` short-circuits with that gcd as the factor.
pub fn sample_coprime_base<R: Rng + ?Sized>(n: u64, rng: &mut R) -> Result<BaseDraw> {
    if n < 4 {
        return Err(Error::config("n", format!("{n} is below 4")));
    }
    if is_prime(n) {
        return Err(Error::config("n", format!("{n} is prime")));
    }
    let a = rng.random_range(2..=n - 2);
    let g = gcd(a, n);
    Ok(if g == 1 {
        BaseDraw::Coprime(a)
    } else {
        BaseDraw::Factor { base: a, factor: g }
    })
}

/// Trial division up to √n.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `⌊n^(1/k)⌋`.
pub fn integer_root(n: u64, k: u32) -> u64 {
    assert!(k >= 1);
    if k == 1 || n < 2 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    let pow_le = |base: u64| -> bool {
        let mut acc: u128 = 1;
        for _ in 0..k {
            acc *= base as u128;
            if acc > n as u128 {
                return false;
            }
        }
        true
    };
    while r > 0 && !pow_le(r) {
        r -= 1;
    }
    while pow_le(r + 1) {
        r += 1;
    }
    r
}

/// `Some((p, k))` with `k ≥ 2` when `n = p^k` for a prime `p`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 4 {
        return None;
    }
    (2..=ceil_log2(n)).rev().find_map(|k| {
        let p = integer_root(n, k);
        (p.checked_pow(k) == Some(n) && is_prime(p)).then_some((p, k))
    })
}

/// `⌈log2 n⌉` for `n ≥ 1`.
pub fn ceil_log2(n: u64) -> u32 {
    assert!(n >= 1);
    if n == 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}
