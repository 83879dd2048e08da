//! Carry-aware integration of per-block candidates into full-length phase
//! estimates.
//!
//! Adjacent blocks `ℓ` and `ℓ+1` share `t = t_{ℓ+1}` bit positions. A left
//! candidate is consistent with a right candidate when its last `t` bits,
//! less the right block's carry bit, equal the right block's first `t` bits
//! modulo `2^t`. Consistent sequences are built right to left and joined by
//! keeping, for each block but the last, only the bits not shared with its
//! right neighbor.

use std::collections::HashSet;

use crate::bits::Bitstring;
use crate::numtheory::Fraction;

/// Bit at left-origin position `t` of `s_right`: the most significant bit
/// below its overlap head.
pub fn carry_bit(s_right: &Bitstring, t: u32) -> u8 {
    assert!(
        t < s_right.len(),
        "overlap {t} leaves no carry bit in a {}-bit block",
        s_right.len()
    );
    s_right.bit(t)
}

/// `(int(tail(s_left, t)) − c) mod 2^t == int(head(s_right, t))`, trivially
/// true for `t = 0`.
pub fn consistent(s_left: &Bitstring, s_right: &Bitstring, t: u32) -> bool {
    if t == 0 {
        return true;
    }
    let modulus = 1u128 << t;
    let tail = s_left.tail(t).value();
    let c = carry_bit(s_right, t) as u128;
    (tail + modulus - c) % modulus == s_right.head(t).value()
}

/// A full-length phase estimate `φ̂ = ŷ / 2^n_total`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StitchedCandidate {
    pub bits: Bitstring,
}

impl StitchedCandidate {
    pub fn new(bits: Bitstring) -> Self {
        StitchedCandidate { bits }
    }

    pub fn y(&self) -> u128 {
        self.bits.value()
    }

    pub fn n_total(&self) -> u32 {
        self.bits.len()
    }

    pub fn phase(&self) -> Fraction {
        Fraction::new(self.y(), 1u128 << self.n_total())
    }
}

/// Builds consistent block sequences right to left, keeping at most
/// `max_combos` at each step, and stitches each into one bitstring.
///
/// `sets[i]` holds block `i+1`'s candidates in rank order. The result keeps
/// first-appearance order and contains each bitstring once; it is empty if
/// some step leaves no consistent sequence.
pub fn integrate_and_stitch(
    sets: &[Vec<Bitstring>],
    sizes: &[u32],
    overlaps: &[u32],
    max_combos: usize,
) -> Vec<StitchedCandidate> {
    let blocks = sets.len();
    assert!(blocks >= 1, "need at least one block");
    assert_eq!(sizes.len(), blocks);
    assert_eq!(overlaps.len(), blocks);
    assert!(max_combos >= 1);
    for (i, set) in sets.iter().enumerate() {
        assert!(
            set.iter().all(|s| s.len() == sizes[i]),
            "block {} candidates must be {} bits",
            i + 1,
            sizes[i]
        );
    }

    // each sequence is stored rightmost block first
    let mut sequences: Vec<Vec<Bitstring>> = sets[blocks - 1].iter().map(|&s| vec![s]).collect();

    for left in (0..blocks - 1).rev() {
        let t = overlaps[left + 1];
        let mut extended: Vec<Vec<Bitstring>> = Vec::new();
        'outer: for seq in &sequences {
            let s_right = seq.last().expect("sequences are never empty");
            for s_left in &sets[left] {
                if consistent(s_left, s_right, t) {
                    let mut next = seq.clone();
                    next.push(*s_left);
                    extended.push(next);
                    if extended.len() >= max_combos {
                        break 'outer;
                    }
                }
            }
        }
        sequences = extended;
        if sequences.is_empty() {
            return Vec::new();
        }
    }

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for seq in &sequences {
        let bits = stitch_sequence(seq.iter().rev(), sizes, overlaps);
        if seen.insert(bits) {
            out.push(StitchedCandidate::new(bits));
        }
    }
    out
}

/// `head(s_1, m_1 − t_2) ∥ … ∥ head(s_{B−1}, m_{B−1} − t_B) ∥ s_B`.
fn stitch_sequence<'a>(
    left_to_right: impl Iterator<Item = &'a Bitstring>,
    sizes: &[u32],
    overlaps: &[u32],
) -> Bitstring {
    let last = sizes.len() - 1;
    left_to_right
        .enumerate()
        .fold(Bitstring::empty(), |acc, (i, s)| {
            let keep = if i == last { s.len() } else { sizes[i] - overlaps[i + 1] };
            acc.concat(&s.head(keep))
        })
}
