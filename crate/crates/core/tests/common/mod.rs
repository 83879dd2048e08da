//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use windowed_shor::Bitstring;

/// Rounding `y << kappa` (an `n`-bit phase) to `m` bits: (truncated window, round-up bit).
pub fn window_parts(y: u128, n: u32, m: u32, kappa: u32) -> (u128, u128) {
    let v = (y << kappa) & ((1u128 << n) - 1);
    let shift = n - m;
    let round_bit = if shift == 0 { 0 } else { (v >> (shift - 1)) & 1 };
    (v >> shift, round_bit)
}

/// Per-block window of the exact phase `y / 2^n`, rounded half up to `m` bits.
pub fn rounded_windows(y: u128, n: u32, sizes: &[u32], kappas: &[u32]) -> Vec<Bitstring> {
    sizes
        .iter()
        .zip(kappas)
        .map(|(&m, &kappa)| {
            let (trunc, round_bit) = window_parts(y, n, m, kappa);
            Bitstring::new((trunc + round_bit) & ((1 << m) - 1), m)
        })
        .collect()
}

/// Every valid plan with at most `max_blocks` blocks of at most `max_m` qubits.
pub fn all_plans(max_blocks: usize, max_m: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    fn extend(
        sizes: &mut Vec<u32>,
        overlaps: &mut Vec<u32>,
        max_blocks: usize,
        max_m: u32,
        out: &mut Vec<(Vec<u32>, Vec<u32>)>,
    ) {
        if !sizes.is_empty() {
            out.push((sizes.clone(), overlaps.clone()));
        }
        if sizes.len() == max_blocks {
            return;
        }
        for m in 1..=max_m {
            let t_max = match sizes.last() {
                None => 0,
                Some(&prev) => (m - 1).min(prev),
            };
            for t in 0..=t_max {
                sizes.push(m);
                overlaps.push(t);
                extend(sizes, overlaps, max_blocks, max_m, out);
                sizes.pop();
                overlaps.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut Vec::new(), max_blocks, max_m, &mut out);
    out
}

/// Random windows that pass the consistency predicate pairwise, built right to left.
pub fn consistent_windows(sizes: &[u32], overlaps: &[u32], seed: u64) -> Vec<Bitstring> {
    let mut state = seed | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state as u128
    };
    let last = sizes.len() - 1;
    let mut out = vec![Bitstring::new(next() % (1 << sizes[last]), sizes[last])];
    for i in (0..last).rev() {
        let right = out[0];
        let (m, t) = (sizes[i], overlaps[i + 1]);
        let high = next() % (1 << (m - t));
        let tail = if t == 0 {
            0
        } else {
            (right.head(t).value() + u128::from(right.bit(t))) % (1 << t)
        };
        out.insert(0, Bitstring::new((high << t) | tail, m));
    }
    out
}

/// Denominators q ≤ qmax at which |q·y/d| mod 1 hits a new minimum.
pub fn brute_force_best_denominators(y: u128, d: u128, qmax: u64) -> Vec<u64> {
    let mut best = u128::MAX;
    let mut out = Vec::new();
    for q in 1..=qmax as u128 {
        let r = (q * y) % d;
        let dist = r.min(d - r);
        if dist < best {
            best = dist;
            out.push(q as u64);
        }
        if dist == 0 {
            break;
        }
    }
    out
}
