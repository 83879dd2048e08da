//! Dense statevector simulation of one block, gate by gate.
//!
//! Basis index layout: `index = (w << m) | x`, with the counting register `x`
//! in the low `m` bits (qubit `j` is bit `j`) and the work register `w` above it.

use num_complex::Complex;

use super::{BlockCircuitParams, BlockDistribution};
use crate::error::{Error, Result};
use crate::numtheory::mul_mod;
use crate::scalar::Real;

/// Upper bound on counting plus work qubits for this backend.
pub const STATEVECTOR_QUBIT_LIMIT: u32 = 24;

pub fn block_distribution_statevector<T: Real>(
    params: &BlockCircuitParams,
) -> Result<BlockDistribution<T>> {
    let m = params.counting_qubits();
    let n_target = params.work_qubits();
    if m + n_target > STATEVECTOR_QUBIT_LIMIT {
        return Err(Error::config(
            "block size",
            format!(
                "{m} counting + {n_target} work qubits exceed the statevector limit of {STATEVECTOR_QUBIT_LIMIT}"
            ),
        ));
    }
    let n = params.modulus();
    let counting_dim = 1usize << m;
    let mut state = vec![Complex::<T>::new(T::zero(), T::zero()); counting_dim << n_target];

    // |0…0⟩ ⊗ |1⟩
    state[1 << m] = Complex::new(T::one(), T::zero());
    for q in 0..m {
        apply_h(&mut state, q);
    }

    let mut scratch = vec![Complex::new(T::zero(), T::zero()); state.len()];
    for j in 0..m {
        let g = params.controlled_multiplier(j);
        apply_controlled_mul(&state, &mut scratch, m, j, g, n);
        std::mem::swap(&mut state, &mut scratch);
    }

    inverse_qft(&mut state, m);

    let mut probabilities = vec![T::zero(); counting_dim];
    for (idx, amp) in state.iter().enumerate() {
        probabilities[idx & (counting_dim - 1)] = probabilities[idx & (counting_dim - 1)] + amp.norm_sqr();
    }
    Ok(BlockDistribution::new(m, probabilities))
}

/// `|x⟩|w⟩ ↦ |x⟩|g·w mod n⟩` when bit `control` of `x` is set and `w < n`.
fn apply_controlled_mul<T: Real>(
    input: &[Complex<T>],
    output: &mut [Complex<T>],
    m: u32,
    control: u32,
    g: u64,
    n: u64,
) {
    let counting_mask = (1usize << m) - 1;
    for (idx, &amp) in input.iter().enumerate() {
        let x = idx & counting_mask;
        let w = (idx >> m) as u64;
        let target = if (x >> control) & 1 == 1 && w < n {
            ((mul_mod(w, g, n) as usize) << m) | x
        } else {
            idx
        };
        output[target] = amp;
    }
}

/// Inverse QFT on the low `m` qubits of `state`:
/// `|x⟩ ↦ 2^(−m/2) Σ_k e^(−2πi·xk/2^m) |k⟩`, built from swaps, controlled
/// phases and Hadamards.
pub fn inverse_qft<T: Real>(state: &mut [Complex<T>], m: u32) {
    for q in 0..m / 2 {
        apply_swap(state, q, m - 1 - q);
    }
    for j in 0..m {
        for k in 0..j {
            let angle = -T::PI() / T::from_int(1u64 << (j - k));
            apply_cphase(state, k, j, angle);
        }
        apply_h(state, j);
    }
}

fn apply_h<T: Real>(state: &mut [Complex<T>], q: u32) {
    let bit = 1usize << q;
    let s = T::FRAC_1_SQRT_2();
    for i in 0..state.len() {
        if i & bit == 0 {
            let (lo, hi) = (state[i], state[i | bit]);
            state[i] = (lo + hi).scale(s);
            state[i | bit] = (lo - hi).scale(s);
        }
    }
}

fn apply_cphase<T: Real>(state: &mut [Complex<T>], q1: u32, q2: u32, angle: T) {
    let mask = (1usize << q1) | (1usize << q2);
    let phase = Complex::from_polar(T::one(), angle);
    for (i, amp) in state.iter_mut().enumerate() {
        if i & mask == mask {
            *amp = *amp * phase;
        }
    }
}

fn apply_swap<T: Real>(state: &mut [Complex<T>], q1: u32, q2: u32) {
    let (b1, b2) = (1usize << q1, 1usize << q2);
    for i in 0..state.len() {
        if i & b1 != 0 && i & b2 == 0 {
            state.swap(i, (i & !b1) | b2);
        }
    }
}
