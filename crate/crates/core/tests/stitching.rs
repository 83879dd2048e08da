use proptest::prelude::*;
use windowed_shor::stitcher::{consistent, integrate_and_stitch};
use windowed_shor::windows::plan_blocks;
use windowed_shor::Bitstring;

mod common;
use common::{all_plans, consistent_windows, rounded_windows, window_parts};

/// Valid (sizes, overlaps) with up to `max_blocks` blocks of at most `max_m` qubits.
fn valid_plan(max_blocks: usize, max_m: u32) -> impl Strategy<Value = (Vec<u32>, Vec<u32>)> {
    prop::collection::vec((1..=max_m, 0..max_m), 1..=max_blocks).prop_map(|raw| {
        let sizes: Vec<u32> = raw.iter().map(|&(m, _)| m).collect();
        let overlaps = raw
            .iter()
            .enumerate()
            .map(|(i, &(m, t))| if i == 0 { 0 } else { t % m.min(sizes[i - 1] + 1) })
            .collect();
        (sizes, overlaps)
    })
}

#[test]
fn rounded_windows_fail_consistency_only_on_double_rounding_ties() {
    let (mut plans, mut pairs, mut rejected) = (0, 0u64, 0u64);
    for (sizes, overlaps) in all_plans(4, 5) {
        let plan = plan_blocks(&sizes, &overlaps).unwrap();
        let n = plan.n_total();
        if n > 12 {
            continue;
        }
        let kappas: Vec<u32> = plan.blocks().iter().map(|b| b.kappa).collect();
        let (p, r) = check_plan(&sizes, &overlaps, &kappas, n);
        pairs += p;
        rejected += r;
        plans += 1;
    }
    assert!(plans > 1000, "enumerated only {plans} plans");
    // Ties are common enough that the rejection path is well exercised.
    assert!(rejected > 0 && rejected < pairs / 10, "{rejected} of {pairs}");
}

fn check_plan(sizes: &[u32], overlaps: &[u32], kappas: &[u32], n: u32) -> (u64, u64) {
    let blocks = sizes.len();
    let (mut pairs, mut rejected) = (0u64, 0u64);
    for y in 0..(1u128 << n) {
        let windows = rounded_windows(y, n, sizes, kappas);

        // The predicate accepts exactly the pairs where re-rounding the right
        // window at its carry bit reproduces the left window. That fails only
        // when the right window's own round-up leaves its bits below the
        // overlap at 10..0, a fresh tie the left window never saw.
        let mut all_consistent = true;
        for i in 0..blocks - 1 {
            let t = overlaps[i + 1];
            let m = sizes[i + 1];
            let (trunc, round_bit) = window_parts(y, n, m, kappas[i + 1]);
            let low = m - t;
            let hazard =
                t > 0 && round_bit == 1 && (trunc + 1) & ((1 << low) - 1) == 1 << (low - 1);
            let ok = consistent(&windows[i], &windows[i + 1], t);
            assert_eq!(ok, !hazard, "sizes={sizes:?} overlaps={overlaps:?} y={y} pair {i}");
            all_consistent &= ok;
            pairs += 1;
            rejected += u64::from(!ok);
        }
        let sets: Vec<Vec<Bitstring>> = windows.iter().map(|&w| vec![w]).collect();
        let out = integrate_and_stitch(&sets, sizes, overlaps, 1);
        if !all_consistent {
            assert!(out.is_empty());
            continue;
        }
        assert_eq!(out.len(), 1);
        let got = out[0].bits;
        assert_eq!(got.len(), n);

        // Each kept head equals the exact bits at its positions plus the
        // round-up carry that rippled out of its overlap region.
        let exact = Bitstring::new(y, n);
        let mut pos = 0u32;
        for i in 0..blocks {
            let keep = if i + 1 == blocks { sizes[i] } else { sizes[i] - overlaps[i + 1] };
            let exact_head = exact.head(pos + keep).tail(keep).value();
            let got_head = got.head(pos + keep).tail(keep).value();
            let expected = if i + 1 == blocks {
                exact_head
            } else {
                let t = overlaps[i + 1];
                let (trunc, round_bit) = window_parts(y, n, sizes[i], kappas[i]);
                let carry = ((trunc & ((1u128 << t) - 1)) + round_bit) >> t;
                (exact_head + carry) & ((1u128 << keep) - 1)
            };
            assert_eq!(got_head, expected, "sizes={sizes:?} overlaps={overlaps:?} y={y} block {}", i + 1);
            pos += keep;
        }
    }
    (pairs, rejected)
}

proptest! {
    #[test]
    fn stitched_length_is_sum_of_non_overlapping_parts(
        (sizes, overlaps) in valid_plan(6, 6),
        seed in any::<u64>(),
    ) {
        let sets: Vec<Vec<Bitstring>> = consistent_windows(&sizes, &overlaps, seed)
            .into_iter()
            .map(|w| vec![w])
            .collect();
        let out = integrate_and_stitch(&sets, &sizes, &overlaps, 4);
        prop_assert_eq!(out.len(), 1);
        let expected: u32 = sizes.iter().zip(&overlaps).map(|(m, t)| m - t).sum();
        for c in &out {
            prop_assert_eq!(c.n_total(), expected);
        }
    }

    #[test]
    fn raising_the_cap_never_drops_candidates(
        (sizes, overlaps) in valid_plan(4, 4),
        raw_sets in prop::collection::vec(prop::collection::vec(any::<u16>(), 1..6), 4),
        cap in 1usize..12,
    ) {
        let sets: Vec<Vec<Bitstring>> = sizes
            .iter()
            .zip(&raw_sets)
            .map(|(&m, raw)| raw.iter().map(|&v| Bitstring::new(v as u128 % (1 << m), m)).collect())
            .collect();
        let small = integrate_and_stitch(&sets, &sizes, &overlaps, cap);
        let large = integrate_and_stitch(&sets, &sizes, &overlaps, cap + 5);
        for c in &small {
            prop_assert!(large.contains(c));
        }
        prop_assert_eq!(&small, &integrate_and_stitch(&sets, &sizes, &overlaps, cap));
    }

    #[test]
    fn zero_overlap_is_truncated_cartesian_product(
        raw_sets in prop::collection::vec(prop::collection::btree_set(0u128..8, 1..5), 1..4),
        cap in 1usize..40,
    ) {
        let blocks = raw_sets.len();
        let sets: Vec<Vec<Bitstring>> = raw_sets
            .iter()
            .map(|s| s.iter().map(|&v| Bitstring::new(v, 3)).collect())
            .collect();
        let sizes = vec![3; blocks];
        let overlaps = vec![0; blocks];
        let got = integrate_and_stitch(&sets, &sizes, &overlaps, cap);

        // Right-to-left expansion: at each step the existing (right) part
        // varies slowest, the new left block fastest.
        let mut expect: Vec<Vec<Bitstring>> = sets[blocks - 1].iter().map(|&s| vec![s]).collect();
        for left in (0..blocks - 1).rev() {
            let mut next = Vec::new();
            'outer: for right in &expect {
                for &s in &sets[left] {
                    let mut seq = vec![s];
                    seq.extend(right.iter().copied());
                    next.push(seq);
                    if next.len() >= cap {
                        break 'outer;
                    }
                }
            }
            expect = next;
        }
        let expect: Vec<Bitstring> = expect
            .iter()
            .map(|seq| seq.iter().fold(Bitstring::empty(), |acc, s| acc.concat(s)))
            .collect();
        prop_assert_eq!(got.iter().map(|c| c.bits).collect::<Vec<_>>(), expect);
    }
}
