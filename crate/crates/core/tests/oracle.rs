//! Suffix-array solver against exhaustive search, plus curve properties.

use std::collections::BTreeSet;

use digital_dna::analysis::{derivative, detect_peaks, smooth, smooth_lengths, DerivativeSeries};
use digital_dna::{brute_force_curve, group_curve, lcs_pair, AccountGroup, AlphabetId, DnaSequence, Label};
use proptest::prelude::*;

/// Bases drawn from; the first `n` are used for an alphabet of size `n`.
const BASES: [char; 6] = ['N', 'U', 'H', 'M', 'D', 'X'];

fn group_of(texts: &[String]) -> AccountGroup {
    let seqs = texts
        .iter()
        .enumerate()
        .map(|(i, t)| DnaSequence::new(format!("acc{i}"), AlphabetId::Content6, t.clone(), Label::Unlabeled).unwrap())
        .collect();
    AccountGroup::new(seqs).unwrap()
}

fn texts_strategy(max_m: usize, max_len: usize, max_sigma: usize) -> impl Strategy<Value = Vec<String>> {
    (1..=max_sigma).prop_flat_map(move |sigma| {
        prop::collection::vec(
            prop::collection::vec(0..sigma, 1..=max_len).prop_map(|v| v.into_iter().map(|i| BASES[i]).collect()),
            2..=max_m,
        )
    })
}

/// Longest string present in at least `k` texts, lexicographically smallest
/// among ties, found by checking every substring of every text.
fn naive_lcs_k(texts: &[String], k: usize) -> (usize, String) {
    let mut best = (0usize, String::new());
    for t in texts {
        for i in 0..t.len() {
            for j in i + 1..=t.len() {
                let s = &t[i..j];
                if s.len() < best.0 || (s.len() == best.0 && s >= best.1.as_str()) {
                    continue;
                }
                if texts.iter().filter(|u| u.contains(s)).count() >= k {
                    best = (s.len(), s.to_string());
                }
            }
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matches_exhaustive_search(texts in texts_strategy(6, 12, 4)) {
        let g = group_of(&texts);
        let fast = group_curve(&g).unwrap();
        let slow = brute_force_curve(&g).unwrap();
        prop_assert_eq!(fast.lengths(), slow.lengths());
        for p in fast.points() {
            let (len, witness) = naive_lcs_k(&texts, p.k);
            prop_assert_eq!(p.length, len);
            prop_assert_eq!(&*p.witness, witness.as_str());
            prop_assert_eq!(&*slow.point(p.k).witness, witness.as_str());
            let holders: Vec<usize> = (0..texts.len()).filter(|&d| !witness.is_empty() && texts[d].contains(&witness)).collect();
            if p.length > 0 {
                prop_assert_eq!(p.members.to_vec(), holders);
            } else {
                prop_assert!(p.members.is_empty());
            }
        }
    }

    #[test]
    fn pairwise_lcs_is_k2(a in "[ACT]{1,15}", b in "[ACT]{1,15}") {
        let (len, witness) = naive_lcs_k(&[a.clone(), b.clone()], 2);
        let got = lcs_pair(&a, &b);
        prop_assert_eq!(got.len(), len);
        prop_assert_eq!(got, witness);
    }

    #[test]
    fn curve_is_monotone_and_bounded(texts in texts_strategy(20, 40, 3)) {
        let g = group_of(&texts);
        let c = group_curve(&g).unwrap();
        let l = c.lengths();
        let shortest = texts.iter().map(String::len).min().unwrap();
        prop_assert!(l.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(l[0] <= texts.iter().map(String::len).max().unwrap());
        prop_assert!(*l.last().unwrap() <= shortest);
        for p in c.points() {
            prop_assert!(p.members.len() >= p.k || p.length == 0);
            prop_assert_eq!(p.witness.chars().count(), p.length);
        }
    }

    #[test]
    fn identical_sequences_give_flat_curve(s in "[ACT]{1,30}", m in 2usize..10) {
        let texts = vec![s.clone(); m];
        let g = group_of(&texts.iter().map(|t| t.replace('A', "N").replace('C', "U").replace('T', "H")).collect::<Vec<_>>());
        let c = group_curve(&g).unwrap();
        prop_assert!(c.lengths().iter().all(|&l| l == s.len()));
    }

    #[test]
    fn permuting_the_group_keeps_the_curve(texts in texts_strategy(8, 15, 3), rot in 0usize..8) {
        let mut rotated = texts.clone();
        let r = rot % texts.len();
        rotated.rotate_left(r);
        let a = group_curve(&group_of(&texts)).unwrap();
        let b = group_curve(&group_of(&rotated)).unwrap();
        prop_assert_eq!(a.lengths(), b.lengths());
        for k in 2..=texts.len() {
            prop_assert_eq!(&*a.point(k).witness, &*b.point(k).witness);
        }
    }

    #[test]
    fn smoothing_keeps_order_and_sign(lengths in prop::collection::vec(0usize..100, 2..80), window in (0usize..6).prop_map(|h| 2 * h + 1)) {
        let mut l = lengths;
        l.sort_unstable_by(|a, b| b.cmp(a));
        let s = smooth_lengths(&l, window).unwrap();
        prop_assert_eq!(s.len(), l.len());
        prop_assert!(s.windows(2).all(|w| w[0] >= w[1]));
        let flat = vec![l[0]; l.len()];
        prop_assert_eq!(smooth_lengths(&flat, window).unwrap(), flat);
    }

    #[test]
    fn peaks_sorted_by_magnitude(values in prop::collection::vec(-20i64..=0, 1..60), prominence in 0.0f64..5.0) {
        let series = DerivativeSeries::from_values(3, values.clone());
        let peaks = detect_peaks(&series, prominence);
        prop_assert!(peaks.windows(2).all(|w| w[0].magnitude >= w[1].magnitude));
        let ranks: Vec<usize> = peaks.iter().map(|p| p.rank).collect();
        prop_assert_eq!(ranks, (1..=peaks.len()).collect::<Vec<_>>());
        let ks: BTreeSet<usize> = peaks.iter().map(|p| p.k).collect();
        prop_assert_eq!(ks.len(), peaks.len());
        for p in &peaks {
            let v = values[p.k - 3];
            prop_assert!(v < 0 && (v.unsigned_abs() as f64) >= prominence);
        }
    }
}

#[test]
fn derivative_after_smoothing_never_positive() {
    let texts: Vec<String> =
        ["NUHNUHNU", "UHNUHN", "NNNUUU", "HUNHUN", "NUHH", "XNUH"].iter().map(|s| s.to_string()).collect();
    let c = group_curve(&group_of(&texts)).unwrap();
    for w in [1, 3, 5, 7] {
        let d = derivative(&smooth(&c, w).unwrap()).unwrap();
        assert!(d.values().iter().all(|&v| v <= 0));
    }
}
