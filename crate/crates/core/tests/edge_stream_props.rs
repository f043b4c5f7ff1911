mod common;

use bridgelen::edges::is_canonical;
use bridgelen::{cell_metrics, CandidateEdge, EdgeGenerator, PeriodicSet};
use common::arb_set;
use proptest::prelude::*;

const TAKE: usize = 100;

/// Every canonical edge class with translations in `[-t, t]ⁿ`, sorted.
fn brute_force(set: &PeriodicSet, t: i64) -> Vec<CandidateEdge> {
    let n = set.dim();
    let m = set.motif_len();
    let side = 2 * t + 1;
    let mut out = Vec::new();
    for code in 0..side.pow(n as u32) {
        let mut c = code;
        let translation: Vec<i64> = (0..n)
            .map(|_| {
                let d = c % side - t;
                c /= side;
                d
            })
            .collect();
        for source in 0..m {
            for dest in source..m {
                if !is_canonical(source, dest, &translation) {
                    continue;
                }
                let mut e = CandidateEdge {
                    source,
                    dest,
                    translation: translation.clone(),
                    length: 0.0,
                };
                e.length = e.recompute_length(set);
                out.push(e);
            }
        }
    }
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn lengths_never_decrease(set in arb_set(1..=3, 4)) {
        let edges: Vec<CandidateEdge> = EdgeGenerator::unbounded(set)
            .take(TAKE)
            .map(Result::unwrap)
            .collect();
        for w in edges.windows(2) {
            prop_assert!(w[0] <= w[1], "{:?} then {:?}", w[0], w[1]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn stream_matches_brute_force(set in arb_set(1..=3, 3)) {
        let mut gen = EdgeGenerator::unbounded(set.clone());
        let edges: Vec<CandidateEdge> = (&mut gen).take(TAKE).map(Result::unwrap).collect();
        let longest = edges.last().unwrap().length;
        let h = cell_metrics(set.basis()).h;
        let t = (longest / h).ceil() as i64 + 2;
        let table = brute_force(&set, t);
        prop_assert!(((t - 1) as f64) * h > longest);
        // Both sides compute lengths with different rounding, so compare
        // classes rather than bit patterns.
        let key = |e: &CandidateEdge| (e.source, e.dest, e.translation.clone());
        let got: std::collections::HashMap<_, f64> =
            edges.iter().map(|e| (key(e), e.length)).collect();
        for e in table.iter().filter(|e| e.length < longest * (1.0 - 1e-9)) {
            prop_assert!(got.contains_key(&key(e)), "missing {:?}", e);
        }
        let known: std::collections::HashMap<_, f64> =
            table.iter().map(|e| (key(e), e.length)).collect();
        for e in &edges {
            let len = known.get(&key(e));
            prop_assert!(len.is_some_and(|l| (l - e.length).abs() <= 1e-12 * l.max(1.0)));
        }
    }

    #[test]
    fn each_class_once_and_canonical(set in arb_set(1..=3, 4)) {
        let edges: Vec<CandidateEdge> = EdgeGenerator::unbounded(set.clone())
            .take(TAKE)
            .map(Result::unwrap)
            .collect();
        let mut keys: Vec<_> = edges
            .iter()
            .map(|e| (e.source, e.dest, e.translation.clone()))
            .collect();
        for (s, d, t) in &keys {
            prop_assert!(is_canonical(*s, *d, t));
        }
        keys.sort();
        keys.dedup();
        prop_assert_eq!(keys.len(), edges.len());
        for e in &edges {
            let again = e.recompute_length(&set);
            prop_assert!((again - e.length).abs() <= 1e-12 * e.length.max(1.0));
        }
    }

    #[test]
    fn fast_bound_dominates_guard(set in arb_set(1..=3, 4)) {
        let mut gen = EdgeGenerator::unbounded(set);
        for _ in 0..5 {
            gen.enumerate_next_shell().unwrap();
            prop_assert!(gen.release_bound_fast() >= gen.release_bound_guard() * (1.0 - 1e-12));
        }
    }

    #[test]
    fn capped_stream_reaches_r_upper(set in arb_set(1..=3, 4)) {
        let r = cell_metrics(set.basis()).r_u;
        let mut gen = EdgeGenerator::new(set);
        loop {
            let e = gen.next_edge().unwrap();
            if e.length > r {
                break;
            }
        }
    }
}
