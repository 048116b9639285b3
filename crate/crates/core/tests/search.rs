use std::collections::BTreeSet;
use std::fs;

use chm_core::search::{canonicalize, cross_validate, enumerate, SearchConfig, SearchError, Strategy};
use chm_core::seqcore::Sequence;
use proptest::prelude::*;

fn naive_solutions(n: usize) -> Vec<String> {
    let mut out: Vec<String> = (0..1u64 << n)
        .map(|m| Sequence::from_bits(n, m).unwrap())
        .filter(|s| s.circulant().is_hadamard())
        .map(|s| s.to_string())
        .collect();
    out.sort();
    out
}

fn configs(n: usize) -> Vec<SearchConfig> {
    let mut v = vec![
        SearchConfig::new(n, Strategy::Exhaustive),
        SearchConfig::new(n, Strategy::PrunedDfs),
    ];
    if chm_core::numtheory::exact_sqrt(n as u64).is_some() {
        v.push(SearchConfig::new(n, Strategy::WeightConstrained));
        v.push(SearchConfig::new(n, Strategy::PrunedDfs).weight_filter(true));
    }
    v
}

#[test]
fn strategies_match_naive_enumeration() {
    for n in 1..=16 {
        let want = naive_solutions(n);
        for cfg in configs(n) {
            let r = enumerate(&cfg).unwrap();
            assert_eq!(r.solutions, want, "n = {n}, {} filter={}", cfg.strategy, cfg.weight_filter);
            assert_eq!(r.raw_count, want.len() as u64);
        }
    }
}

#[test]
fn strategies_agree_up_to_20() {
    for n in 17..=20 {
        let reports: Vec<_> = configs(n).iter().map(|c| enumerate(c).unwrap()).collect();
        assert!(reports.windows(2).all(|w| w[0].solutions == w[1].solutions && w[0].raw_count == w[1].raw_count));
    }
}

#[test]
fn results_do_not_depend_on_jobs() {
    for n in [4usize, 9, 12, 16] {
        for base in configs(n) {
            let runs: Vec<_> = [1, 2, 8].iter().map(|&j| enumerate(&base.clone().jobs(j)).unwrap()).collect();
            for r in &runs[1..] {
                assert_eq!(r.raw_count, runs[0].raw_count);
                assert_eq!(r.solutions, runs[0].solutions);
                assert_eq!(r.canonical_count, runs[0].canonical_count);
                if base.strategy != Strategy::PrunedDfs {
                    assert_eq!(r.nodes_explored, runs[0].nodes_explored);
                }
            }
        }
    }
}

#[test]
fn order_four_canonical_class() {
    let r = enumerate(&SearchConfig::new(4, Strategy::Exhaustive)).unwrap();
    assert_eq!(r.raw_count, 8);
    assert_eq!(r.canonical_count, Some(1));
    let classes: BTreeSet<String> = r.solutions.iter().map(|s| canonicalize(&s.parse().unwrap()).to_string()).collect();
    assert_eq!(classes.into_iter().collect::<Vec<_>>(), ["-+++"]);
}

#[test]
fn checkpoint_resume_reproduces_results() {
    let dir = tempfile::tempdir().unwrap();
    for (n, strategy, filter) in [(4usize, Strategy::PrunedDfs, false), (16, Strategy::PrunedDfs, true), (12, Strategy::Exhaustive, false)] {
        let path = dir.path().join(format!("ck-{n}-{strategy}.txt"));
        let cfg = SearchConfig::new(n, strategy).weight_filter(filter).shard_bits(3.min(n)).checkpoint(&path);
        let fresh = enumerate(&cfg).unwrap();

        // Fully checkpointed: nothing left to explore.
        let again = enumerate(&cfg).unwrap();
        assert_eq!(again.solutions, fresh.solutions);
        assert_eq!(again.raw_count, fresh.raw_count);
        assert_eq!(again.nodes_explored, 0);

        // Simulate an interrupted run by cutting the file mid-way, including a dangling line.
        let text = fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        let keep = 5 + (lines.len() - 5) / 2;
        fs::write(&path, format!("{}\nsolution={}\n", lines[..keep].join("\n"), "+".repeat(n))).unwrap();
        let resumed = enumerate(&cfg).unwrap();
        assert_eq!(resumed.solutions, fresh.solutions, "n = {n}");
        assert_eq!(resumed.raw_count, fresh.raw_count);
        assert_eq!(resumed.canonical_count, fresh.canonical_count);
        assert!(resumed.nodes_explored < fresh.nodes_explored);
    }
}

#[test]
fn checkpoint_header_mismatch_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck.txt");
    enumerate(&SearchConfig::new(8, Strategy::PrunedDfs).shard_bits(2).checkpoint(&path)).unwrap();
    let other = SearchConfig::new(9, Strategy::PrunedDfs).shard_bits(2).checkpoint(&path);
    assert!(matches!(enumerate(&other), Err(SearchError::Checkpoint(_))));
}

#[test]
fn caps_are_explicit() {
    let r = enumerate(&SearchConfig::new(4, Strategy::PrunedDfs).cap(2)).unwrap();
    assert_eq!((r.raw_count, r.solutions.len(), r.cap), (8, 2, 2));
    assert!(r.truncated());
    assert!(matches!(
        enumerate(&SearchConfig::new(22, Strategy::Exhaustive).max_exhaustive_n(20)),
        Err(SearchError::CapExceeded { .. })
    ));
    assert!(matches!(cross_validate(22, 1, 20), Err(SearchError::CapExceeded { .. })));
}

#[test]
fn report_json_schema() {
    let r = enumerate(&SearchConfig::new(4, Strategy::Exhaustive)).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    for key in ["schema_version", "n", "strategy", "raw_count", "canonical_count", "solutions", "nodes_explored", "elapsed_ms", "cap"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["strategy"], "exhaustive");
    let back: chm_core::SearchReport = serde_json::from_value(v).unwrap();
    assert_eq!(back.solutions, r.solutions);
}

#[test]
fn cross_validation_passes_small_orders() {
    for n in 1..=16 {
        let v = cross_validate(n, 2, 24).unwrap();
        assert!(v.pass, "n = {n}: {v:?}");
    }
}

proptest! {
    #[test]
    fn canonical_form_is_a_class_invariant(bits in proptest::collection::vec(any::<bool>(), 1..=20), shift in 0usize..20) {
        let s = Sequence::new(bits.iter().map(|&b| if b { -1 } else { 1 })).unwrap();
        let c = canonicalize(&s);
        prop_assert_eq!(&canonicalize(&s.rotated(shift % s.len())), &c);
        prop_assert_eq!(&canonicalize(&s.negated()), &c);
        prop_assert_eq!(&canonicalize(&c), &c);
        let is_member = (0..s.len()).any(|r| s.rotated(r) == c || s.negated().rotated(r) == c);
        prop_assert!(is_member);
    }
}
