use std::collections::BTreeSet;

use hypermod_core::generator::{
    ceva, dual_hesse, enumerate_dagger_3graphs, enumerate_fibonacci, hesse, keel_vermeire,
};
use hypermod_core::hypergraph::Hypergraph;
use proptest::prelude::*;

/// Direct subset scan with set unions, independent of the bitmask tables.
fn cond_s_oracle(h: &Hypergraph) -> bool {
    let d = h.num_edges();
    (1u32..(1 << d)).all(|mask| {
        let s: Vec<&Vec<usize>> = (0..d).filter(|j| mask >> j & 1 == 1).map(|j| &h.edges()[j]).collect();
        let union: BTreeSet<usize> = s.iter().flat_map(|e| e.iter().copied()).collect();
        let rhs: i64 = s.iter().map(|e| e.len() as i64 - 2).sum();
        union.len() as i64 - 2 >= rhs
    })
}

fn named() -> Vec<(&'static str, Hypergraph)> {
    vec![
        ("keel-vermeire", keel_vermeire()),
        ("hesse", hesse()),
        ("dual-hesse", dual_hesse()),
        ("ceva3", ceva(3).unwrap()),
        ("ceva4", ceva(4).unwrap()),
    ]
}

fn arb_hypergraph() -> impl Strategy<Value = Hypergraph> {
    (5usize..=9).prop_flat_map(|n| {
        let edge = proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), 3..=5.min(n));
        proptest::collection::vec(edge, 1..=7).prop_map(move |es| Hypergraph::new(n, es))
    })
}

#[test]
fn keel_vermeire_passes_and_duplicate_fails() {
    let kv = keel_vermeire();
    assert!(kv.check_cond_s().unwrap().holds);
    assert!(kv.dimension_match());
    assert!(kv.check_birational().unwrap());

    let dup = Hypergraph::new(3, vec![vec![1, 2, 3], vec![1, 2, 3]]);
    let r = dup.check_cond_s().unwrap();
    assert!(!r.holds);
    assert_eq!(r.witness, Some(vec![1, 2]));
    assert_eq!(dup.duplicate_edges(), vec![2]);
}

#[test]
fn named_genera_and_betti() {
    assert_eq!(keel_vermeire().genus(), 3);
    assert_eq!(dual_hesse().genus(), 16);
    for (name, h) in named() {
        assert_eq!(h.genus(), h.dual_graph().betti(), "{name}");
        assert!(h.dual_graph().graph().is_connected(), "{name}");
    }
}

#[test]
fn named_cond_s_matches_oracle() {
    for (name, h) in named() {
        assert_eq!(h.check_cond_s().unwrap().holds, cond_s_oracle(&h), "{name}");
    }
    assert!(!cond_s_oracle(&dual_hesse()));
    let w = dual_hesse().check_cond_s().unwrap().witness.unwrap();
    let dh = dual_hesse();
    let union: BTreeSet<usize> = w.iter().flat_map(|&j| dh.edges()[j - 1].clone()).collect();
    let rhs: i64 = w.iter().map(|&j| dh.edges()[j - 1].len() as i64 - 2).sum();
    assert!((union.len() as i64) - 2 < rhs);
}

#[test]
fn fibonacci_curves_satisfy_dagger_with_six_valence_two_points() {
    for n in 6..=9 {
        for c in enumerate_fibonacci(n).unwrap() {
            let h = c.canonical_hypergraph();
            let r = h.check_cond_m().unwrap();
            assert!(r.holds);
            assert_eq!(r.valence_two.len(), 6);
            assert!(h.check_birational().unwrap());
        }
    }
}

#[test]
fn dagger_classes_have_six_valence_two_points() {
    let (classes, _) = enumerate_dagger_3graphs(8, None).unwrap();
    for c in classes {
        let h = c.canonical_hypergraph();
        let r = h.check_cond_m().unwrap();
        assert!(r.holds);
        assert_eq!(r.valence_two.len(), 6);
        assert!(cond_s_oracle(&h));
    }
}

#[test]
fn cone_adds_the_apex_everywhere() {
    let c = keel_vermeire().cone();
    assert_eq!(c.n, 7);
    assert!(c.edges().iter().all(|e| e.len() == 4 && e.contains(&7)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn component_form_agrees(h in arb_hypergraph()) {
        prop_assert_eq!(h.check_cond_c().unwrap().holds, h.check_cond_s().unwrap().holds);
        prop_assert_eq!(h.check_cond_s().unwrap().holds, cond_s_oracle(&h));
    }

    #[test]
    fn genus_is_betti_when_valid(h in arb_hypergraph()) {
        if let Ok(h) = h.validated() {
            prop_assert_eq!(h.genus(), h.dual_graph().betti());
        }
    }

    #[test]
    fn canonical_form_is_label_invariant(h in arb_hypergraph(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (1..=h.n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        perm.insert(0, 0);
        prop_assert_eq!(h.relabel(&perm).canonical_form().edges, h.canonical_form().edges);
    }
}

fn arb_three_graph() -> impl Strategy<Value = Hypergraph> {
    (6usize..=9).prop_flat_map(|n| {
        let edge = proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), 3);
        proptest::collection::vec(edge, n - 2).prop_map(move |es| Hypergraph::new(n, es))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dagger_implies_cond_s(h in arb_three_graph()) {
        if h.check_cond_m().unwrap().holds {
            prop_assert!(h.check_cond_s().unwrap().holds);
        }
    }
}
