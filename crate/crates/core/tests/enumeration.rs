use std::collections::BTreeMap;

use hypermod_core::generator::{
    enumerate_dagger_3graphs, enumerate_fibonacci, fibonacci_family, find_isomorphism,
};
use hypermod_core::hypergraph::Hypergraph;
use hypermod_core::realization::w_filter;

/// Backtracking search for a vertex bijection carrying the edge set of `a`
/// onto that of `b`. Independent of canonical forms.
fn isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    if a.n != b.n || a.num_edges() != b.num_edges() {
        return false;
    }
    let (va, vb) = (a.valences(), b.valences());
    let mut sa = va.clone();
    let mut sb = vb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let mut target: Vec<Vec<usize>> = b.edges().to_vec();
    target.sort();
    let mut search = Search {
        a,
        b,
        va: &va,
        vb: &vb,
        target: &target,
        phi: vec![0; a.n + 1],
        used: vec![false; b.n + 1],
    };
    search.go(1)
}

struct Search<'a> {
    a: &'a Hypergraph,
    b: &'a Hypergraph,
    va: &'a [usize],
    vb: &'a [usize],
    target: &'a [Vec<usize>],
    phi: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn go(&mut self, v: usize) -> bool {
        let (a, b) = (self.a, self.b);
        if v > a.n {
            let mut img: Vec<Vec<usize>> = a
                .edges()
                .iter()
                .map(|e| {
                    let mut f: Vec<usize> = e.iter().map(|&x| self.phi[x]).collect();
                    f.sort_unstable();
                    f
                })
                .collect();
            img.sort();
            return img == self.target;
        }
        for w in 1..=b.n {
            if self.used[w] || self.va[v] != self.vb[w] {
                continue;
            }
            // every edge of a inside 1..=v must map into some edge of b
            self.phi[v] = w;
            let ok = a.edges().iter().filter(|e| e.contains(&v)).all(|e| {
                let mapped: Vec<usize> = e.iter().filter(|&&x| x <= v).map(|&x| self.phi[x]).collect();
                b.edges().iter().any(|f| mapped.iter().all(|m| f.contains(m)))
            });
            if ok {
                self.used[w] = true;
                if self.go(v + 1) {
                    return true;
                }
                self.used[w] = false;
            }
        }
        self.phi[v] = 0;
        false
    }
}

fn brute_force_count(n: usize) -> usize {
    let mut reps: Vec<Hypergraph> = Vec::new();
    for h in fibonacci_family(n).unwrap() {
        if !reps.iter().any(|r| isomorphic(r, &h)) {
            reps.push(h);
        }
    }
    reps.len()
}

fn frozen_counts() -> BTreeMap<usize, usize> {
    let v: serde_json::Value =
        serde_json::from_str(include_str!("../fixtures/fibonacci_counts.json")).unwrap();
    v["counts"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, c)| (k.parse().unwrap(), c.as_u64().unwrap() as usize))
        .collect()
}

#[test]
fn fibonacci_counts_match_fixture() {
    for (n, count) in frozen_counts() {
        assert_eq!(enumerate_fibonacci(n).unwrap().len(), count, "n = {n}");
    }
}

#[test]
fn fibonacci_counts_match_brute_force() {
    for (n, count) in frozen_counts() {
        assert_eq!(brute_force_count(n), count, "n = {n}");
    }
}

#[test]
fn unique_class_for_small_n() {
    for n in 6..=8 {
        assert_eq!(enumerate_fibonacci(n).unwrap().len(), 1);
    }
}

#[test]
fn find_isomorphism_returns_a_valid_map() {
    let fam = fibonacci_family(9).unwrap();
    for a in &fam[..fam.len().min(10)] {
        for b in &fam[..fam.len().min(10)] {
            let brute = isomorphic(a, b);
            match find_isomorphism(a, b) {
                Some(phi) => {
                    assert!(brute);
                    let mut img = a.relabel(&phi).edges().to_vec();
                    let mut tgt = b.edges().to_vec();
                    img.sort();
                    tgt.sort();
                    assert_eq!(img, tgt);
                }
                None => assert!(!brute),
            }
        }
    }
}

#[test]
fn dagger_eight_filters_to_two_classes() {
    let (classes, stats) = enumerate_dagger_3graphs(8, None).unwrap();
    assert_eq!(classes.len(), 2);
    assert_eq!(stats.level_classes.len(), 6);
    let survivors: Vec<_> = classes
        .iter()
        .filter(|c| w_filter(&c.canonical_hypergraph(), 1).passes)
        .collect();
    assert_eq!(survivors.len(), 2);
    let fib = &enumerate_fibonacci(8).unwrap()[0];
    assert_eq!(survivors.iter().filter(|c| c.canonical.edges == fib.canonical.edges).count(), 1);
}

#[test]
fn dagger_node_limit_is_enforced() {
    assert!(enumerate_dagger_3graphs(8, Some(10)).is_err());
}
