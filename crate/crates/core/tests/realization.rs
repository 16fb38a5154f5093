use hypermod_core::generator::{dual_hesse, enumerate_fibonacci, hesse, keel_vermeire};
use hypermod_core::hypergraph::Hypergraph;
use hypermod_core::realization::*;

fn moduli(h: &Hypergraph, field: FieldSpec, seed: u64) -> i64 {
    let rep = realize(h, 2, field, seed, DEFAULT_BUDGET).unwrap();
    assert!(rep.realization.check(h).is_empty());
    local_dimension(&rep.realization, h).unwrap().moduli_dim
}

#[test]
fn rigid_configurations() {
    for seed in 1..=3 {
        assert_eq!(moduli(&keel_vermeire(), FieldSpec::Rational, seed), 0);
        assert_eq!(moduli(&hesse(), FieldSpec::Cyclotomic(3), seed), 0);
        assert!(rigidity(&hesse(), FieldSpec::Cyclotomic(3), seed).unwrap().0);
    }
}

#[test]
fn fibonacci_eight_has_two_moduli() {
    let h = enumerate_fibonacci(8).unwrap()[0].canonical_hypergraph();
    for seed in 1..=3 {
        assert_eq!(moduli(&h, FieldSpec::Rational, seed), 2);
    }
}

#[test]
fn fibonacci_moduli_grow_with_n() {
    for n in 6..=9 {
        let h = enumerate_fibonacci(n).unwrap()[0].canonical_hypergraph();
        assert_eq!(moduli(&h, FieldSpec::Rational, 1), n as i64 - 6);
    }
}

#[test]
fn hesse_over_rationals_is_not_found() {
    for seed in 1..=3 {
        match realize(&hesse(), 2, FieldSpec::Rational, seed, 64) {
            Err(RealizationError::NotFound { attempts, .. }) => assert_eq!(attempts, 64),
            other => panic!("expected NotFound, got {other:?}"),
        }
    }
}

#[test]
fn fixed_realizations_are_valid() {
    assert!(hesse_realization().check(&hesse()).is_empty());
    let dh = dual_hesse_realization();
    assert!(dh.check(&dual_hesse()).is_empty());
    let mut lines: Vec<Vec<usize>> = dh.lines().into_iter().filter(|l| l.len() > 2).collect();
    lines.sort();
    let mut edges = dual_hesse().edges().to_vec();
    edges.sort();
    assert_eq!(lines, edges);
}

#[test]
fn hesse_local_dimension_is_chart_independent() {
    let real = hesse_realization();
    let a = local_dimension(&real, &hesse()).unwrap();
    let chart: Vec<usize> = real
        .points
        .iter()
        .map(|p| p.iter().position(|x| !x.is_zero()).unwrap())
        .collect();
    let b = local_dimension_in_chart(&real, &hesse(), &chart).unwrap();
    assert_eq!(a.moduli_dim, b.moduli_dim);
    assert_eq!(a.moduli_dim, 0);
}

#[test]
fn w3_certificates() {
    let kv = keel_vermeire();
    assert!(w3_empty_certificate(&kv).holds);
    let fib8 = enumerate_fibonacci(8).unwrap()[0].canonical_hypergraph();
    let rep = w_filter(&fib8, 1);
    assert!(rep.w2_found && rep.gamma_prime_vertex.is_some() && rep.passes);
    assert!(rep.extra_cond.iter().all(|&b| b));
    let v = rep.gamma_prime_vertex.unwrap();
    let gp = gamma_prime(&fib8, v).unwrap();
    assert_eq!(gp.n, fib8.n - 1);
    assert_eq!(gp.num_edges(), fib8.num_edges() - 2);
}

#[test]
fn bad_ambient_is_rejected() {
    assert_eq!(
        realize(&keel_vermeire(), 4, FieldSpec::Rational, 1, 8).unwrap_err(),
        RealizationError::BadAmbient(4)
    );
}
