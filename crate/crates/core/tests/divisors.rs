use std::collections::BTreeMap;

use hypermod_core::divisor_classes::*;
use hypermod_core::exact_arith::Scalar;
use hypermod_core::generator::{dual_hesse_index, keel_vermeire};
use hypermod_core::realization::{dual_hesse_realization, realize, FieldSpec, Realization, DEFAULT_BUDGET};

fn label(names: &[&str]) -> BoundaryLabel {
    let idx: Vec<usize> = names.iter().map(|s| dual_hesse_index(s)).collect();
    BoundaryLabel::new(12, &idx).unwrap()
}

fn reference_class() -> Vec<(Vec<&'static str>, i64)> {
    vec![
        (vec!["1", "b", "γ"], 1),
        (vec!["p", "b", "γ"], 1),
        (vec!["p", "2", "c", "β"], 1),
        (vec!["2", "c", "β"], 1),
        (vec!["3", "a", "α"], 1),
        (vec!["p", "3", "α"], 1),
        (vec!["2", "a", "γ"], 1),
        (vec!["n", "2", "γ"], 1),
        (vec!["n", "3", "b", "β"], 1),
        (vec!["3", "b", "β"], 1),
        (vec!["1", "c", "α"], 1),
        (vec!["n", "c", "α"], 1),
        (vec!["1", "2", "3"], 1),
        (vec!["m", "2", "3"], 1),
        (vec!["m", "α", "β", "γ"], 1),
        (vec!["α", "β", "γ"], 1),
        (vec!["a", "b", "c"], 1),
        (vec!["m", "b", "c"], 1),
        (vec!["1", "β"], 1),
        (vec!["2", "b"], 2),
        (vec!["2", "α"], 2),
        (vec!["3", "c"], 2),
        (vec!["3", "γ"], 2),
        (vec!["a", "β"], 1),
        (vec!["b", "α"], 2),
        (vec!["c", "γ"], 2),
    ]
}

fn five() -> Vec<usize> {
    ["m", "n", "p", "1", "a"].iter().map(|s| dual_hesse_index(s)).collect()
}

#[test]
fn exceptional_conic_class_matches_reference_class() {
    let class = exceptional_conic_class(&dual_hesse_realization(), &five()).unwrap();
    let expected: BTreeMap<BoundaryLabel, i64> =
        reference_class().into_iter().map(|(names, c)| (label(&names), c)).collect();
    assert_eq!(expected.len(), 26);
    assert_eq!(class.delta, expected);
    for pair in [["m", "n"], ["m", "p"], ["n", "p"], ["1", "a"]] {
        assert_eq!(class.coefficient(&label(&pair)), 0);
    }
}

#[test]
fn exceptional_conic_rejects_bad_five() {
    let real = dual_hesse_realization();
    let collinear: Vec<usize> = ["1", "2", "3", "m", "a"].iter().map(|s| dual_hesse_index(s)).collect();
    assert!(exceptional_conic_class(&real, &collinear).is_err());
    assert!(exceptional_conic_class(&real, &five()[..4]).is_err());
}

fn kv_realization() -> Realization {
    (1..20)
        .map(|seed| realize(&keel_vermeire(), 2, FieldSpec::Rational, seed, DEFAULT_BUDGET).unwrap().realization)
        .find(|r| !conic_through_all(r))
        .unwrap()
}

#[test]
fn kapranov_pullback_rules_on_keel_vermeire() {
    let real = kv_realization();
    let l = |s: &[usize]| BoundaryLabel::new(6, s).unwrap();
    assert_eq!(kapranov_pullback(&real, &l(&[1, 2, 3])).unwrap(), Pullback::Line(vec![1, 2, 3]));
    assert_eq!(kapranov_pullback(&real, &l(&[1, 4])).unwrap(), Pullback::Line(vec![1, 4]));
    assert_eq!(kapranov_pullback(&real, &l(&[1, 2])).unwrap(), Pullback::Exceptional(3));
    assert_eq!(kapranov_pullback(&real, &l(&[4, 6])).unwrap(), Pullback::Exceptional(3));
    assert_eq!(kapranov_pullback(&real, &l(&[1, 2, 4])).unwrap(), Pullback::Zero);
}

#[test]
fn kapranov_pullback_needs_no_conic_through_all() {
    // six points on the conic xz = y²
    let pts: Vec<Vec<Scalar>> = (1..=6)
        .map(|t| vec![Scalar::one(), Scalar::from_int(t), Scalar::from_int(t * t)])
        .collect();
    let real = Realization::new(2, FieldSpec::Rational, pts);
    assert!(conic_through_all(&real));
    let l = BoundaryLabel::new(6, &[1, 2]).unwrap();
    assert_eq!(kapranov_pullback(&real, &l), Err(DivisorError::ConicThroughAll));
}

#[test]
fn complement_normalization() {
    let n = 7;
    for mask in 0u32..(1 << n) {
        let s: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        if s.len() < 2 || s.len() + 2 > n {
            continue;
        }
        let c: Vec<usize> = (1..=n).filter(|i| !s.contains(i)).collect();
        let a = BoundaryLabel::new(n, &s).unwrap();
        assert_eq!(a, BoundaryLabel::new(n, &c).unwrap());
        assert_eq!(BoundaryLabel::new(n, a.set()).unwrap(), a);
        assert!(!a.set().contains(&n));
    }
}

#[test]
fn kv_divisor_data() {
    let d = kv_divisor();
    assert_eq!(d.h_degree, 2);
    assert_eq!(d.kapranov.h, 2);
    assert!(d.consistent);
    let mut e: Vec<&str> = d.kapranov.e.keys().map(|s| s.as_str()).collect();
    e.sort_unstable();
    assert_eq!(e, vec!["1", "13", "14", "2", "3", "35", "4", "45", "5"]);
    let l = |s: &[usize]| BoundaryLabel::new(6, s).unwrap();
    let expected: BTreeMap<BoundaryLabel, i64> =
        [l(&[2, 6]), l(&[1, 4, 6]), l(&[3, 5, 6])].into_iter().map(|x| (x, 1)).collect();
    assert_eq!(d.pullback.delta, expected);
}

#[test]
fn h_degree_counts_pairs_only() {
    assert_eq!(h_degree(7, &BTreeMap::new()), 3);
    let mut m = BTreeMap::new();
    m.insert(BoundaryLabel::new(7, &[1, 2]).unwrap(), 1);
    assert_eq!(h_degree(7, &m), 2);
    m.insert(BoundaryLabel::new(7, &[1, 2, 3]).unwrap(), 5);
    assert_eq!(h_degree(7, &m), 2);
}
