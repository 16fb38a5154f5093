//! The Fibonacci-like inductive construction, isomorph-free enumeration of
//! 3-graphs satisfying (†), and builders for the named configurations.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::exact_arith::{Ring, Scalar};
use crate::hypergraph::{check_dagger_partial, CanonicalForm, Hypergraph};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("input is not in construction form: {0}")]
    NotConstructionForm(String),
    #[error("enumeration budget of {0} nodes exceeded")]
    BudgetExceeded(usize),
    #[error("unsupported named configuration {0:?}")]
    Unsupported(String),
    #[error("n must satisfy {0}")]
    OutOfRange(&'static str),
}

/// An isomorphism class: its canonical form (with automorphism count) and
/// a representative hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoClass {
    pub canonical: CanonicalForm,
    pub representative: Hypergraph,
}

impl IsoClass {
    pub fn of(h: &Hypergraph) -> IsoClass {
        IsoClass {
            canonical: h.canonical_form(),
            representative: h.clone(),
        }
    }

    /// The canonical form as a hypergraph.
    pub fn canonical_hypergraph(&self) -> Hypergraph {
        Hypergraph::new(self.canonical.n, self.canonical.edges.clone())
    }
}

/// The n = 6 starting hypergraph {123, 524, 346, 156}.
pub fn keel_vermeire() -> Hypergraph {
    Hypergraph::new(
        6,
        vec![vec![1, 2, 3], vec![5, 2, 4], vec![3, 4, 6], vec![1, 5, 6]],
    )
}

/// Whether the last two triples contain n and the last contains n − 1.
pub fn in_construction_form(h: &Hypergraph) -> Result<(), GenError> {
    let n = h.n;
    let d = h.num_edges();
    if !h.is_three_graph() || d + 2 != n || n < 6 {
        return Err(GenError::NotConstructionForm(
            "need n-2 triples on n >= 6 vertices".into(),
        ));
    }
    let e = h.edges();
    if !(e[d - 1].contains(&n) && e[d - 2].contains(&n)) {
        return Err(GenError::NotConstructionForm(format!(
            "last two triples must contain {n}"
        )));
    }
    if !e[d - 1].contains(&(n - 1)) {
        return Err(GenError::NotConstructionForm(format!(
            "last triple must contain {}",
            n - 1
        )));
    }
    Ok(())
}

/// One inductive step from n to n + 1, one output per admissible `a`.
pub fn fibonacci_extend(h: &Hypergraph) -> Result<Vec<Hypergraph>, GenError> {
    in_construction_form(h)?;
    let n = h.n;
    let e = h.edges();
    let d = e.len();
    let last = &e[d - 1];
    let i = *last
        .iter()
        .find(|&&x| x != n && x != n - 1)
        .expect("third index");
    let mut base: Vec<Vec<usize>> = e[..d - 1].to_vec();
    let new_prev = vec![i, n - 1, n + 1];
    base.push(new_prev.clone());
    let prev = &e[d - 2];
    let mut out = Vec::new();
    for a in 1..=n {
        if new_prev.contains(&a) || prev.contains(&a) {
            continue;
        }
        let mut edges = base.clone();
        edges.push(vec![a, n, n + 1]);
        out.push(Hypergraph::new(n + 1, edges));
    }
    Ok(out)
}

/// All labeled outputs of the construction on n vertices.
pub fn fibonacci_family(n: usize) -> Result<Vec<Hypergraph>, GenError> {
    if n < 6 {
        return Err(GenError::OutOfRange("n >= 6"));
    }
    let mut level = vec![keel_vermeire()];
    for _ in 6..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for h in &level {
            for c in fibonacci_extend(h)? {
                if seen.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

fn classes(hs: impl IntoIterator<Item = Hypergraph>) -> Vec<IsoClass> {
    let mut map: BTreeMap<Vec<Vec<usize>>, IsoClass> = BTreeMap::new();
    for h in hs {
        let c = IsoClass::of(&h);
        map.entry(c.canonical.edges.clone()).or_insert(c);
    }
    map.into_values().collect()
}

/// Isomorphism classes reachable by the construction, in canonical order.
pub fn enumerate_fibonacci(n: usize) -> Result<Vec<IsoClass>, GenError> {
    Ok(classes(fibonacci_family(n)?))
}

/// Per-level statistics of the (†) enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DaggerStats {
    /// Classes of partial lists with k triples, for k = 1..n−2.
    pub level_classes: Vec<usize>,
    pub nodes: usize,
}

/// Every isomorphism class of n − 2 triples on n vertices satisfying (†).
///
/// Partial lists are extended one triple at a time and deduplicated by
/// canonical form at every level. This is complete because (†) restricted to
/// a sublist is again (†) for that sublist.
pub fn enumerate_dagger_3graphs(
    n: usize,
    node_limit: Option<usize>,
) -> Result<(Vec<IsoClass>, DaggerStats), GenError> {
    if !(6..=12).contains(&n) {
        return Err(GenError::OutOfRange("6 <= n <= 12"));
    }
    let triples: Vec<Vec<usize>> = (1..=n)
        .flat_map(|a| ((a + 1)..=n).flat_map(move |b| ((b + 1)..=n).map(move |c| vec![a, b, c])))
        .collect();
    let mut level: Vec<Hypergraph> = vec![Hypergraph::new(n, vec![vec![1, 2, 3]])];
    let mut stats = DaggerStats {
        level_classes: vec![1],
        nodes: 1,
    };
    for _ in 1..(n - 2) {
        let children: Vec<Vec<(Vec<Vec<usize>>, Hypergraph)>> = level
            .par_iter()
            .map(|h| {
                triples
                    .iter()
                    .filter_map(|t| {
                        let mut edges = h.edges().to_vec();
                        edges.push(t.clone());
                        let c = Hypergraph::new(n, edges);
                        let ok = check_dagger_partial(&c).map(|r| r.holds).unwrap_or(false);
                        ok.then(|| {
                            let cf = c.canonical_form();
                            (cf.edges.clone(), Hypergraph::new(n, cf.edges))
                        })
                    })
                    .collect()
            })
            .collect();
        stats.nodes += level.len() * triples.len();
        if let Some(limit) = node_limit {
            if stats.nodes > limit {
                return Err(GenError::BudgetExceeded(limit));
            }
        }
        let mut map: BTreeMap<Vec<Vec<usize>>, Hypergraph> = BTreeMap::new();
        for (k, h) in children.into_iter().flatten() {
            map.entry(k).or_insert(h);
        }
        level = map.into_values().collect();
        stats.level_classes.push(level.len());
    }
    Ok((classes(level), stats))
}

/// A vertex bijection `phi[v_a] = v_b` carrying `a` onto `b`, if one exists.
pub fn find_isomorphism(a: &Hypergraph, b: &Hypergraph) -> Option<Vec<usize>> {
    if a.n != b.n {
        return None;
    }
    let (ca, cb) = (a.canonical_form(), b.canonical_form());
    if ca.edges != cb.edges {
        return None;
    }
    let mut inv_b = vec![0; b.n + 1];
    for v in 1..=b.n {
        inv_b[cb.labeling[v]] = v;
    }
    let mut phi = vec![0; a.n + 1];
    for v in 1..=a.n {
        phi[v] = inv_b[ca.labeling[v]];
    }
    Some(phi)
}

/// Vertex names of the dual Hesse configuration in index order 1..12.
pub const DUAL_HESSE_NAMES: [&str; 12] =
    ["1", "2", "3", "a", "b", "c", "α", "β", "γ", "m", "n", "p"];

/// 1-based index of a dual Hesse vertex name.
pub fn dual_hesse_index(name: &str) -> usize {
    DUAL_HESSE_NAMES
        .iter()
        .position(|&x| x == name)
        .expect("dual Hesse vertex name")
        + 1
}

/// The nine hyperedges in the fixed order w1..w9, vertices in the order used
/// for cross-ratio coordinates.
pub const DUAL_HESSE_LINES: [[&str; 4]; 9] = [
    ["p", "1", "b", "γ"],
    ["p", "2", "c", "β"],
    ["p", "3", "a", "α"],
    ["n", "γ", "a", "2"],
    ["n", "β", "b", "3"],
    ["n", "α", "c", "1"],
    ["m", "1", "2", "3"],
    ["m", "γ", "β", "α"],
    ["m", "b", "c", "a"],
];

/// The hyperedges of the dual Hesse configuration as ordered index lists.
pub fn dual_hesse_ordered_lines() -> Vec<Vec<usize>> {
    DUAL_HESSE_LINES
        .iter()
        .map(|l| l.iter().map(|x| dual_hesse_index(x)).collect())
        .collect()
}

pub fn dual_hesse() -> Hypergraph {
    Hypergraph::new(12, dual_hesse_ordered_lines())
}

/// The 12 lines of AG(2, 3): point (x, y) has index 3x + y + 1.
pub fn hesse() -> Hypergraph {
    let idx = |x: usize, y: usize| 3 * (x % 3) + (y % 3) + 1;
    let mut lines: Vec<Vec<usize>> = Vec::new();
    for (dx, dy) in [(0usize, 1usize), (1, 0), (1, 1), (1, 2)] {
        for s in 0..9 {
            let (x0, y0) = (s / 3, s % 3);
            let mut l: Vec<usize> = (0..3).map(|k| idx(x0 + k * dx, y0 + k * dy)).collect();
            l.sort_unstable();
            if !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    Hypergraph::new(9, lines)
}

/// Points and lines of Ceva(q): the lines x = ζ^k y, y = ζ^k z, z = ζ^k x
/// over ℚ(ζ_q) and their intersection points. Points come first as the
/// three coordinate points, then (ζ^{a+b} : ζ^b : 1).
pub fn ceva_points_and_lines(q: u32) -> (Vec<[Scalar; 3]>, Vec<[Scalar; 3]>) {
    let z = Scalar::zeta(q);
    let zp = |k: u32| z.pow(k % q);
    let (o, l) = (Scalar::zero(), Scalar::one());
    let mut points = vec![
        [l.clone(), o.clone(), o.clone()],
        [o.clone(), l.clone(), o.clone()],
        [o.clone(), o.clone(), l.clone()],
    ];
    for a in 0..q {
        for b in 0..q {
            points.push([zp(a + b), zp(b), l.clone()]);
        }
    }
    let mut lines = Vec::new();
    for k in 0..q {
        lines.push([l.clone(), -&zp(k), o.clone()]);
    }
    for k in 0..q {
        lines.push([o.clone(), l.clone(), -&zp(k)]);
    }
    for k in 0..q {
        lines.push([-&zp(k), o.clone(), l.clone()]);
    }
    (points, lines)
}

/// Incidence hypergraph of Ceva(q), found by exact incidence tests.
pub fn ceva(q: u32) -> Result<Hypergraph, GenError> {
    if q < 2 {
        return Err(GenError::Unsupported(format!("ceva({q})")));
    }
    let (points, lines) = ceva_points_and_lines(q);
    let edges = lines
        .iter()
        .map(|ln| {
            (0..points.len())
                .filter(|&i| {
                    let p = &points[i];
                    (0..3)
                        .fold(Scalar::zero(), |acc, k| acc.plus(&(&ln[k] * &p[k])))
                        .is_zero()
                })
                .map(|i| i + 1)
                .collect()
        })
        .collect();
    Ok(Hypergraph::new(points.len(), edges))
}

/// Builds one of: keel-vermeire, hesse, dual-hesse, ceva(q) (also ceva:q).
pub fn build_named(name: &str) -> Result<Hypergraph, GenError> {
    let name = name.trim().to_lowercase();
    match name.as_str() {
        "keel-vermeire" | "kv" => Ok(keel_vermeire()),
        "hesse" => Ok(hesse()),
        "dual-hesse" => Ok(dual_hesse()),
        _ => {
            let q = name
                .strip_prefix("ceva(")
                .and_then(|r| r.strip_suffix(')'))
                .or_else(|| name.strip_prefix("ceva:"))
                .and_then(|r| r.parse::<u32>().ok())
                .ok_or_else(|| GenError::Unsupported(name.clone()))?;
            ceva(q)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_extension_is_forced() {
        let ext = fibonacci_extend(&keel_vermeire()).unwrap();
        assert_eq!(ext.len(), 1);
        assert_eq!(
            ext[0],
            Hypergraph::new(
                7,
                vec![
                    vec![1, 2, 3],
                    vec![5, 2, 4],
                    vec![3, 4, 6],
                    vec![1, 5, 7],
                    vec![2, 6, 7]
                ]
            )
        );
        assert!(in_construction_form(&ext[0]).is_ok());
    }

    #[test]
    fn bad_construction_input() {
        let h = Hypergraph::new(
            6,
            vec![vec![1, 2, 3], vec![5, 2, 4], vec![1, 5, 6], vec![3, 4, 6]],
        );
        assert!(matches!(
            fibonacci_extend(&h),
            Err(GenError::NotConstructionForm(_))
        ));
    }

    #[test]
    fn named_shapes() {
        let dh = dual_hesse();
        assert_eq!(dh.num_edges(), 9);
        assert!(dh.edges().iter().all(|e| e.len() == 4));
        assert!(dh.valences()[1..].iter().all(|&v| v == 3));
        let h = hesse();
        assert_eq!(h.num_edges(), 12);
        assert!(h.edges().iter().all(|e| e.len() == 3));
        assert!(h.valences()[1..].iter().all(|&v| v == 4));
        assert_eq!(
            build_named("ceva(3)").unwrap().canonical_form().edges,
            dh.canonical_form().edges
        );
        assert!(build_named("ceva(1)").is_err());
        assert!(build_named("petersen").is_err());
    }

    #[test]
    fn ceva_counts() {
        for q in 2..=5u32 {
            let h = ceva(q).unwrap();
            assert_eq!(h.n as u32, q * q + 3);
            assert_eq!(h.num_edges() as u32, 3 * q);
            assert!(h.edges().iter().all(|e| e.len() as u32 == q + 1));
        }
    }
}
