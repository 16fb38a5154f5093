//! Hypergraphs Γ on N = {1..n}, their standing conditions, the subset
//! conditions (‡) and (†), genus and the dual graph of the stable model.

mod canon;
mod graph;

pub use canon::{canonical_form, CanonicalForm};
pub use graph::Graph;

use serde::{Deserialize, Serialize};

/// Indices are 1-based; each hyperedge is stored sorted. The edge list is an
/// ordered multiset, so repeated hyperedges are representable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    pub n: usize,
    #[serde(rename = "hyperedges")]
    edges: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
pub enum Violation {
    #[error("hyperedge {edge} has fewer than 3 indices")]
    EdgeTooSmall { edge: usize },
    #[error("index {index} in hyperedge {edge} is outside 1..n")]
    IndexOutOfRange { edge: usize, index: usize },
    #[error("hyperedge {edge} repeats index {index}")]
    RepeatedIndex { edge: usize, index: usize },
    #[error("hypergraph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("index {index} has valence {valence} < 2")]
    LowValence { index: usize, valence: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("invalid hypergraph: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

/// Outcome of a subset condition; the witness lists 1-based edge positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

/// Outcome of condition (†) with the valence-2 diagnostic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DaggerResult {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
    pub valence_two: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("expected a 3-graph with n-2 hyperedges")]
    WrongShape,
    #[error("subset size out of range")]
    BadSubset,
    #[error("too many hyperedges for exhaustive subset scans ({0})")]
    TooManyEdges(usize),
}

/// Largest edge count accepted by the exhaustive subset scans.
pub const MAX_SCAN_EDGES: usize = 30;

impl Hypergraph {
    /// Stores the hypergraph without checking the standing conditions.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Self {
        let edges = edges
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e
            })
            .collect();
        Hypergraph { n, edges }
    }

    /// Checks |Γ_j| ≥ 3, indices in range, connectivity and valence ≥ 2.
    pub fn validate(n: usize, edges: Vec<Vec<usize>>) -> Result<Self, ValidationError> {
        let h = Self::new(n, edges);
        let v = h.violations();
        if v.is_empty() {
            Ok(h)
        } else {
            Err(ValidationError { violations: v })
        }
    }

    /// Re-validates a stored hypergraph.
    pub fn validated(self) -> Result<Self, ValidationError> {
        let v = self.violations();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(ValidationError { violations: v })
        }
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut in_range = true;
        for (j, e) in self.edges.iter().enumerate() {
            if e.len() < 3 {
                out.push(Violation::EdgeTooSmall { edge: j + 1 });
            }
            for w in e.windows(2) {
                if w[0] == w[1] {
                    out.push(Violation::RepeatedIndex {
                        edge: j + 1,
                        index: w[0],
                    });
                }
            }
            for &i in e {
                if i == 0 || i > self.n {
                    out.push(Violation::IndexOutOfRange {
                        edge: j + 1,
                        index: i,
                    });
                    in_range = false;
                }
            }
        }
        if !in_range {
            return out;
        }
        let comps = self.vertex_components();
        if comps > 1 {
            out.push(Violation::Disconnected { components: comps });
        }
        for (i, v) in self.valences().iter().enumerate().skip(1) {
            if *v < 2 {
                out.push(Violation::LowValence {
                    index: i,
                    valence: *v,
                });
            }
        }
        out
    }

    /// Positions (1-based) of hyperedges that repeat an earlier one.
    pub fn duplicate_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&j| self.edges[..j].contains(&self.edges[j]))
            .map(|j| j + 1)
            .collect()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Valences indexed by vertex; entry 0 is unused.
    pub fn valences(&self) -> Vec<usize> {
        let mut v = vec![0; self.n + 1];
        for e in &self.edges {
            for &i in e {
                if i <= self.n {
                    v[i] += 1;
                }
            }
        }
        v
    }

    pub fn is_three_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 3)
    }

    /// Bitmask of a hyperedge (bit i for index i).
    pub fn edge_mask(&self, j: usize) -> u64 {
        self.edges[j].iter().fold(0u64, |m, &i| m | (1u64 << i))
    }

    fn masks(&self) -> Vec<u64> {
        assert!(self.n < 64, "at most 63 vertices supported");
        (0..self.edges.len()).map(|j| self.edge_mask(j)).collect()
    }

    /// Number of connected components over the vertices touched by edges
    /// in `subset` (0-based positions).
    pub fn edge_subset_components(&self, subset: &[usize]) -> usize {
        let masks = self.masks();
        let mut groups: Vec<u64> = Vec::new();
        for &j in subset {
            let mut m = masks[j];
            let mut keep = Vec::with_capacity(groups.len());
            for g in groups {
                if g & m != 0 {
                    m |= g;
                } else {
                    keep.push(g);
                }
            }
            keep.push(m);
            groups = keep;
        }
        groups.len()
    }

    fn vertex_components(&self) -> usize {
        let all: Vec<usize> = (0..self.edges.len()).collect();
        let covered = self.masks().iter().fold(0u64, |a, m| a | m);
        let isolated = (1..=self.n).filter(|i| covered & (1u64 << i) == 0).count();
        self.edge_subset_components(&all) + isolated
    }

    fn scan(
        &self,
        weights: &[i64],
        min_size: u32,
        max_size: u32,
        fails: impl Fn(u64, u32, i64) -> bool,
    ) -> Result<Option<Vec<usize>>, ShapeError> {
        let d = self.edges.len();
        if d > MAX_SCAN_EDGES {
            return Err(ShapeError::TooManyEdges(d));
        }
        Ok(
            first_failing_subset(&self.masks(), weights, min_size, max_size, fails).map(|m| {
                (0..d)
                    .filter(|j| m & (1u64 << j) != 0)
                    .map(|j| j + 1)
                    .collect()
            }),
        )
    }

    /// Condition (‡): |∪_{S}Γ_j| − 2 ≥ Σ_{S}(|Γ_j| − 2) for all nonempty S.
    pub fn check_cond_s(&self) -> Result<ConditionResult, ShapeError> {
        let w: Vec<i64> = self.edges.iter().map(|e| e.len() as i64 - 2).collect();
        let witness = self.scan(&w, 1, u32::MAX, |u, _, s| (u.count_ones() as i64) - 2 < s)?;
        Ok(ConditionResult {
            holds: witness.is_none(),
            witness,
        })
    }

    /// The component-wise form: |∪_{S}Γ_j| − e_S − 1 ≥ Σ_{S}(|Γ_j| − 2),
    /// evaluated through [`Hypergraph::codim_intersection`].
    pub fn check_cond_c(&self) -> Result<ConditionResult, ShapeError> {
        let d = self.edges.len();
        if d > 20 {
            return Err(ShapeError::TooManyEdges(d));
        }
        for mask in 1u64..(1u64 << d) {
            let s: Vec<usize> = (0..d).filter(|j| mask & (1 << j) != 0).collect();
            let rhs: i64 = s.iter().map(|&j| self.edges[j].len() as i64 - 2).sum();
            if self.codim_intersection(&s) < rhs {
                return Ok(ConditionResult {
                    holds: false,
                    witness: Some(s.iter().map(|j| j + 1).collect()),
                });
            }
        }
        Ok(ConditionResult {
            holds: true,
            witness: None,
        })
    }

    /// Condition (†) for 3-graphs with n − 2 hyperedges.
    pub fn check_cond_m(&self) -> Result<DaggerResult, ShapeError> {
        if !self.is_three_graph() || self.edges.len() + 2 != self.n {
            return Err(ShapeError::WrongShape);
        }
        let r = check_dagger_partial(self)?;
        let val = self.valences();
        Ok(DaggerResult {
            holds: r.holds,
            witness: r.witness,
            valence_two: (1..=self.n).filter(|&i| val[i] == 2).collect(),
        })
    }

    /// (‡) together with n − 2 = Σ(|Γ_j| − 2).
    pub fn check_birational(&self) -> Result<bool, ShapeError> {
        Ok(self.check_cond_s()?.holds && self.dimension_match())
    }

    pub fn dimension_match(&self) -> bool {
        let s: i64 = self.edges.iter().map(|e| e.len() as i64 - 2).sum();
        self.n as i64 - 2 == s
    }

    /// g = Σ(|Γ_j| − 3) + 2d − n + 1.
    pub fn genus(&self) -> i64 {
        let dim: i64 = self.edges.iter().map(|e| e.len() as i64 - 3).sum();
        dim + 2 * self.edges.len() as i64 - self.n as i64 + 1
    }

    /// Whether δ_I survives: it is excluded iff some Γ_α meets I twice and
    /// some Γ_β meets the complement twice.
    pub fn admissible_boundary(&self, subset: &[usize]) -> Result<bool, ShapeError> {
        let k = subset.len();
        if k < 2 || k + 2 > self.n || subset.iter().any(|&i| i == 0 || i > self.n) {
            return Err(ShapeError::BadSubset);
        }
        let meets = |e: &Vec<usize>, inside: bool| {
            e.iter().filter(|i| subset.contains(i) == inside).count() > 1
        };
        let a = self.edges.iter().any(|e| meets(e, true));
        let b = self.edges.iter().any(|e| meets(e, false));
        Ok(!(a && b))
    }

    /// l(H_S) = |∪_{S}Γ_i| − e_S − 1 for 0-based edge positions S.
    pub fn codim_intersection(&self, subset: &[usize]) -> i64 {
        let masks = self.masks();
        let u = subset.iter().fold(0u64, |a, &j| a | masks[j]);
        u.count_ones() as i64 - self.edge_subset_components(subset) as i64 - 1
    }

    /// Γ ∪ {n+1}: the new index joins every hyperedge.
    pub fn cone(&self) -> Hypergraph {
        let k = self.n + 1;
        Hypergraph::new(
            k,
            self.edges
                .iter()
                .map(|e| {
                    let mut e = e.clone();
                    e.push(k);
                    e
                })
                .collect(),
        )
    }

    pub fn dual_graph(&self) -> DualGraph {
        DualGraph::of(self)
    }

    /// Hypergraph with the given hyperedges (0-based positions) removed.
    pub fn without_edges(&self, drop: &[usize]) -> Hypergraph {
        Hypergraph::new(
            self.n,
            self.edges
                .iter()
                .enumerate()
                .filter(|(j, _)| !drop.contains(j))
                .map(|(_, e)| e.clone())
                .collect(),
        )
    }

    /// Applies a vertex relabeling `perm[old] = new` (entry 0 unused).
    pub fn relabel(&self, perm: &[usize]) -> Hypergraph {
        Hypergraph::new(
            self.n,
            self.edges
                .iter()
                .map(|e| e.iter().map(|&i| perm[i]).collect())
                .collect(),
        )
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form(self.n, &self.edges)
    }
}

/// Checks (†) on a possibly partial list of triples on n vertices: every S
/// with 2 ≤ |S| ≤ n − 3 has |∪S| ≥ |S| + 3.
pub fn check_dagger_partial(h: &Hypergraph) -> Result<ConditionResult, ShapeError> {
    let max = h.n.saturating_sub(3) as u32;
    let w = vec![0; h.edges.len()];
    let witness = h.scan(&w, 2, max, |u, k, _| (u.count_ones() as i64) < k as i64 + 3)?;
    Ok(ConditionResult {
        holds: witness.is_none(),
        witness,
    })
}

/// Scans subsets in increasing bitmask order and returns the first one whose
/// size lies in [min_size, max_size] and for which `fails` holds. Unions and
/// weight sums come from two half-tables so memory stays small.
pub(crate) fn first_failing_subset(
    masks: &[u64],
    weights: &[i64],
    min_size: u32,
    max_size: u32,
    fails: impl Fn(u64, u32, i64) -> bool,
) -> Option<u64> {
    let d = masks.len();
    let lo_bits = d / 2;
    let hi_bits = d - lo_bits;
    let table = |off: usize, bits: usize| -> Vec<(u64, i64)> {
        let mut t = vec![(0u64, 0i64); 1 << bits];
        for m in 1usize..(1 << bits) {
            let j = m.trailing_zeros() as usize;
            let (u, w) = t[m & (m - 1)];
            t[m] = (u | masks[off + j], w + weights[off + j]);
        }
        t
    };
    let lo = table(0, lo_bits);
    let hi = table(lo_bits, hi_bits);
    for h in 0..(1usize << hi_bits) {
        for l in 0..(1usize << lo_bits) {
            if h == 0 && l == 0 {
                continue;
            }
            let mask = ((h as u64) << lo_bits) | l as u64;
            let k = mask.count_ones();
            if k < min_size || k > max_size {
                continue;
            }
            let (u1, w1) = lo[l];
            let (u2, w2) = hi[h];
            if fails(u1 | u2, k, w1 + w2) {
                return Some(mask);
            }
        }
    }
    None
}

/// Irreducible components of the stable model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Component {
    /// The line of hyperedge j (0-based).
    Black(usize),
    /// The line inserted at index i (valence ≥ 3).
    White(usize),
}

impl Component {
    pub fn label(&self) -> String {
        match self {
            Component::Black(j) => format!("B{}", j + 1),
            Component::White(i) => format!("W{i}"),
        }
    }
}

/// A node of the stable model joining components `a` and `b` at index `index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualEdge {
    pub a: usize,
    pub b: usize,
    pub index: usize,
}

/// Dual graph of Σˢ: blacks first (in hyperedge order), then whites by index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub components: Vec<Component>,
    pub edges: Vec<DualEdge>,
}

impl DualGraph {
    pub fn of(h: &Hypergraph) -> DualGraph {
        let d = h.num_edges();
        let val = h.valences();
        let mut components: Vec<Component> = (0..d).map(Component::Black).collect();
        let mut edges = Vec::new();
        for i in 1..=h.n {
            let inc: Vec<usize> = (0..d).filter(|&j| h.edges[j].contains(&i)).collect();
            if val[i] == 2 {
                edges.push(DualEdge {
                    a: inc[0],
                    b: inc[1],
                    index: i,
                });
            } else if val[i] >= 3 {
                let w = components.len();
                components.push(Component::White(i));
                for j in inc {
                    edges.push(DualEdge {
                        a: j,
                        b: w,
                        index: i,
                    });
                }
            }
        }
        DualGraph { components, edges }
    }

    pub fn num_black(&self) -> usize {
        self.components
            .iter()
            .filter(|c| matches!(c, Component::Black(_)))
            .count()
    }

    pub fn graph(&self) -> Graph {
        Graph::new(
            self.components.len(),
            self.edges.iter().map(|e| (e.a, e.b)).collect(),
        )
    }

    /// E − V + 1 (the first Betti number when connected).
    pub fn betti(&self) -> i64 {
        self.edges.len() as i64 - self.components.len() as i64 + 1
    }

    /// Number of nodes on each component.
    pub fn node_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.components.len()];
        for e in &self.edges {
            c[e.a] += 1;
            c[e.b] += 1;
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kv() -> Hypergraph {
        Hypergraph::validate(
            6,
            vec![vec![1, 2, 3], vec![5, 2, 4], vec![3, 4, 6], vec![1, 5, 6]],
        )
        .unwrap()
    }

    #[test]
    fn validation_errors() {
        let e = Hypergraph::validate(5, vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap_err();
        assert!(e.violations.contains(&Violation::LowValence {
            index: 1,
            valence: 1
        }));
        assert!(e.violations.contains(&Violation::LowValence {
            index: 2,
            valence: 1
        }));
        let e = Hypergraph::validate(6, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap_err();
        assert!(e
            .violations
            .contains(&Violation::Disconnected { components: 2 }));
        let e = Hypergraph::validate(4, vec![vec![1, 2], vec![1, 2, 7]]).unwrap_err();
        assert!(e.violations.contains(&Violation::EdgeTooSmall { edge: 1 }));
        assert!(e
            .violations
            .contains(&Violation::IndexOutOfRange { edge: 2, index: 7 }));
    }

    #[test]
    fn kv_conditions() {
        let h = kv();
        assert!(h.check_cond_s().unwrap().holds);
        assert!(h.check_birational().unwrap());
        let m = h.check_cond_m().unwrap();
        assert!(m.holds);
        assert_eq!(m.valence_two, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(h.genus(), 3);
        assert_eq!(h.dual_graph().betti(), 3);
    }

    #[test]
    fn duplicate_edge_fails_with_pair() {
        let h = Hypergraph::validate(3, vec![vec![1, 2, 3], vec![1, 2, 3]]).unwrap();
        assert_eq!(h.duplicate_edges(), vec![2]);
        let r = h.check_cond_s().unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some(vec![1, 2]));
    }

    #[test]
    fn boundary_admissibility() {
        let h = kv();
        assert!(h.admissible_boundary(&[1, 4]).unwrap());
        assert!(!h.admissible_boundary(&[1, 2]).unwrap());
        let surviving: Vec<Vec<usize>> = (1..=6)
            .flat_map(|a| ((a + 1)..=6).map(move |b| vec![a, b]))
            .filter(|s| h.admissible_boundary(s).unwrap())
            .collect();
        assert_eq!(surviving, vec![vec![1, 4], vec![2, 6], vec![3, 5]]);
        assert_eq!(h.admissible_boundary(&[1]), Err(ShapeError::BadSubset));
    }

    #[test]
    fn codimension() {
        let h = kv();
        assert_eq!(h.codim_intersection(&[0]), 1);
        assert_eq!(h.codim_intersection(&[0, 1]), 3);
        let two = Hypergraph::new(6, vec![vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(two.codim_intersection(&[0, 1]), 6 - 2 - 1);
    }

    #[test]
    fn cone_of_kv() {
        let c = kv().cone();
        assert_eq!(
            c.edges(),
            &[
                vec![1, 2, 3, 7],
                vec![2, 4, 5, 7],
                vec![3, 4, 6, 7],
                vec![1, 5, 6, 7]
            ]
        );
        assert_eq!(c.genus(), 6);
        assert!(c.clone().validated().is_ok());
        assert_eq!(c.valences()[7], 4);
    }

    #[test]
    fn fibonacci_seven() {
        let h = Hypergraph::validate(
            7,
            vec![
                vec![1, 2, 3],
                vec![5, 2, 4],
                vec![3, 4, 6],
                vec![1, 5, 7],
                vec![2, 6, 7],
            ],
        )
        .unwrap();
        assert!(h.check_cond_m().unwrap().holds);
        assert_eq!(h.genus(), 4);
        let dg = h.dual_graph();
        assert_eq!((dg.edges.len(), dg.components.len()), (9, 6));
    }
}
