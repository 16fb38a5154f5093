//! Gieseker's basic inequality for multidegrees on stable and quasi-stable
//! models of hypergraph curves, codimension-one boundary strata of the
//! compactified Jacobian, and 3-edge-connectivity of dual graphs.

use serde::Serialize;

use crate::hypergraph::{Component, DualEdge, DualGraph, Hypergraph};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StabilityError {
    #[error("component {0} has negative canonical weight")]
    NegativeWeight(String),
    #[error("multidegree has {got} entries, model has {expected} components")]
    LengthMismatch { got: usize, expected: usize },
    #[error("model has {0} components, at most 62 supported")]
    TooLarge(usize),
    #[error("hypergraph is not in the divisorial setup: {0}")]
    WrongSetup(String),
}

/// The stable model with strictly semistable lines inserted at some nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiStableModel {
    pub base: DualGraph,
    /// Positions in `base.edges` of the split nodes.
    pub inserted: Vec<usize>,
}

impl QuasiStableModel {
    pub fn stable(base: DualGraph) -> Self {
        QuasiStableModel {
            base,
            inserted: vec![],
        }
    }

    pub fn with_inserted(base: DualGraph, inserted: Vec<usize>) -> Self {
        QuasiStableModel { base, inserted }
    }

    pub fn num_components(&self) -> usize {
        self.base.components.len() + self.inserted.len()
    }

    pub fn labels(&self) -> Vec<String> {
        let mut out: Vec<String> = self.base.components.iter().map(Component::label).collect();
        for &k in &self.inserted {
            let e = self.base.edges[k];
            out.push(format!(
                "Z({}|{})",
                self.base.components[e.a].label(),
                self.base.components[e.b].label()
            ));
        }
        out
    }

    /// Graph edges between component positions; each split node becomes two
    /// edges through its inserted component.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let c = self.base.components.len();
        let mut out = Vec::new();
        for (k, e) in self.base.edges.iter().enumerate() {
            match self.inserted.iter().position(|&x| x == k) {
                Some(p) => {
                    out.push((e.a, c + p));
                    out.push((c + p, e.b));
                }
                None => out.push((e.a, e.b)),
            }
        }
        out
    }

    /// Contracting the inserted components recovers the stable model.
    pub fn contract(&self) -> DualGraph {
        self.base.clone()
    }

    /// Canonical multidegree: 1 on black, 0 on white, 1 on inserted.
    pub fn canonical_multidegree(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self
            .base
            .components
            .iter()
            .map(|c| i64::from(matches!(c, Component::Black(_))))
            .collect();
        d.extend(std::iter::repeat_n(1, self.inserted.len()));
        d
    }
}

/// deg ω on each component: nodes − 2 on original components, 0 on inserted.
pub fn omega_weights(model: &QuasiStableModel) -> Result<Vec<i64>, StabilityError> {
    let counts = model.base.node_counts();
    let labels = model.labels();
    let mut w = Vec::with_capacity(model.num_components());
    for (i, &c) in counts.iter().enumerate() {
        let x = c as i64 - 2;
        if x < 0 {
            return Err(StabilityError::NegativeWeight(labels[i].clone()));
        }
        w.push(x);
    }
    w.extend(std::iter::repeat_n(0, model.inserted.len()));
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GbiResult {
    pub holds: bool,
    /// Lexicographically least failing subcurve, as component positions.
    pub witness: Option<Vec<usize>>,
    pub witness_labels: Option<Vec<String>>,
    pub subcurves_checked: u64,
}

/// |deg_Y − λ_Y·deg| < #Y/2 (or ≤) for every proper nonempty subcurve,
/// evaluated in integers after multiplying by 2(2g − 2).
pub fn gbi_check(
    model: &QuasiStableModel,
    deg: &[i64],
    strict: bool,
) -> Result<GbiResult, StabilityError> {
    let c = model.num_components();
    if deg.len() != c {
        return Err(StabilityError::LengthMismatch {
            got: deg.len(),
            expected: c,
        });
    }
    if c > 62 {
        return Err(StabilityError::TooLarge(c));
    }
    let w = omega_weights(model)?;
    let total_w: i64 = w.iter().sum();
    let total_d: i64 = deg.iter().sum();
    let mut adj = vec![Vec::new(); c];
    for (a, b) in model.edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    let fails = |d: i64, wy: i64, hash: i64| {
        let lhs = (2 * total_w * d - 2 * wy * total_d).abs();
        let rhs = total_w * hash;
        if strict {
            lhs >= rhs
        } else {
            lhs > rhs
        }
    };
    // preorder DFS over sorted subsets gives lexicographic order
    struct St<'a, F: Fn(i64, i64, i64) -> bool> {
        c: usize,
        adj: &'a [Vec<usize>],
        deg: &'a [i64],
        w: &'a [i64],
        fails: F,
        stack: Vec<usize>,
        inside: Vec<bool>,
        checked: u64,
    }
    fn dfs<F: Fn(i64, i64, i64) -> bool>(
        s: &mut St<F>,
        start: usize,
        d: i64,
        wy: i64,
        hash: i64,
    ) -> bool {
        for v in start..s.c {
            let inner = s.adj[v].iter().filter(|&&u| s.inside[u]).count() as i64;
            let h2 = hash + s.adj[v].len() as i64 - 2 * inner;
            let (d2, w2) = (d + s.deg[v], wy + s.w[v]);
            s.stack.push(v);
            s.inside[v] = true;
            if s.stack.len() < s.c {
                s.checked += 1;
                if (s.fails)(d2, w2, h2) {
                    return true;
                }
            }
            if dfs(s, v + 1, d2, w2, h2) {
                return true;
            }
            s.stack.pop();
            s.inside[v] = false;
        }
        false
    }
    let mut st = St {
        c,
        adj: &adj,
        deg,
        w: &w,
        fails,
        stack: Vec::new(),
        inside: vec![false; c],
        checked: 0,
    };
    let found = dfs(&mut st, 0, 0, 0, 0);
    let labels = model.labels();
    let witness = found.then(|| st.stack.clone());
    Ok(GbiResult {
        holds: !found,
        witness_labels: witness
            .as_ref()
            .map(|ws| ws.iter().map(|&i| labels[i].clone()).collect()),
        witness,
        subcurves_checked: st.checked,
    })
}

/// The reduced form (n−2)w − (n−6)b − (n−4)# < 0 of the strict inequality
/// for the canonical multidegree on Σˢ, after swapping Y with its
/// complement when (n−2)w − (n−6)b < 0. `mask` selects components.
pub fn reduced_inequality(model: &DualGraph, n: usize, mask: u64) -> bool {
    let c = model.components.len();
    let full = if c == 64 { u64::MAX } else { (1u64 << c) - 1 };
    let count = |m: u64| {
        let (mut b, mut w) = (0i64, 0i64);
        for (i, comp) in model.components.iter().enumerate() {
            if m >> i & 1 == 1 {
                match comp {
                    Component::Black(_) => b += 1,
                    Component::White(_) => w += 1,
                }
            }
        }
        (b, w)
    };
    let hash = model
        .edges
        .iter()
        .filter(|e| (mask >> e.a & 1) != (mask >> e.b & 1))
        .count() as i64;
    let n = n as i64;
    let (b, w) = count(mask);
    let mut x = (n - 2) * w - (n - 6) * b;
    if x < 0 {
        let (b, w) = count(full & !mask);
        x = (n - 2) * w - (n - 6) * b;
    }
    x - (n - 4) * hash < 0
}

/// One candidate codimension-one stratum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    /// Position of the split node in the dual graph's edge list.
    pub node: usize,
    /// Vertex index of Γ at that node.
    pub index: usize,
    pub components: (String, String),
    pub lowered: String,
    pub semistable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrataReport {
    /// Candidates lowering a black neighbour.
    pub strata: Vec<Stratum>,
    /// How many of those pass the non-strict inequality.
    pub count: usize,
    pub expected: usize,
    /// Candidates lowering a white neighbour, reported separately.
    pub white_lowered: Vec<Stratum>,
}

/// Checks the divisorial setup: 3-graph, n − 2 triples, (‡) and (†).
pub fn divisorial_setup(h: &Hypergraph) -> Result<(), StabilityError> {
    let m = h
        .check_cond_m()
        .map_err(|e| StabilityError::WrongSetup(e.to_string()))?;
    if !m.holds {
        return Err(StabilityError::WrongSetup("condition (†) fails".into()));
    }
    let s = h
        .check_cond_s()
        .map_err(|e| StabilityError::WrongSetup(e.to_string()))?;
    if !s.holds {
        return Err(StabilityError::WrongSetup("condition (‡) fails".into()));
    }
    Ok(())
}

pub fn boundary_strata(h: &Hypergraph) -> Result<StrataReport, StabilityError> {
    divisorial_setup(h)?;
    let g = h.dual_graph();
    let mut strata = Vec::new();
    let mut white_lowered = Vec::new();
    for (k, e) in g.edges.iter().enumerate() {
        let model = QuasiStableModel::with_inserted(g.clone(), vec![k]);
        let labels = model.labels();
        for lower in [e.a, e.b] {
            let mut d = model.canonical_multidegree();
            d[lower] -= 1;
            let semistable = gbi_check(&model, &d, false)?.holds;
            let s = Stratum {
                node: k,
                index: e.index,
                components: (labels[e.a].clone(), labels[e.b].clone()),
                lowered: labels[lower].clone(),
                semistable,
            };
            match g.components[lower] {
                Component::Black(_) => strata.push(s),
                Component::White(_) => white_lowered.push(s),
            }
        }
    }
    let count = strata.iter().filter(|s| s.semistable).count();
    Ok(StrataReport {
        strata,
        count,
        expected: 3 * h.n - 6,
        white_lowered,
    })
}

/// A face of the Keel–Vermeire polytope: the stratum lowering component i
/// at the node shared with component j, and its normal e_i − e_j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KvFace {
    pub i: usize,
    pub j: usize,
    pub normal: [i64; 4],
    pub semistable: bool,
}

pub fn kv_polytope_faces() -> Vec<KvFace> {
    let kv = crate::generator::keel_vermeire();
    let rep = boundary_strata(&kv).expect("Keel–Vermeire is divisorial");
    let g = kv.dual_graph();
    let mut faces: Vec<KvFace> = rep
        .strata
        .iter()
        .map(|s| {
            let e = g.edges[s.node];
            let (i, j) = if g.components[e.a].label() == s.lowered {
                (e.a, e.b)
            } else {
                (e.b, e.a)
            };
            let mut normal = [0i64; 4];
            normal[i] += 1;
            normal[j] -= 1;
            KvFace {
                i: i + 1,
                j: j + 1,
                normal,
                semistable: s.semistable,
            }
        })
        .collect();
    faces.sort_by_key(|f| (f.i, f.j));
    faces
}

/// Whether the dual graph stays connected after removing any two edges;
/// otherwise the first disconnecting pair of nodes.
pub fn three_edge_connected(model: &DualGraph) -> (bool, Option<(DualEdge, DualEdge)>) {
    let (ok, w) = model.graph().three_edge_connected();
    (ok, w.map(|(i, j)| (model.edges[i], model.edges[j])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::keel_vermeire;

    #[test]
    fn kv_weights_and_stability() {
        let model = QuasiStableModel::stable(keel_vermeire().dual_graph());
        assert_eq!(omega_weights(&model).unwrap(), vec![1, 1, 1, 1]);
        let r = gbi_check(&model, &[1, 1, 1, 1], true).unwrap();
        assert!(r.holds);
        assert_eq!(r.subcurves_checked, 14);
        let r = gbi_check(&model, &[4, 0, 0, 0], false).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some(vec![0]));
    }

    #[test]
    fn inserted_component() {
        let g = keel_vermeire().dual_graph();
        let m = QuasiStableModel::with_inserted(g.clone(), vec![2]);
        assert_eq!(m.num_components(), 5);
        assert_eq!(omega_weights(&m).unwrap()[4], 0);
        assert_eq!(m.edges().len(), g.edges.len() + 1);
        assert_eq!(m.contract(), g);
    }

    #[test]
    fn kv_faces_are_a3_roots() {
        let f = kv_polytope_faces();
        assert_eq!(f.len(), 12);
        assert!(f.iter().all(|x| x.semistable));
        for x in &f {
            assert!(f
                .iter()
                .any(|y| y.normal.iter().zip(&x.normal).all(|(a, b)| a == &-b)));
        }
    }
}
