//! Point configurations on ℙ¹, the hypergraph morphisms π_Γ and π_{Γ∪{n+1}}
//! in cross-ratio coordinates, exact differential ranks, and the cycle
//! formula for v.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::exact_arith::{
    bracket, cross_ratio, random_rational, DualScalar, Field, Matrix, Mobius, ProjPoint,
    ProjectiveError, Ring, Scalar,
};
use crate::generator::{dual_hesse_index, dual_hesse_ordered_lines};
use crate::hypergraph::{Component, Hypergraph};
use crate::realization::Realization;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CrossRatioError {
    #[error("points {a} and {b} coincide on hyperedge {edge:?}")]
    Coincident {
        edge: Vec<usize>,
        a: usize,
        b: usize,
    },
    #[error("pole: {0}")]
    Pole(String),
    #[error("configuration has {got} points, {need} needed")]
    WrongSize { got: usize, need: usize },
    #[error("gauge points must be distinct")]
    BadGauge,
    #[error("free point {0} sits at infinity in the gauge")]
    InfiniteFreePoint(usize),
    #[error("not a cycle: {0}")]
    BadCycle(String),
    #[error("projection center lies on point {0}")]
    CenterOnPoint(usize),
}

impl From<ProjectiveError> for CrossRatioError {
    fn from(e: ProjectiveError) -> Self {
        CrossRatioError::Pole(e.to_string())
    }
}

/// Points 1..n on ℙ¹ (`points[i]` is point i+1) with an optional record of
/// which indices are pinned to 0, 1, ∞.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub points: Vec<ProjPoint<Scalar>>,
    pub gauge: Option<[usize; 3]>,
}

impl Configuration {
    pub fn new(points: Vec<ProjPoint<Scalar>>) -> Self {
        Configuration {
            points,
            gauge: None,
        }
    }

    pub fn from_affine(xs: &[Scalar]) -> Self {
        Self::new(xs.iter().cloned().map(ProjPoint::finite).collect())
    }

    /// n distinct random finite rationals of small height.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let mut xs: Vec<Scalar> = Vec::new();
        while xs.len() < n {
            let x = random_rational(rng);
            if !xs.contains(&x) {
                xs.push(x);
            }
        }
        Self::from_affine(&xs)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, i: usize) -> &ProjPoint<Scalar> {
        &self.points[i - 1]
    }

    pub fn apply(&self, m: &Mobius<Scalar>) -> Configuration {
        Configuration {
            points: self
                .points
                .iter()
                .map(|p| m.apply(p).normalized())
                .collect(),
            gauge: None,
        }
    }

    /// The same configuration moved so that i0, i1, i2 sit at 0, 1, ∞.
    pub fn gauged(&self, g: [usize; 3]) -> Result<Configuration, CrossRatioError> {
        let m = Mobius::normalizing(self.point(g[0]), self.point(g[1]), self.point(g[2]))
            .map_err(|_| CrossRatioError::BadGauge)?;
        let mut c = self.apply(&m);
        c.gauge = Some(g);
        Ok(c)
    }

    /// Appends one more point.
    pub fn with_point(&self, p: ProjPoint<Scalar>) -> Configuration {
        let mut c = self.clone();
        c.points.push(p);
        c
    }
}

/// Projection of a plane configuration from a center off all points.
pub fn project(real: &Realization, center: &[Scalar]) -> Result<Configuration, CrossRatioError> {
    let forms = Matrix::from_rows(vec![center.to_vec()]).kernel();
    let (l1, l2) = (&forms[0], &forms[1]);
    let dot = |l: &[Scalar], p: &[Scalar]| {
        l.iter()
            .zip(p)
            .fold(Scalar::zero(), |a, (x, y)| &a + &(x * y))
    };
    let mut pts = Vec::new();
    for (i, p) in real.points.iter().enumerate() {
        let q = ProjPoint::new(dot(l1, p), dot(l2, p))
            .map_err(|_| CrossRatioError::CenterOnPoint(i + 1))?;
        pts.push(q.normalized());
    }
    Ok(Configuration::new(pts))
}

/// Cross-ratio coordinates of ordered hyperedges: for e = (e0, e1, e2, …)
/// the values {e0, e1, e2, e_k} for k ≥ 3, concatenated.
pub fn edge_coordinates<F: Field>(
    edges: &[Vec<usize>],
    pts: &[ProjPoint<F>],
) -> Result<Vec<F>, CrossRatioError> {
    let mut out = Vec::new();
    for e in edges {
        if let Some(&v) = e.iter().find(|&&v| v == 0 || v > pts.len()) {
            return Err(CrossRatioError::WrongSize {
                got: pts.len(),
                need: v,
            });
        }
        for (i, &a) in e.iter().enumerate() {
            for &b in &e[i + 1..] {
                if pts[a - 1].same_point(&pts[b - 1]) {
                    return Err(CrossRatioError::Coincident {
                        edge: e.clone(),
                        a,
                        b,
                    });
                }
            }
        }
        let p = |k: usize| &pts[e[k] - 1];
        for k in 3..e.len() {
            out.push(cross_ratio(p(0), p(1), p(2), p(k))?.affine()?);
        }
    }
    Ok(out)
}

fn with_cone(h: &Hypergraph, cone: Option<usize>) -> Vec<Vec<usize>> {
    h.edges()
        .iter()
        .map(|e| {
            let mut e = e.clone();
            e.extend(cone);
            e
        })
        .collect()
}

/// π_Γ (or π_{Γ∪{cone}}) at a configuration, hyperedges in stored order.
pub fn pi_gamma_eval(
    h: &Hypergraph,
    cfg: &Configuration,
    cone: Option<usize>,
) -> Result<Vec<Scalar>, CrossRatioError> {
    edge_coordinates(&with_cone(h, cone), &cfg.points)
}

/// Exact rank of the differential of the ordered-edge map at `cfg`, with
/// the gauge points (default 1, 2, 3) fixed at 0, 1, ∞.
pub fn edge_map_rank(edges: &[Vec<usize>], cfg: &Configuration) -> Result<usize, CrossRatioError> {
    let g = cfg.gauge.unwrap_or([1, 2, 3]);
    let c = cfg.gauged(g)?;
    let mut pts: Vec<ProjPoint<DualScalar>> = Vec::new();
    let mut next = 0;
    for (i, p) in c.points.iter().enumerate() {
        let v = i + 1;
        let q = if v == g[0] {
            ProjPoint::finite(DualScalar::zero())
        } else if v == g[1] {
            ProjPoint::finite(DualScalar::one())
        } else if v == g[2] {
            ProjPoint::infinity()
        } else {
            let x = p
                .affine()
                .map_err(|_| CrossRatioError::InfiniteFreePoint(v))?;
            next += 1;
            ProjPoint::finite(DualScalar::variable(x, next - 1))
        };
        pts.push(q);
    }
    let vals = edge_coordinates(edges, &pts)?;
    if vals.is_empty() || next == 0 {
        return Ok(0);
    }
    Ok(Matrix::from_rows(vals.iter().map(|v| v.gradient(next)).collect()).rank())
}

pub fn jacobian_rank(
    h: &Hypergraph,
    cfg: &Configuration,
    cone: Option<usize>,
) -> Result<usize, CrossRatioError> {
    edge_map_rank(&with_cone(h, cone), cfg)
}

/// The nine ordered dual Hesse lines followed by {m,a,1,p} and {m,a,1,n},
/// whose cross-ratios are the M₀,₅ coordinates u = p′ and v = n′ in the
/// gauge 1′ = ∞, m′ = 0, a′ = 1.
pub fn dual_hesse_map_edges() -> Vec<Vec<usize>> {
    let mut e = dual_hesse_ordered_lines();
    let ix = dual_hesse_index;
    e.push(vec![ix("m"), ix("a"), ix("1"), ix("p")]);
    e.push(vec![ix("m"), ix("a"), ix("1"), ix("n")]);
    e
}

/// (w₁, …, w₉, u, v).
pub fn dual_hesse_map(cfg: &Configuration) -> Result<Vec<Scalar>, CrossRatioError> {
    edge_coordinates(&dual_hesse_map_edges(), &cfg.points)
}

pub fn dual_hesse_map_rank(cfg: &Configuration) -> Result<usize, CrossRatioError> {
    edge_map_rank(&dual_hesse_map_edges(), cfg)
}

/// A closed chain γ_1 → … → γ_s of hypergraph lines with a_i = γ_i ∩ γ_{i+1};
/// `components[i]` contains `points[i-1]` and `points[i]` (indices mod s),
/// `b[i]` is another singular point of that component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub points: Vec<usize>,
    /// 0-based hyperedge positions.
    pub components: Vec<usize>,
    pub b: Vec<usize>,
}

impl Cycle {
    /// Builds the cycle through the given points, each component the first
    /// hyperedge containing consecutive points, with least b-choices.
    pub fn from_points(h: &Hypergraph, points: &[usize]) -> Result<Cycle, CrossRatioError> {
        let s = points.len();
        if s < 2 {
            return Err(CrossRatioError::BadCycle("need at least two points".into()));
        }
        let comps = (0..s)
            .map(|i| {
                let (p, q) = (points[(i + s - 1) % s], points[i]);
                h.edges()
                    .iter()
                    .position(|e| e.contains(&p) && e.contains(&q))
                    .ok_or_else(|| {
                        CrossRatioError::BadCycle(format!("no hyperedge through {p} and {q}"))
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::with_components(h, points.to_vec(), comps)
    }

    pub fn with_components(
        h: &Hypergraph,
        points: Vec<usize>,
        components: Vec<usize>,
    ) -> Result<Cycle, CrossRatioError> {
        let s = points.len();
        let val = h.valences();
        let mut b = Vec::new();
        for i in 0..s {
            let (p, q) = (points[(i + s - 1) % s], points[i]);
            let e = &h.edges()[components[i]];
            if !(e.contains(&p) && e.contains(&q)) {
                return Err(CrossRatioError::BadCycle(format!(
                    "hyperedge {e:?} misses {p} or {q}"
                )));
            }
            let bi = e
                .iter()
                .copied()
                .find(|&x| x != p && x != q && val[x] >= 2)
                .ok_or_else(|| CrossRatioError::BadCycle(format!("no b-choice on {e:?}")))?;
            b.push(bi);
        }
        Ok(Cycle {
            points,
            components,
            b,
        })
    }

    /// Replaces the b-choices after checking them.
    pub fn with_b(&self, h: &Hypergraph, b: Vec<usize>) -> Result<Cycle, CrossRatioError> {
        let s = self.points.len();
        let val = h.valences();
        for i in 0..s {
            let e = &h.edges()[self.components[i]];
            let (p, q) = (self.points[(i + s - 1) % s], self.points[i]);
            if !e.contains(&b[i]) || b[i] == p || b[i] == q || val[b[i]] < 2 {
                return Err(CrossRatioError::BadCycle(format!(
                    "invalid b-choice {} on {e:?}",
                    b[i]
                )));
            }
        }
        Ok(Cycle { b, ..self.clone() })
    }

    /// Signed multiplicities on the dual-graph edges of Σˢ.
    pub fn edge_vector(&self, h: &Hypergraph) -> Vec<i64> {
        let dg = h.dual_graph();
        let mut v = vec![0i64; dg.edges.len()];
        let s = self.points.len();
        let node = |comp: usize| {
            dg.components
                .iter()
                .position(|c| *c == Component::Black(comp))
                .unwrap()
        };
        let white = |i: usize| dg.components.iter().position(|c| *c == Component::White(i));
        let mut step = |from: usize, to: usize, index: usize| {
            let k = dg
                .edges
                .iter()
                .position(|e| {
                    e.index == index && ((e.a == from && e.b == to) || (e.a == to && e.b == from))
                })
                .expect("dual edge");
            v[k] += if dg.edges[k].a == from { 1 } else { -1 };
        };
        for i in 0..s {
            let (from, to) = (node(self.components[i]), node(self.components[(i + 1) % s]));
            let a = self.points[i];
            match white(a) {
                Some(w) => {
                    step(from, w, a);
                    step(w, to, a);
                }
                None => step(from, to, a),
            }
        }
        v
    }
}

/// g cycles from the complement of a spanning tree of the dual graph of Σˢ,
/// white vertices collapsed to their index.
pub fn cycle_basis(h: &Hypergraph) -> Vec<Cycle> {
    let dg = h.dual_graph();
    let graph = dg.graph();
    let tree = graph.spanning_tree();
    let nv = dg.components.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for &k in &tree {
        let e = dg.edges[k];
        adj[e.a].push((e.b, k));
        adj[e.b].push((e.a, k));
    }
    let tree_path = |from: usize, to: usize| -> Vec<usize> {
        // vertices along the unique tree path
        let mut prev = vec![usize::MAX; nv];
        let mut queue = std::collections::VecDeque::from([from]);
        prev[from] = from;
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &adj[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![to];
        while *path.last().unwrap() != from {
            path.push(prev[*path.last().unwrap()]);
        }
        path.reverse();
        path
    };
    let mut out = Vec::new();
    for (k, e) in dg.edges.iter().enumerate() {
        if tree.contains(&k) {
            continue;
        }
        // closed walk: tree path b → … → a, then the edge a → b
        let walk = tree_path(e.b, e.a);
        let mut verts = walk.clone();
        verts.push(e.b);
        let start = verts
            .iter()
            .position(|&x| matches!(dg.components[x], Component::Black(_)))
            .unwrap();
        let m = verts.len() - 1;
        let cyc: Vec<usize> = (0..m).map(|i| verts[(start + i) % m]).collect();
        let mut comps = Vec::new();
        let mut points = Vec::new();
        for (i, &x) in cyc.iter().enumerate() {
            match dg.components[x] {
                Component::Black(j) => comps.push(j),
                Component::White(idx) => {
                    points.push(idx);
                    continue;
                }
            }
            let y = cyc[(i + 1) % m];
            if let Component::Black(_) = dg.components[y] {
                let d = dg
                    .edges
                    .iter()
                    .enumerate()
                    .find(|(kk, d)| {
                        ((d.a == x && d.b == y) || (d.a == y && d.b == x))
                            && (m > 2 || *kk == k || tree.contains(kk))
                    })
                    .map(|(_, d)| *d)
                    .expect("edge between consecutive blacks");
                points.push(d.index);
            }
        }
        // points[i] joins comps[i] and comps[i+1]
        out.push(Cycle::with_components(h, points, comps).expect("basis cycle"));
    }
    out
}

/// Π_i (x_{b_i} − x_{a_i}) / (x_{b_i} − x_{a_{i−1}}), computed with brackets.
pub fn v_eval(cycle: &Cycle, cfg: &Configuration) -> Result<Scalar, CrossRatioError> {
    let s = cycle.points.len();
    let (mut num, mut den) = (Scalar::one(), Scalar::one());
    for i in 0..s {
        let b = cfg.point(cycle.b[i]);
        num = &num * &bracket(b, cfg.point(cycle.points[i]));
        den = &den * &bracket(b, cfg.point(cycle.points[(i + s - 1) % s]));
    }
    if den.is_zero() {
        return Err(CrossRatioError::Pole(format!("cycle {:?}", cycle.points)));
    }
    Ok(&num / &den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::keel_vermeire;
    use rand::SeedableRng;

    #[test]
    fn pinned_fourth_point() {
        let h = Hypergraph::new(4, vec![vec![1, 2, 3, 4]]);
        let lam = Scalar::from_frac(-5, 7);
        let cfg = Configuration::new(vec![
            ProjPoint::finite(Scalar::zero()),
            ProjPoint::finite(Scalar::one()),
            ProjPoint::infinity(),
            ProjPoint::finite(lam.clone()),
        ]);
        assert_eq!(pi_gamma_eval(&h, &cfg, None).unwrap(), vec![lam]);
    }

    #[test]
    fn kv_basis_size_and_first_cycle() {
        let kv = keel_vermeire();
        assert_eq!(cycle_basis(&kv).len(), 3);
        let c = Cycle::from_points(&kv, &[1, 5, 2]).unwrap();
        assert_eq!(c.b, vec![3, 6, 4]);
        let tree = Hypergraph::new(5, vec![vec![1, 2, 3], vec![3, 4, 5]]);
        assert!(cycle_basis(&tree).is_empty());
    }

    #[test]
    fn kv_cone_rank() {
        let kv = keel_vermeire();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let cfg = Configuration::random(7, &mut rng);
        assert_eq!(pi_gamma_eval(&kv, &cfg, Some(7)).unwrap().len(), 4);
        assert_eq!(jacobian_rank(&kv, &cfg, Some(7)).unwrap(), 4);
    }
}
