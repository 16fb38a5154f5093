//! Realizations of hypergraphs as point configurations in ℙ² and ℙ³ with
//! every hyperedge on a line, local dimension of the realization space at a
//! witness, and the combinatorial certificate for W³ = ∅.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exact_arith::{det_generic, random_rational, DualScalar, Matrix, Poly1, Ring, Scalar};
use crate::generator::{ceva_points_and_lines, dual_hesse, find_isomorphism, hesse};
use crate::hypergraph::Hypergraph;

pub const DEFAULT_BUDGET: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Cyclotomic(u32),
}

impl FieldSpec {
    /// Cyclotomic order, 1 for ℚ.
    pub fn order(&self) -> u32 {
        match self {
            FieldSpec::Rational => 1,
            FieldSpec::Cyclotomic(m) => *m,
        }
    }

    /// Brings a scalar into the power basis of this field.
    pub fn embed(&self, x: &Scalar) -> Scalar {
        match self {
            FieldSpec::Rational => x.clone(),
            FieldSpec::Cyclotomic(m) => x.embed(*m).expect("scalar lies in the field"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "q"),
            FieldSpec::Cyclotomic(m) => write!(f, "cyclo:{m}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim().to_lowercase();
        if s == "q" || s == "rational" {
            return Ok(FieldSpec::Rational);
        }
        match s.strip_prefix("cyclo:").map(str::parse::<u32>) {
            Some(Ok(m)) if m <= 2 => Ok(FieldSpec::Rational),
            Some(Ok(m)) => Ok(FieldSpec::Cyclotomic(m)),
            _ => Err(format!("unknown field {s:?}; use q or cyclo:M")),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RealizationError {
    #[error("no realization found in {attempts} attempts (inconclusive){}", if *.field_too_small { "; forced coordinates left the field, try a larger one" } else { "" })]
    NotFound {
        attempts: usize,
        field_too_small: bool,
    },
    #[error("ambient dimension must be 2 or 3, got {0}")]
    BadAmbient(usize),
    #[error("chart coordinate vanishes at vertex {0}")]
    ChartDegenerate(usize),
    #[error("not a realization: {0:?}")]
    Invalid(Vec<String>),
}

/// Homogeneous coordinates in ℙʳ for vertices 1..n (`points[i]` is vertex i+1).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Realization {
    pub r: usize,
    pub field: FieldSpec,
    pub points: Vec<Vec<Scalar>>,
}

fn normalize_point(p: &[Scalar]) -> Vec<Scalar> {
    match p.iter().find(|c| !c.is_zero()) {
        Some(c) => {
            let inv = c.try_inv().expect("nonzero");
            p.iter().map(|x| x * &inv).collect()
        }
        None => p.to_vec(),
    }
}

impl Realization {
    pub fn new(r: usize, field: FieldSpec, points: Vec<Vec<Scalar>>) -> Self {
        let points = points
            .iter()
            .map(|p| normalize_point(p).iter().map(|x| field.embed(x)).collect())
            .collect();
        Realization { r, field, points }
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Coordinates of vertex v (1-based).
    pub fn point(&self, v: usize) -> &[Scalar] {
        &self.points[v - 1]
    }

    /// Rows are the listed vertices (1-based).
    pub fn matrix(&self, vertices: &[usize]) -> Matrix {
        Matrix::from_rows(vertices.iter().map(|&v| self.point(v).to_vec()).collect())
    }

    pub fn collinear(&self, vertices: &[usize]) -> bool {
        self.matrix(vertices).rank() <= 2
    }

    /// Exact check of every defining property; returns the failures.
    pub fn check(&self, h: &Hypergraph) -> Vec<String> {
        let mut bad = Vec::new();
        if self.n() != h.n {
            bad.push(format!("{} points for {} vertices", self.n(), h.n));
            return bad;
        }
        if self.points.iter().any(|p| p.len() != self.r + 1) {
            bad.push("coordinate vector of wrong length".into());
            return bad;
        }
        for v in 1..=h.n {
            if self.point(v).iter().all(|c| c.is_zero()) {
                bad.push(format!("vertex {v} is the zero vector"));
            }
        }
        for a in 1..=h.n {
            for b in a + 1..=h.n {
                if self.matrix(&[a, b]).rank() < 2 {
                    bad.push(format!("vertices {a} and {b} coincide"));
                }
            }
        }
        for e in h.edges() {
            if !self.collinear(e) {
                bad.push(format!("hyperedge {e:?} is not collinear"));
            }
        }
        let all: Vec<usize> = (1..=h.n).collect();
        if self.matrix(&all).rank() != self.r + 1 {
            bad.push(format!("points do not span P^{}", self.r));
        }
        bad
    }

    /// Maximal collinear subsets with at least two points, each sorted, in
    /// lexicographic order (every pair lies in exactly one).
    pub fn lines(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                if out.iter().any(|l| l.contains(&a) && l.contains(&b)) {
                    continue;
                }
                let l: Vec<usize> = (1..=n)
                    .filter(|&c| c == a || c == b || self.collinear(&[a, b, c]))
                    .collect();
                out.push(l);
            }
        }
        out.sort();
        out
    }

    /// Applies a vertex relabeling `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Realization {
        let mut pts = self.points.clone();
        for v in 1..=self.n() {
            pts[perm[v] - 1] = self.points[v - 1].clone();
        }
        Realization {
            r: self.r,
            field: self.field,
            points: pts,
        }
    }
}

/// How a vertex was placed: the pairs of already placed vertices spanning
/// the lines through it, or `frame` for the initial gauge points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Placement {
    pub vertex: usize,
    pub frame: bool,
    pub lines: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealizationReport {
    pub realization: Realization,
    pub attempts: usize,
    pub placement: Vec<Placement>,
}

/// Initial points with no three on a common hyperedge (four in ℙ², three in
/// ℙ³), then greedily the vertex lying on the most already determined lines,
/// ties broken by index.
pub fn placement_order(h: &Hypergraph, r: usize) -> Vec<Placement> {
    let frame_size = if r == 2 { 4 } else { 3 };
    let mut placed: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for v in 1..=h.n {
        if placed.len() == frame_size {
            break;
        }
        let ok = h
            .edges()
            .iter()
            .all(|e| e.iter().filter(|x| **x == v || placed.contains(x)).count() <= 2);
        if ok {
            placed.push(v);
            out.push(Placement {
                vertex: v,
                frame: true,
                lines: vec![],
            });
        }
    }
    let lines_through = |x: usize, placed: &[usize]| -> Vec<(usize, usize)> {
        h.edges()
            .iter()
            .filter(|e| e.contains(&x))
            .filter_map(|e| {
                let on: Vec<usize> = e.iter().copied().filter(|y| placed.contains(y)).collect();
                (on.len() >= 2).then(|| (on[0], on[1]))
            })
            .collect()
    };
    while placed.len() < h.n {
        let mut best: Option<(usize, Vec<(usize, usize)>)> = None;
        for x in 1..=h.n {
            if placed.contains(&x) {
                continue;
            }
            let l = lines_through(x, &placed);
            if best.as_ref().is_none_or(|(_, b)| l.len() > b.len()) {
                best = Some((x, l));
            }
        }
        let (x, l) = best.expect("unplaced vertex");
        placed.push(x);
        out.push(Placement {
            vertex: x,
            frame: false,
            lines: l,
        });
    }
    out
}

type P = Poly1<Scalar>;

enum Fail {
    Inconsistent,
    FieldTooSmall,
    Degenerate,
}

struct Attempt<'a> {
    r: usize,
    field: FieldSpec,
    rng: &'a mut ChaCha8Rng,
    pts: Vec<Option<Vec<P>>>,
    pending: bool,
    eqs: Vec<P>,
}

fn cst(c: Scalar) -> P {
    P::constant("t", c)
}

fn minors3(rows: &[&Vec<P>], cols: usize) -> Vec<P> {
    let mut out = Vec::new();
    for a in 0..cols {
        for b in a + 1..cols {
            for c in b + 1..cols {
                let m: Vec<Vec<P>> = rows
                    .iter()
                    .map(|r| vec![r[a].clone(), r[b].clone(), r[c].clone()])
                    .collect();
                out.push(det_generic(&m));
            }
        }
    }
    out
}

fn det_rows(rows: &[&Vec<P>]) -> P {
    let m: Vec<Vec<P>> = rows.iter().map(|r| r.to_vec()).collect();
    det_generic(&m)
}

/// Divides out the polynomial content and makes the leading coefficient of
/// the first nonzero coordinate 1.
fn tidy(p: Vec<P>) -> Vec<P> {
    let g = p.iter().fold(P::zero(), |acc, c| acc.gcd(c));
    let p: Vec<P> = if g.degree().unwrap_or(0) > 0 {
        p.iter().map(|c| c.div_rem(&g).0).collect()
    } else {
        p
    };
    match p
        .iter()
        .find(|c| !c.is_zero())
        .and_then(|c| c.leading().cloned())
    {
        Some(l) => {
            let inv = cst(l.try_inv().expect("nonzero"));
            p.iter().map(|c| c.times(&inv)).collect()
        }
        None => p,
    }
}

impl Attempt<'_> {
    fn random_vec(&mut self) -> Vec<P> {
        (0..=self.r)
            .map(|_| cst(random_rational(self.rng)))
            .collect()
    }

    fn point(&self, v: usize) -> &Vec<P> {
        self.pts[v - 1].as_ref().expect("placed")
    }

    fn push_eq(&mut self, e: P) -> Result<(), Fail> {
        if e.is_zero() {
            return Ok(());
        }
        if e.is_constant() {
            return Err(Fail::Inconsistent);
        }
        self.eqs.push(e);
        Ok(())
    }

    fn degeneracy_polys(&self) -> Result<Vec<P>, Fail> {
        let placed: Vec<usize> = (1..=self.pts.len())
            .filter(|&v| self.pts[v - 1].is_some())
            .collect();
        let mut out = Vec::new();
        for (i, &a) in placed.iter().enumerate() {
            for &b in &placed[i + 1..] {
                let (pa, pb) = (self.point(a), self.point(b));
                if pa.iter().chain(pb.iter()).all(|c| c.is_constant()) {
                    continue;
                }
                let mut g = P::zero();
                for x in 0..=self.r {
                    for y in x + 1..=self.r {
                        g = g.gcd(&pa[x].times(&pb[y]).minus(&pa[y].times(&pb[x])));
                    }
                }
                if g.is_zero() {
                    return Err(Fail::Degenerate);
                }
                if g.degree().unwrap_or(0) > 0 {
                    out.push(g);
                }
            }
        }
        Ok(out)
    }

    /// Fixes the pending parameter from the collected equations, or at
    /// random when there are none.
    fn resolve(&mut self) -> Result<(), Fail> {
        if !self.pending {
            return Ok(());
        }
        self.pending = false;
        let eqs = std::mem::take(&mut self.eqs);
        let t = if eqs.is_empty() {
            random_rational(self.rng)
        } else {
            let mut g = eqs.iter().fold(P::zero(), |acc, e| acc.gcd(e));
            if g.degree() == Some(0) {
                return Err(Fail::Inconsistent);
            }
            for d in self.degeneracy_polys()? {
                g = g.saturate(&d);
            }
            match g.degree() {
                Some(1) => -&g.coeff(0),
                Some(2) => {
                    let (b, c) = (g.coeff(1), g.coeff(0));
                    let disc = self
                        .field
                        .embed(&(&(&b * &b) - &(&Scalar::from_int(4) * &c)));
                    let s = disc.sqrt().ok_or(Fail::FieldTooSmall)?;
                    let s = if self.rng.gen_bool(0.5) { s } else { -&s };
                    &(&s - &b) / &Scalar::from_int(2)
                }
                Some(0) | None => return Err(Fail::Inconsistent),
                Some(_) => return Err(Fail::FieldTooSmall),
            }
        };
        for p in self.pts.iter_mut().flatten() {
            *p = tidy(p.iter().map(|c| cst(c.eval(&t))).collect());
        }
        Ok(())
    }

    fn place(&mut self, pl: &Placement) -> Result<(), Fail> {
        let r = self.r;
        let new = if pl.frame {
            self.resolve()?;
            self.random_vec()
        } else if pl.lines.len() <= 1 {
            self.resolve()?;
            let (a, b) = match pl.lines.first() {
                Some(&(e, f)) => (self.point(e).clone(), self.point(f).clone()),
                None => (self.random_vec(), self.random_vec()),
            };
            self.pending = true;
            let t = P::x("t");
            a.iter()
                .zip(&b)
                .map(|(x, y)| x.plus(&y.times(&t)))
                .collect()
        } else {
            let (a, b) = pl.lines[0];
            let (c, d) = pl.lines[1];
            let (pa, pb, pc, pd) = (
                self.point(a).clone(),
                self.point(b).clone(),
                self.point(c).clone(),
                self.point(d).clone(),
            );
            let (ka, kb) = if r == 2 {
                (det_rows(&[&pb, &pc, &pd]), det_rows(&[&pa, &pc, &pd]))
            } else {
                self.push_eq(det_rows(&[&pa, &pb, &pc, &pd]))?;
                let z = self.random_vec();
                (
                    det_rows(&[&pb, &pc, &pd, &z]),
                    det_rows(&[&pa, &pc, &pd, &z]),
                )
            };
            let x: Vec<P> = pa
                .iter()
                .zip(&pb)
                .map(|(u, v)| ka.times(u).minus(&kb.times(v)))
                .collect();
            if x.iter().all(|c| c.is_zero()) {
                return Err(Fail::Degenerate);
            }
            for &(e, f) in &pl.lines[2..] {
                let (pe, pf) = (self.point(e).clone(), self.point(f).clone());
                for m in minors3(&[&x, &pe, &pf], r + 1) {
                    self.push_eq(m)?;
                }
            }
            x
        };
        self.pts[pl.vertex - 1] = Some(tidy(new));
        Ok(())
    }
}

/// Searches for a realization of Γ in ℙʳ over `field`. Failure after the
/// budget is inconclusive.
pub fn realize(
    h: &Hypergraph,
    r: usize,
    field: FieldSpec,
    seed: u64,
    budget: usize,
) -> Result<RealizationReport, RealizationError> {
    if r != 2 && r != 3 {
        return Err(RealizationError::BadAmbient(r));
    }
    let order = placement_order(h, r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut field_too_small = false;
    for attempt in 1..=budget {
        let mut at = Attempt {
            r,
            field,
            rng: &mut rng,
            pts: vec![None; h.n],
            pending: false,
            eqs: Vec::new(),
        };
        let res = order
            .iter()
            .try_for_each(|pl| at.place(pl))
            .and_then(|_| at.resolve());
        match res {
            Err(Fail::FieldTooSmall) => field_too_small = true,
            Err(_) => {}
            Ok(()) => {
                let points: Vec<Vec<Scalar>> = at
                    .pts
                    .iter()
                    .map(|p| {
                        p.as_ref()
                            .expect("placed")
                            .iter()
                            .map(|c| c.coeff(0))
                            .collect()
                    })
                    .collect();
                let real = Realization::new(r, field, points);
                if real.check(h).is_empty() {
                    return Ok(RealizationReport {
                        realization: real,
                        attempts: attempt,
                        placement: order,
                    });
                }
            }
        }
    }
    Err(RealizationError::NotFound {
        attempts: budget,
        field_too_small,
    })
}

/// Dimension of the realization space at a witness, from the exact rank of
/// the Jacobian of all 3×3 minors of every hyperedge in affine charts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalDimension {
    pub variables: usize,
    pub constraints: usize,
    pub rank: usize,
    /// Local dimension at the witness of the space of point configurations.
    pub solution_dim: i64,
    /// `solution_dim` minus dim PGL_{r+1}.
    pub moduli_dim: i64,
    pub chart: Vec<usize>,
}

/// The last nonzero coordinate of each point.
pub fn default_chart(real: &Realization) -> Vec<usize> {
    real.points
        .iter()
        .map(|p| p.iter().rposition(|c| !c.is_zero()).unwrap_or(0))
        .collect()
}

pub fn local_dimension(
    real: &Realization,
    h: &Hypergraph,
) -> Result<LocalDimension, RealizationError> {
    local_dimension_in_chart(real, h, &default_chart(real))
}

/// `chart[i]` is the coordinate of vertex i+1 set to 1.
pub fn local_dimension_in_chart(
    real: &Realization,
    h: &Hypergraph,
    chart: &[usize],
) -> Result<LocalDimension, RealizationError> {
    let bad = real.check(h);
    if !bad.is_empty() {
        return Err(RealizationError::Invalid(bad));
    }
    let r = real.r;
    let mut next = 0;
    let mut vars: Vec<Vec<DualScalar>> = Vec::new();
    for (i, p) in real.points.iter().enumerate() {
        let c = chart[i];
        let inv = p[c]
            .try_inv()
            .map_err(|_| RealizationError::ChartDegenerate(i + 1))?;
        let row = (0..=r)
            .map(|k| {
                let v = &p[k] * &inv;
                if k == c {
                    DualScalar::constant(v)
                } else {
                    next += 1;
                    DualScalar::variable(v, next - 1)
                }
            })
            .collect();
        vars.push(row);
    }
    let nvars = next;
    let mut rows = Vec::new();
    for e in h.edges() {
        for (ia, &a) in e.iter().enumerate() {
            for (ib, &b) in e.iter().enumerate().skip(ia + 1) {
                for &c in &e[ib + 1..] {
                    for m in minors3_dual(&[&vars[a - 1], &vars[b - 1], &vars[c - 1]], r + 1) {
                        debug_assert!(m.value.is_zero());
                        rows.push(m.gradient(nvars));
                    }
                }
            }
        }
    }
    let constraints = rows.len();
    let rank = if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(rows).rank()
    };
    let solution_dim = nvars as i64 - rank as i64;
    let pgl = ((r + 1) * (r + 1) - 1) as i64;
    Ok(LocalDimension {
        variables: nvars,
        constraints,
        rank,
        solution_dim,
        moduli_dim: solution_dim - pgl,
        chart: chart.to_vec(),
    })
}

fn minors3_dual(rows: &[&Vec<DualScalar>], cols: usize) -> Vec<DualScalar> {
    let mut out = Vec::new();
    for a in 0..cols {
        for b in a + 1..cols {
            for c in b + 1..cols {
                let m: Vec<Vec<DualScalar>> = rows
                    .iter()
                    .map(|r| vec![r[a].clone(), r[b].clone(), r[c].clone()])
                    .collect();
                out.push(det_generic(&m));
            }
        }
    }
    out
}

/// Whether the realization space found over `field` has local moduli
/// dimension 0 at the witness.
pub fn rigidity(
    h: &Hypergraph,
    field: FieldSpec,
    seed: u64,
) -> Result<(bool, LocalDimension), RealizationError> {
    let rep = realize(h, 2, field, seed, DEFAULT_BUDGET)?;
    let d = local_dimension(&rep.realization, h)?;
    Ok((d.moduli_dim == 0, d))
}

/// A proof that every image in ℙ³ lies in a plane: a hyperedge and a point
/// off it span a plane, and any hyperedge meeting the plane's point set
/// twice lies in it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct W3Certificate {
    pub holds: bool,
    /// 0-based base hyperedge.
    pub base_edge: Option<usize>,
    pub base_point: Option<usize>,
    /// 0-based hyperedges in the order they were absorbed.
    pub order: Vec<usize>,
}

pub fn w3_empty_certificate(h: &Hypergraph) -> W3Certificate {
    let edges = h.edges();
    let covered: Vec<usize> = (1..=h.n)
        .filter(|v| edges.iter().any(|e| e.contains(v)))
        .collect();
    for (j, e) in edges.iter().enumerate() {
        for &x in &covered {
            if e.contains(&x) {
                continue;
            }
            let mut inside = vec![false; h.n + 1];
            for &v in e {
                inside[v] = true;
            }
            inside[x] = true;
            let mut absorbed = vec![false; edges.len()];
            absorbed[j] = true;
            let mut order = vec![j];
            let mut changed = true;
            while changed {
                changed = false;
                for (k, f) in edges.iter().enumerate() {
                    if !absorbed[k] && f.iter().filter(|&&v| inside[v]).count() >= 2 {
                        absorbed[k] = true;
                        order.push(k);
                        for &v in f {
                            inside[v] = true;
                        }
                        changed = true;
                    }
                }
            }
            if absorbed.iter().all(|&a| a) {
                return W3Certificate {
                    holds: true,
                    base_edge: Some(j),
                    base_point: Some(x),
                    order,
                };
            }
        }
    }
    W3Certificate {
        holds: false,
        base_edge: None,
        base_point: None,
        order: vec![],
    }
}

/// Γ′: the two hyperedges through a valence-2 vertex v removed, and v
/// deleted with later indices shifted down.
pub fn gamma_prime(h: &Hypergraph, v: usize) -> Option<Hypergraph> {
    let through: Vec<usize> = (0..h.num_edges())
        .filter(|&j| h.edges()[j].contains(&v))
        .collect();
    if through.len() != 2 {
        return None;
    }
    let rest = h.without_edges(&through);
    let shift = |i: usize| if i > v { i - 1 } else { i };
    Some(Hypergraph::new(
        h.n - 1,
        rest.edges()
            .iter()
            .map(|e| e.iter().map(|&i| shift(i)).collect())
            .collect(),
    ))
}

/// The W-conditions used to filter (†) classes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WFilterReport {
    /// A realization in ℙ² over ℚ was found.
    pub w2_found: bool,
    /// The first valence-2 vertex v whose Γ′ carries a W³ certificate.
    pub gamma_prime_vertex: Option<usize>,
    /// Certificate for Γ minus each hyperedge.
    pub extra_cond: Vec<bool>,
    pub passes: bool,
}

pub fn w_filter(h: &Hypergraph, seed: u64) -> WFilterReport {
    let w2_found = realize(h, 2, FieldSpec::Rational, seed, DEFAULT_BUDGET).is_ok();
    let val = h.valences();
    let gamma_prime_vertex = (1..=h.n)
        .filter(|&v| val[v] == 2)
        .find(|&v| gamma_prime(h, v).is_some_and(|g| w3_empty_certificate(&g).holds));
    let extra_cond: Vec<bool> = (0..h.num_edges())
        .map(|a| w3_empty_certificate(&h.without_edges(&[a])).holds)
        .collect();
    let passes = w2_found && gamma_prime_vertex.is_some() && extra_cond.iter().all(|&b| b);
    WFilterReport {
        w2_found,
        gamma_prime_vertex,
        extra_cond,
        passes,
    }
}

/// The nine flexes of x³ + y³ + z³ over ℚ(ω), labeled to match the AG(2,3)
/// hypergraph of [`hesse`].
pub fn hesse_realization() -> Realization {
    let w = Scalar::omega();
    let (o, l) = (Scalar::zero(), Scalar::one());
    let mut pts = Vec::new();
    for k in 0..3 {
        let c = -&w.pow(k);
        pts.push(vec![o.clone(), l.clone(), c.clone()]);
        pts.push(vec![c.clone(), o.clone(), l.clone()]);
        pts.push(vec![l.clone(), c, o.clone()]);
    }
    let raw = Realization::new(2, FieldSpec::Cyclotomic(3), pts);
    let lines: Vec<Vec<usize>> = raw.lines().into_iter().filter(|l| l.len() >= 3).collect();
    let phi = find_isomorphism(&Hypergraph::new(9, lines), &hesse()).expect("flexes form AG(2,3)");
    raw.relabel(&phi)
}

/// Ceva(3) points over ℚ(ω), labeled as the dual Hesse vertices
/// 1,2,3,a,b,c,α,β,γ,m,n,p.
pub fn dual_hesse_realization() -> Realization {
    // conjugated so that every w-value is −ω² rather than −ω
    let (points, _) = ceva_points_and_lines(3);
    let points = points
        .iter()
        .map(|p| p.iter().map(|x| x.galois(2)).collect())
        .collect();
    let raw = Realization::new(2, FieldSpec::Cyclotomic(3), points);
    let incidence = crate::generator::ceva(3).expect("q = 3");
    let phi = find_isomorphism(&incidence, &dual_hesse())
        .expect("Ceva(3) is the dual Hesse configuration");
    raw.relabel(&phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::keel_vermeire;

    #[test]
    fn field_spec_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!(
            "cyclo:3".parse::<FieldSpec>().unwrap(),
            FieldSpec::Cyclotomic(3)
        );
        assert!("r".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn kv_is_rigid() {
        let kv = keel_vermeire();
        let rep = realize(&kv, 2, FieldSpec::Rational, 1, DEFAULT_BUDGET).unwrap();
        assert!(rep.realization.check(&kv).is_empty());
        let d = local_dimension(&rep.realization, &kv).unwrap();
        assert_eq!(d.moduli_dim, 0);
    }

    #[test]
    fn named_coordinates_are_realizations() {
        assert!(hesse_realization().check(&hesse()).is_empty());
        assert!(dual_hesse_realization().check(&dual_hesse()).is_empty());
    }

    #[test]
    fn certificate_for_small_gamma_prime() {
        let h = Hypergraph::new(6, vec![vec![1, 2, 3], vec![2, 4, 5], vec![3, 4, 6]]);
        let c = w3_empty_certificate(&h);
        assert!(c.holds);
        assert_eq!(c.order.len(), 3);
    }
}
