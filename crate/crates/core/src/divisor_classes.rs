//! Boundary pull-backs to blown-up planes inside M̄₀,ₙ, the class of the
//! exceptional conic, H-degrees, and the Keel–Vermeire divisor.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::exact_arith::Matrix;
use crate::realization::Realization;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DivisorError {
    #[error("subset {0:?} is not a boundary label for n = {1}")]
    BadLabel(Vec<usize>, usize),
    #[error("a conic passes through all points")]
    ConicThroughAll,
    #[error("points {0:?} do not lie on a unique smooth conic")]
    NoConic(Vec<usize>),
    #[error("the conic also passes through point {0}")]
    ExtraPointOnConic(usize),
    #[error("expected 5 distinct points")]
    NotFive,
    #[error("realization is not in the plane")]
    NotPlanar,
}

/// δ_I = δ_{Iᶜ}, stored as the side without the anchor n.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryLabel {
    n: usize,
    set: Vec<usize>,
}

impl BoundaryLabel {
    pub fn new(n: usize, subset: &[usize]) -> Result<Self, DivisorError> {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() < 2 || s.len() + 2 > n || s.iter().any(|&x| x == 0 || x > n) {
            return Err(DivisorError::BadLabel(subset.to_vec(), n));
        }
        if s.contains(&n) {
            s = (1..=n).filter(|x| !s.contains(x)).collect();
        }
        Ok(BoundaryLabel { n, set: s })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&self) -> &[usize] {
        &self.set
    }

    pub fn complement(&self) -> Vec<usize> {
        (1..=self.n).filter(|x| !self.set.contains(x)).collect()
    }

    /// The smaller side, used for display; ties keep the stored side.
    pub fn short_side(&self) -> Vec<usize> {
        if 2 * self.set.len() > self.n {
            self.complement()
        } else {
            self.set.clone()
        }
    }

    /// Displays with the given vertex names.
    pub fn named(&self, names: &[&str]) -> String {
        self.short_side()
            .iter()
            .map(|&v| names[v - 1])
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for BoundaryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.short_side().iter().map(|v| v.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl Serialize for BoundaryLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Intersection numbers with boundary divisors, i.e. coefficients on the
/// formal dual classes Δ_I.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    #[serde(rename = "Delta")]
    pub delta: BTreeMap<BoundaryLabel, i64>,
}

impl CurveClass {
    pub fn add(&mut self, label: BoundaryLabel, c: i64) {
        let e = self.delta.entry(label.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.delta.remove(&label);
        }
    }

    pub fn coefficient(&self, label: &BoundaryLabel) -> i64 {
        self.delta.get(label).copied().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.delta.len()
    }
}

/// Pull-back of δ_I to Bl ℙ² under the projection embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Pullback {
    /// proper transform of the configuration line through these points
    Line(Vec<usize>),
    /// exceptional curve over this point
    Exceptional(usize),
    Zero,
}

fn veronese_rank(real: &Realization, vertices: &[usize]) -> usize {
    let rows = vertices
        .iter()
        .map(|&v| {
            let p = real.point(v);
            vec![
                &p[0] * &p[0],
                &p[0] * &p[1],
                &p[0] * &p[2],
                &p[1] * &p[1],
                &p[1] * &p[2],
                &p[2] * &p[2],
            ]
        })
        .collect();
    Matrix::from_rows(rows).rank()
}

/// True when some (possibly reducible) conic passes through every point.
pub fn conic_through_all(real: &Realization) -> bool {
    let all: Vec<usize> = (1..=real.n()).collect();
    veronese_rank(real, &all) < 6
}

pub fn kapranov_pullback(
    real: &Realization,
    label: &BoundaryLabel,
) -> Result<Pullback, DivisorError> {
    if real.r != 2 {
        return Err(DivisorError::NotPlanar);
    }
    if conic_through_all(real) {
        return Err(DivisorError::ConicThroughAll);
    }
    let (s, c) = (label.set().to_vec(), label.complement());
    let lines = real.lines();
    for side in [&s, &c] {
        if let Some(l) = lines.iter().find(|l| *l == side) {
            return Ok(Pullback::Line(l.clone()));
        }
    }
    for side in [&s, &c] {
        for l in lines
            .iter()
            .filter(|l| l.len() >= 3 && l.len() == side.len() + 1)
        {
            if side.iter().all(|x| l.contains(x)) {
                let k = *l.iter().find(|x| !side.contains(x)).unwrap();
                return Ok(Pullback::Exceptional(k));
            }
        }
    }
    Ok(Pullback::Zero)
}

/// Boundary intersection numbers of the proper transform of the smooth conic
/// through the five given points.
pub fn exceptional_conic_class(
    real: &Realization,
    five: &[usize],
) -> Result<CurveClass, DivisorError> {
    if real.r != 2 {
        return Err(DivisorError::NotPlanar);
    }
    let mut f = five.to_vec();
    f.sort_unstable();
    f.dedup();
    if f.len() != 5 {
        return Err(DivisorError::NotFive);
    }
    if veronese_rank(real, &f) != 5
        || f.iter().any(|&a| {
            f.iter()
                .any(|&b| a < b && f.iter().any(|&c| b < c && real.collinear(&[a, b, c])))
        })
    {
        return Err(DivisorError::NoConic(f));
    }
    for v in (1..=real.n()).filter(|v| !f.contains(v)) {
        let mut six = f.clone();
        six.push(v);
        if veronese_rank(real, &six) == 5 {
            return Err(DivisorError::ExtraPointOnConic(v));
        }
    }
    let n = real.n();
    let mut class = CurveClass::default();
    for l in real.lines() {
        let hit: Vec<usize> = l.iter().copied().filter(|x| f.contains(x)).collect();
        let c = 2 - hit.len() as i64;
        if c > 0 {
            class.add(
                BoundaryLabel::new(n, &l).map_err(|_| DivisorError::BadLabel(l.clone(), n))?,
                c,
            );
        }
        if l.len() >= 3 {
            for k in hit {
                let rest: Vec<usize> = l.iter().copied().filter(|&x| x != k).collect();
                class.add(BoundaryLabel::new(n, &rest)?, 1);
            }
        }
    }
    Ok(class)
}

/// (n − 4) − Σ m_S over labels that are pairs inside N∖{n}; the stored side
/// never contains n, so those are exactly the 2-element labels.
pub fn h_degree(n: usize, multiplicities: &BTreeMap<BoundaryLabel, i64>) -> i64 {
    let pairs: i64 = multiplicities
        .iter()
        .filter(|(l, _)| l.set().len() == 2)
        .map(|(_, m)| *m)
        .sum();
    n as i64 - 4 - pairs
}

/// Kapranov form d·H − Σ m_I E_I with E_I = δ_{I∪{n}}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KapranovForm {
    #[serde(rename = "H")]
    pub h: i64,
    /// subsets of N∖{n} (written without separators) → m_I
    #[serde(rename = "E")]
    pub e: BTreeMap<String, i64>,
}

/// Π*𝒪(1,…,1) − Σ m_S δ_S.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackForm {
    pub types: Vec<i64>,
    #[serde(rename = "delta")]
    pub delta: BTreeMap<BoundaryLabel, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorClass {
    pub n: usize,
    pub kapranov: KapranovForm,
    pub pullback: PullbackForm,
    pub h_degree: i64,
    pub consistent: bool,
}

/// The Keel–Vermeire divisor on M̄₀,₆ in both presentations.
pub fn kv_divisor() -> DivisorClass {
    let n = 6;
    let mut delta = BTreeMap::new();
    for s in [&[2, 6][..], &[1, 4, 6], &[3, 5, 6]] {
        delta.insert(BoundaryLabel::new(n, s).expect("valid label"), 1);
    }
    let e = ["1", "2", "3", "4", "5", "13", "45", "14", "35"]
        .iter()
        .map(|s| (s.to_string(), 1))
        .collect();
    let kapranov = KapranovForm { h: 2, e };
    let hd = h_degree(n, &delta);
    DivisorClass {
        n,
        consistent: hd == kapranov.h,
        h_degree: hd,
        kapranov,
        pullback: PullbackForm {
            types: vec![1, 1],
            delta,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::dual_hesse_realization;

    #[test]
    fn labels_normalize() {
        let a = BoundaryLabel::new(6, &[1, 4, 6]).unwrap();
        let b = BoundaryLabel::new(6, &[2, 3, 5]).unwrap();
        assert_eq!(a, b);
        assert_eq!(BoundaryLabel::new(6, a.set()).unwrap(), a);
        assert!(BoundaryLabel::new(6, &[1]).is_err());
        assert!(BoundaryLabel::new(6, &[1, 2, 3, 4, 5]).is_err());
    }

    #[test]
    fn h_degree_examples() {
        assert_eq!(kv_divisor().h_degree, 2);
        assert!(kv_divisor().consistent);
        assert_eq!(h_degree(7, &BTreeMap::new()), 3);
        let mut m = BTreeMap::new();
        m.insert(BoundaryLabel::new(7, &[1, 2]).unwrap(), 1);
        assert_eq!(h_degree(7, &m), 2);
    }

    #[test]
    fn dual_hesse_conic_class_size() {
        let real = dual_hesse_realization();
        let five: Vec<usize> = ["m", "n", "p", "1", "a"]
            .iter()
            .map(|s| crate::generator::dual_hesse_index(s))
            .collect();
        let c = exceptional_conic_class(&real, &five).unwrap();
        assert_eq!(c.num_terms(), 26);
    }
}
