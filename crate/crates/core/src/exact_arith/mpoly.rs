//! Sparse multivariate polynomials with scalar coefficients.

use std::collections::BTreeMap;

use super::{Ring, Scalar};

/// Exponent vectors never end in a zero, so polynomials in different
/// numbers of variables compare and combine directly.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct MPoly {
    terms: BTreeMap<Vec<u32>, Scalar>,
}

fn trimmed(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl MPoly {
    pub fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![], c);
        }
        MPoly { terms }
    }

    /// The coordinate function x_i.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, Scalar::one());
        MPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = trimmed(e);
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// ∂/∂x_i.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = MPoly::default();
        for (e, c) in &self.terms {
            let k = e.get(i).copied().unwrap_or(0);
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * &Scalar::from_int(k as i64));
        }
        out
    }

    /// Evaluates in any ring containing the scalars; missing coordinates
    /// are an error in the caller, so they panic here.
    pub fn eval<R: Ring>(&self, point: &[R]) -> R {
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let mut t = R::from_scalar(c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.times(&point[i].power(k));
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }
}

impl Ring for MPoly {
    fn zero() -> Self {
        MPoly::default()
    }
    fn one() -> Self {
        MPoly::constant(Scalar::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
    fn minus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
    fn times(&self, rhs: &Self) -> Self {
        let mut out = MPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let n = e1.len().max(e2.len());
                let e: Vec<u32> = (0..n)
                    .map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
    fn negate(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
    fn from_scalar(s: &Scalar) -> Self {
        MPoly::constant(s.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_and_differentiate() {
        let x = MPoly::var(0);
        let y = MPoly::var(1);
        let f = x.plus(&y).power(3);
        assert_eq!(f.num_terms(), 4);
        let fx = f.derivative(0);
        let at = [Scalar::from_int(1), Scalar::from_int(2)];
        assert_eq!(fx.eval(&at), Scalar::from_int(27));
        assert!(x.minus(&x).is_zero());
    }
}
