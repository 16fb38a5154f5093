//! Dense univariate polynomials over an arbitrary ring.

use std::fmt;

use super::{Field, Ring, Scalar};

/// A polynomial in one named variable, coefficients lowest degree first.
/// The coefficient list never ends in a zero; the zero polynomial is empty.
#[derive(Clone)]
pub struct Poly1<R> {
    pub var: String,
    coeffs: Vec<R>,
}

impl<R: Ring> Poly1<R> {
    pub fn new(var: &str, mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 {
            var: var.to_string(),
            coeffs,
        }
    }

    pub fn constant(var: &str, c: R) -> Self {
        Self::new(var, vec![c])
    }

    /// The variable itself.
    pub fn x(var: &str) -> Self {
        Self::new(var, vec![R::zero(), R::one()])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of t^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficients from the top degree down to the constant term, padded
    /// to exactly `deg + 1` entries.
    pub fn coeffs_high_first(&self, deg: usize) -> Vec<R> {
        (0..=deg).rev().map(|i| self.coeff(i)).collect()
    }

    pub fn eval(&self, t: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(t).plus(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.times(&R::from_int(i as i64)))
            .collect();
        Self::new(&self.var, coeffs)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(&self.var, self.coeffs.iter().map(|x| x.times(c)).collect())
    }

    /// Applies a coefficient map, e.g. to substitute values into
    /// multivariate coefficients.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly1<S> {
        Poly1::new(&self.var, self.coeffs.iter().map(f).collect())
    }
}

impl<R: Field> Poly1<R> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.coeffs[dd]
            .inverse()
            .expect("leading coefficient is invertible");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::new(&self.var, vec![]), self.clone());
        }
        let mut q = vec![R::zero(); r.len() - dd];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = r[r.len() - 1].times(&lead_inv);
            for (i, di) in d.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].minus(&c.times(di));
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Self::new(&self.var, q), Self::new(&self.var, r))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inverse().expect("leading coefficient is invertible")),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while b.degree().is_some() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Removes from `self` every root shared with `h`, with multiplicity.
    pub fn saturate(&self, h: &Self) -> Self {
        let mut g = self.clone();
        if g.degree().is_none() || h.degree().is_none() {
            return g;
        }
        loop {
            let c = g.gcd(h);
            if c.degree().unwrap_or(0) == 0 {
                return g;
            }
            g = g.div_rem(&c).0;
        }
    }
}

/// Lagrange interpolation through the points (xs[i], ys[i]).
pub fn interpolate<F: Field>(var: &str, xs: &[F], ys: &[F]) -> Poly1<F> {
    assert_eq!(xs.len(), ys.len());
    let mut acc = Poly1::new(var, vec![]);
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = Poly1::constant(var, F::one());
        let mut denom = F::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.times(&Poly1::new(var, vec![xj.negate(), F::one()]));
                denom = denom.times(&xi.minus(xj));
            }
        }
        let c = yi
            .divide(&denom)
            .expect("interpolation nodes must be distinct");
        acc = acc.plus(&basis.scale(&c));
    }
    acc
}

impl<R: Ring> PartialEq for Poly1<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring> fmt::Debug for Poly1<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly1<{}>{:?}", self.var, self.coeffs)
    }
}

impl fmt::Display for Poly1<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c}){}", self.var),
                _ => format!("({c}){}^{i}", self.var),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<R: Ring> Ring for Poly1<R> {
    fn zero() -> Self {
        Self::new("t", vec![])
    }
    fn one() -> Self {
        Self::new("t", vec![R::one()])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            &self.var,
            (0..n).map(|i| self.coeff(i).plus(&rhs.coeff(i))).collect(),
        )
    }
    fn minus(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            &self.var,
            (0..n).map(|i| self.coeff(i).minus(&rhs.coeff(i))).collect(),
        )
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::new(&self.var, vec![]);
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::new(&self.var, out)
    }
    fn negate(&self) -> Self {
        Self::new(&self.var, self.coeffs.iter().map(|c| c.negate()).collect())
    }
    fn from_scalar(s: &Scalar) -> Self {
        Self::new("t", vec![R::from_scalar(s)])
    }
}
