//! Elements of ℚ and of cyclotomic fields ℚ(ζ_m) in the power basis.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ArithError;

pub type Rational = BigRational;

/// Dense polynomials over ℚ, lowest degree first, used for field reduction.
type QPoly = Vec<Rational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn qpoly_divrem(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lead;
        for (i, bi) in b.iter().enumerate() {
            let t = &c * bi;
            r[k + i] -= t;
        }
        q[k] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn qpoly_mul(a: &[Rational], b: &[Rational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn qpoly_sub(a: &[Rational], b: &[Rational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
        out.push(x - y);
    }
    trim(&mut out);
    out
}

fn phi_cache() -> &'static RwLock<HashMap<u32, Arc<QPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<QPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The m-th cyclotomic polynomial, lowest degree first, computed by dividing
/// x^m − 1 by Φ_d for every proper divisor d of m.
pub fn cyclotomic_poly(m: u32) -> Arc<QPoly> {
    assert!(m >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().read().unwrap().get(&m) {
        return p.clone();
    }
    let mut p: QPoly = vec![Rational::zero(); m as usize + 1];
    p[0] = -Rational::one();
    p[m as usize] = Rational::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let (q, r) = qpoly_divrem(&p, &cyclotomic_poly(d));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    let p = Arc::new(p);
    phi_cache().write().unwrap().insert(m, p.clone());
    p
}

/// Euler's totient, the degree of Φ_m.
pub fn euler_phi(m: u32) -> usize {
    cyclotomic_poly(m).len() - 1
}

/// An exact element of ℚ (order 1) or of ℚ(ζ_m) for m ≥ 3.
///
/// Orders 1 and 2 both mean ℚ. Rationals combine with any order; two
/// different orders above 2 are never combined.
#[derive(Clone)]
pub struct Scalar {
    order: u32,
    coeffs: Vec<Rational>,
}

fn normalize_order(m: u32) -> u32 {
    if m <= 2 {
        1
    } else {
        m
    }
}

fn reduce(mut p: QPoly, m: u32) -> Vec<Rational> {
    let phi = cyclotomic_poly(m);
    let deg = phi.len() - 1;
    trim(&mut p);
    while p.len() > deg {
        let k = p.len() - 1 - deg;
        let c = p[p.len() - 1].clone();
        for (i, fi) in phi.iter().enumerate() {
            p[k + i] -= &c * fi;
        }
        p.pop();
        trim(&mut p);
    }
    p.resize(deg, Rational::zero());
    p
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Scalar {
            order: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(k)))
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Builds an element of ℚ(ζ_m) from power-basis coefficients of any
    /// length; the input is reduced modulo Φ_m.
    pub fn from_coeffs(m: u32, coeffs: Vec<Rational>) -> Self {
        if m <= 2 {
            // ζ_1 = 1 and ζ_2 = −1, so the polynomial is evaluated there.
            let mut acc = Rational::zero();
            for (i, c) in coeffs.iter().enumerate() {
                if m == 2 && i % 2 == 1 {
                    acc -= c;
                } else {
                    acc += c;
                }
            }
            return Self::from_rational(acc);
        }
        Scalar {
            order: m,
            coeffs: reduce(coeffs, m),
        }
    }

    /// Like `from_coeffs` but with integer coefficients.
    pub fn from_ints(m: u32, coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            m,
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// The primitive root ζ_m = exp(2πi/m).
    pub fn zeta(m: u32) -> Self {
        match m {
            0 => panic!("cyclotomic order must be positive"),
            1 => Self::one(),
            2 => Self::from_int(-1),
            _ => Self::from_ints(m, &[0, 1]),
        }
    }

    /// ω, the primitive cube root of unity.
    pub fn omega() -> Self {
        Self::zeta(3)
    }

    /// 1 for rationals, m for ℚ(ζ_m).
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Re-expresses the element in ℚ(ζ_m). Fails unless the element is
    /// rational or already has order m.
    pub fn embed(&self, m: u32) -> Result<Scalar, ArithError> {
        let m = normalize_order(m);
        if self.order == m {
            return Ok(self.clone());
        }
        if self.order == 1 || self.is_rational() {
            let mut c = vec![Rational::zero(); euler_phi(m).max(1)];
            c[0] = self.coeffs[0].clone();
            return Ok(Scalar {
                order: m,
                coeffs: c,
            });
        }
        Err(ArithError::IncompatibleOrders(self.order, m))
    }

    fn common_order(&self, other: &Scalar) -> Result<u32, ArithError> {
        if self.order == other.order {
            Ok(self.order)
        } else if self.order == 1 {
            Ok(other.order)
        } else if other.order == 1 {
            Ok(self.order)
        } else {
            Err(ArithError::IncompatibleOrders(self.order, other.order))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        let m = self.common_order(other)?;
        let (a, b) = (self.embed(m)?, other.embed(m)?);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(Scalar { order: m, coeffs })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        let m = self.common_order(other)?;
        let (a, b) = (self.embed(m)?, other.embed(m)?);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        Ok(Scalar { order: m, coeffs })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        let m = self.common_order(other)?;
        if m == 1 {
            return Ok(Self::from_rational(&self.coeffs[0] * &other.coeffs[0]));
        }
        if self.order == 1 {
            return Ok(other.scale(&self.coeffs[0]));
        }
        if other.order == 1 {
            return Ok(self.scale(&other.coeffs[0]));
        }
        Ok(Scalar {
            order: m,
            coeffs: reduce(qpoly_mul(&self.coeffs, &other.coeffs), m),
        })
    }

    /// Multiplies by a rational.
    pub fn scale(&self, q: &Rational) -> Scalar {
        Scalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn try_inv(&self) -> Result<Scalar, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        // Extended Euclid: find s with s·a ≡ 1 (mod Φ_m).
        let phi = cyclotomic_poly(self.order);
        let mut a: QPoly = self.coeffs.clone();
        trim(&mut a);
        let (mut r0, mut r1) = ((*phi).clone(), a);
        let (mut s0, mut s1): (QPoly, QPoly) = (vec![], vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = qpoly_divrem(&r0, &r1);
            let s = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant because Φ_m is irreducible.
        let c = r1[0].recip();
        let s: QPoly = s1.iter().map(|x| x * &c).collect();
        Ok(Scalar {
            order: self.order,
            coeffs: reduce(s, self.order),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.try_mul(&other.try_inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The Galois automorphism ζ ↦ ζ^k (k must be coprime to the order).
    pub fn galois(&self, k: u32) -> Scalar {
        if self.order == 1 {
            return self.clone();
        }
        let m = self.order;
        let k = k % m;
        assert!(
            num::integer::gcd(k, m) == 1,
            "exponent not coprime to order"
        );
        let mut p = vec![Rational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = (i as u64 * k as u64 % m as u64) as usize;
            p[j] += c;
        }
        Scalar {
            order: m,
            coeffs: reduce(p, m),
        }
    }

    /// Field norm down to ℚ (product of all conjugates).
    pub fn norm(&self) -> Rational {
        if self.order == 1 {
            return self.coeffs[0].clone();
        }
        let m = self.order;
        let mut acc = Scalar::one();
        for k in 1..m {
            if num::integer::gcd(k, m) == 1 {
                acc = &acc * &self.galois(k);
            }
        }
        acc.to_rational().expect("norm is rational")
    }

    /// A square root inside the same field, if one exists and the field is
    /// ℚ, ℚ(ω) or ℚ(i). Returns `None` otherwise.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(self.clone());
        }
        match self.order {
            1 => rational_sqrt(&self.coeffs[0]).map(Scalar::from_rational),
            3 | 4 => {
                // Write x = P + Qζ, x² = self, and use N(x)² = N(self) to
                // make the system for (P², PQ, Q²) linear.
                let n = rational_sqrt(&self.norm())?;
                let (c0, c1) = (&self.coeffs[0], &self.coeffs[1]);
                let two = Rational::from_integer(BigInt::from(2));
                let three = Rational::from_integer(BigInt::from(3));
                let (pp, pq, qq) = if self.order == 3 {
                    // x² = P² − Q² + (2PQ − Q²)ω ; N(x) = P² − PQ + Q².
                    let qq = (&two * &n - &two * c0 + c1) / &three;
                    let pp = c0 + &qq;
                    let pq = (c1 + &qq) / &two;
                    (pp, pq, qq)
                } else {
                    // x² = P² − Q² + 2PQ·i ; N(x) = P² + Q².
                    let pp = (&n + c0) / &two;
                    let qq = (&n - c0) / &two;
                    (pp, c1 / &two, qq)
                };
                let q = rational_sqrt(&qq)?;
                let p = if q.is_zero() {
                    rational_sqrt(&pp)?
                } else {
                    pq / &q
                };
                let x = Scalar::from_coeffs(self.order, vec![p, q]);
                (&x * &x == *self).then_some(x)
            }
            _ => None,
        }
    }

    /// Parses the forms accepted in JSON: "p/q", "p", or a rational string
    /// for each coefficient via [`Scalar::from_coeffs`].
    pub fn parse_rational(s: &str) -> Result<Scalar, ArithError> {
        Rational::from_str(s.trim())
            .map(Scalar::from_rational)
            .map_err(|_| ArithError::Parse(s.to_string()))
    }
}

/// Exact square root of a rational if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        self.is_rational() && other.is_rational() && self.coeffs[0] == other.coeffs[0]
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        if self.is_rational() {
            self.coeffs[0].hash(state);
        } else {
            self.order.hash(state);
            self.coeffs.hash(state);
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

fn symbol(m: u32) -> String {
    match m {
        3 => "w".into(),
        4 => "i".into(),
        _ => format!("z{m}"),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeffs[0]);
        }
        let sym = symbol(self.order);
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let body = match i {
                0 => a.to_string(),
                _ => {
                    let mon = if i == 1 {
                        sym.clone()
                    } else {
                        format!("{sym}^{i}")
                    };
                    if a.is_one() {
                        mon
                    } else {
                        format!("{a}{mon}")
                    }
                }
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(k: i64) -> Self {
        Scalar::from_int(k)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Int(i64),
    Rat(String),
    Cyc { m: u32, coeffs: Vec<String> },
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = if self.order == 1 {
            ScalarRepr::Rat(self.coeffs[0].to_string())
        } else {
            ScalarRepr::Cyc {
                m: self.order,
                coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
            }
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match ScalarRepr::deserialize(d)? {
            ScalarRepr::Int(k) => Ok(Scalar::from_int(k)),
            ScalarRepr::Rat(s) => Scalar::parse_rational(&s).map_err(D::Error::custom),
            ScalarRepr::Cyc { m, coeffs } => {
                if m == 0 {
                    return Err(D::Error::custom("cyclotomic order must be positive"));
                }
                let cs = coeffs
                    .iter()
                    .map(|c| {
                        Rational::from_str(c.trim())
                            .map_err(|_| D::Error::custom(format!("bad rational {c:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Scalar::from_coeffs(m, cs))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Scalar {
        Scalar::omega()
    }

    #[test]
    fn omega_squared_reduces() {
        assert_eq!(&w() * &w(), Scalar::from_ints(3, &[-1, -1]));
    }

    #[test]
    fn rational_sum() {
        assert_eq!(
            Scalar::from_frac(1, 3) + Scalar::from_frac(1, 6),
            Scalar::from_frac(1, 2)
        );
    }

    #[test]
    fn minus_omega_squared_cubed() {
        let x = -(&w() * &w());
        assert_eq!(x.pow(3), Scalar::from_int(-1));
        // brute force: expand (1+ω)³ coefficientwise, then reduce.
        let brute = Scalar::from_ints(3, &[1, 3, 3, 1]);
        assert_eq!(brute, Scalar::from_int(-1));
    }

    #[test]
    fn cyclotomic_polys() {
        let ints = |m| {
            cyclotomic_poly(m)
                .iter()
                .map(|c| c.to_integer().to_string().parse::<i64>().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(ints(1), vec![-1, 1]);
        assert_eq!(ints(3), vec![1, 1, 1]);
        assert_eq!(ints(4), vec![1, 0, 1]);
        assert_eq!(ints(6), vec![1, -1, 1]);
        assert_eq!(ints(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(15), 8);
    }

    #[test]
    fn zeta_has_order_m() {
        for m in [3u32, 4, 5, 7, 8, 9, 12] {
            let z = Scalar::zeta(m);
            assert!(z.pow(m).is_one());
            for k in 1..m {
                assert!(!z.pow(k).is_one());
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Scalar::from_ints(5, &[2, -1, 0, 3]);
        let b = a.try_inv().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(Scalar::zero().try_inv(), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn incompatible_orders() {
        let a = Scalar::zeta(3);
        let b = Scalar::zeta(4);
        assert_eq!(a.try_add(&b), Err(ArithError::IncompatibleOrders(3, 4)));
        assert!(a.try_add(&Scalar::from_int(2)).is_ok());
    }

    #[test]
    fn square_roots() {
        let x = Scalar::from_ints(3, &[2, -5]);
        let y = (&x * &x).sqrt().unwrap();
        assert!(y == x || y == -&x);
        let i = Scalar::zeta(4);
        assert_eq!(
            (&i * &i).sqrt().map(|r| &r * &r),
            Some(Scalar::from_int(-1))
        );
        // −3 = (1 + 2ω)² in ℚ(ω) but not a square in ℚ.
        assert!(Scalar::from_int(-3).sqrt().is_none());
        let r = Scalar::from_int(-3).embed(3).unwrap().sqrt().unwrap();
        assert_eq!(&r * &r, Scalar::from_int(-3));
        assert!(Scalar::from_ints(3, &[0, 1]).sqrt().is_some());
        assert!(Scalar::from_ints(3, &[2, 0]).sqrt().is_none());
    }

    #[test]
    fn galois_conjugation() {
        assert_eq!(w().galois(2), &w() * &w());
        assert_eq!(w().norm(), Rational::one());
    }

    #[test]
    fn serde_forms() {
        let x = Scalar::from_ints(3, &[-6, -3]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"m":3,"coeffs":["-6","-3"]}"#);
        assert_eq!(serde_json::from_str::<Scalar>(&s).unwrap(), x);
        let q: Scalar = serde_json::from_str("\"-7/4\"").unwrap();
        assert_eq!(q, Scalar::from_frac(-7, 4));
        assert_eq!(serde_json::to_string(&q).unwrap(), "\"-7/4\"");
    }

    #[test]
    fn display() {
        assert_eq!(Scalar::from_ints(3, &[-6, -3]).to_string(), "-6 - 3w");
        assert_eq!(Scalar::from_ints(3, &[0, 1]).to_string(), "w");
        assert_eq!(Scalar::from_frac(3, 4).to_string(), "3/4");
    }
}
