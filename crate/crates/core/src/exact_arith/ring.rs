//! Minimal algebraic traits shared by scalars, dual numbers and polynomials.

use std::fmt::Debug;

use super::Scalar;

/// A commutative ring with exact equality.
///
/// Method names avoid clashing with `std::ops` so that generic code can use
/// them without qualification.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_scalar(s: &Scalar) -> Self;

    fn from_int(k: i64) -> Self {
        Self::from_scalar(&Scalar::from_int(k))
    }

    fn power(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }
}

/// A ring where nonzero elements can be inverted (as far as the
/// implementation can tell; dual numbers invert when their value does).
pub trait Field: Ring {
    fn inverse(&self) -> Option<Self>;

    fn divide(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|r| self.times(&r))
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn power(&self, e: u32) -> Self {
        self.pow(e)
    }
}

impl Field for Scalar {
    fn inverse(&self) -> Option<Self> {
        self.try_inv().ok()
    }
}
