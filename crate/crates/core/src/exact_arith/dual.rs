//! Forward-mode dual numbers with exact partial derivatives.

use super::{Field, Ring, Scalar};

/// A value together with its gradient with respect to declared variables.
///
/// The partials vector may be shorter than the number of variables; missing
/// entries are zero. This lets constants exist without knowing the variable
/// count.
#[derive(Clone, Debug)]
pub struct DualScalar {
    pub value: Scalar,
    pub partials: Vec<Scalar>,
}

impl DualScalar {
    pub fn constant(value: Scalar) -> Self {
        DualScalar {
            value,
            partials: Vec::new(),
        }
    }

    /// The `index`-th coordinate function evaluated at `value`.
    pub fn variable(value: Scalar, index: usize) -> Self {
        let mut partials = vec![Scalar::zero(); index + 1];
        partials[index] = Scalar::one();
        DualScalar { value, partials }
    }

    pub fn partial(&self, i: usize) -> Scalar {
        self.partials.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The gradient padded to `nvars` entries.
    pub fn gradient(&self, nvars: usize) -> Vec<Scalar> {
        (0..nvars).map(|i| self.partial(i)).collect()
    }

    fn zip(&self, other: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Vec<Scalar> {
        let n = self.partials.len().max(other.partials.len());
        (0..n)
            .map(|i| f(&self.partial(i), &other.partial(i)))
            .collect()
    }
}

impl PartialEq for DualScalar {
    fn eq(&self, other: &Self) -> bool {
        let n = self.partials.len().max(other.partials.len());
        self.value == other.value && (0..n).all(|i| self.partial(i) == other.partial(i))
    }
}

impl Ring for DualScalar {
    fn zero() -> Self {
        Self::constant(Scalar::zero())
    }
    fn one() -> Self {
        Self::constant(Scalar::one())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.partials.iter().all(|p| p.is_zero())
    }
    fn plus(&self, rhs: &Self) -> Self {
        DualScalar {
            value: &self.value + &rhs.value,
            partials: self.zip(rhs, |a, b| a + b),
        }
    }
    fn minus(&self, rhs: &Self) -> Self {
        DualScalar {
            value: &self.value - &rhs.value,
            partials: self.zip(rhs, |a, b| a - b),
        }
    }
    fn times(&self, rhs: &Self) -> Self {
        let (f, g) = (&self.value, &rhs.value);
        DualScalar {
            value: f * g,
            partials: self.zip(rhs, |df, dg| &(f * dg) + &(g * df)),
        }
    }
    fn negate(&self) -> Self {
        DualScalar {
            value: -&self.value,
            partials: self.partials.iter().map(|p| -p).collect(),
        }
    }
    fn from_scalar(s: &Scalar) -> Self {
        Self::constant(s.clone())
    }
}

impl Field for DualScalar {
    fn inverse(&self) -> Option<Self> {
        let inv = self.value.try_inv().ok()?;
        let factor = -&(&inv * &inv);
        Some(DualScalar {
            value: inv,
            partials: self.partials.iter().map(|p| p * &factor).collect(),
        })
    }
}
