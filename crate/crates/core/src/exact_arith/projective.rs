//! Points of the projective line as homogeneous pairs.

use serde::{Deserialize, Serialize};

use super::{Field, Ring, Scalar};

/// (x : y); the point at infinity is (1 : 0).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjPoint<F> {
    pub x: F,
    pub y: F,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProjectiveError {
    #[error("(0 : 0) is not a point")]
    ZeroVector,
    #[error("cross-ratio needs three distinct reference points")]
    DegenerateTriple,
    #[error("value is infinite")]
    Infinite,
}

/// The 2×2 determinant [a, b] = a.x·b.y − a.y·b.x.
pub fn bracket<F: Ring>(a: &ProjPoint<F>, b: &ProjPoint<F>) -> F {
    a.x.times(&b.y).minus(&a.y.times(&b.x))
}

impl<F: Field> ProjPoint<F> {
    pub fn new(x: F, y: F) -> Result<Self, ProjectiveError> {
        if x.is_zero() && y.is_zero() {
            return Err(ProjectiveError::ZeroVector);
        }
        Ok(ProjPoint { x, y })
    }

    pub fn finite(a: F) -> Self {
        ProjPoint { x: a, y: F::one() }
    }

    pub fn infinity() -> Self {
        ProjPoint {
            x: F::one(),
            y: F::zero(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.y.is_zero()
    }

    /// x / y, or an error at infinity.
    pub fn affine(&self) -> Result<F, ProjectiveError> {
        self.x.divide(&self.y).ok_or(ProjectiveError::Infinite)
    }

    /// Equality as points of ℙ¹.
    pub fn same_point(&self, other: &Self) -> bool {
        bracket(self, other).is_zero()
    }
}

impl ProjPoint<Scalar> {
    /// Scales so that the last nonzero coordinate is 1.
    pub fn normalized(&self) -> Self {
        if self.y.is_zero() {
            ProjPoint::infinity()
        } else {
            ProjPoint::finite(&self.x / &self.y)
        }
    }
}

/// {x, y, z, s} = (s−x)(y−z) / ((y−x)(s−z)), computed from brackets so that
/// ∞ needs no special case. Sends (x, y, z) to (0, 1, ∞).
pub fn cross_ratio<F: Field>(
    x: &ProjPoint<F>,
    y: &ProjPoint<F>,
    z: &ProjPoint<F>,
    s: &ProjPoint<F>,
) -> Result<ProjPoint<F>, ProjectiveError> {
    if x.same_point(y) || y.same_point(z) || x.same_point(z) {
        return Err(ProjectiveError::DegenerateTriple);
    }
    let num = bracket(s, x).times(&bracket(y, z));
    let den = bracket(y, x).times(&bracket(s, z));
    Ok(ProjPoint { x: num, y: den })
}

/// A Möbius transformation (a z + b) / (c z + d).
#[derive(Clone, Debug, PartialEq)]
pub struct Mobius<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

impl<F: Field> Mobius<F> {
    /// The map sending p0, p1, p2 to 0, 1, ∞.
    pub fn normalizing(
        p0: &ProjPoint<F>,
        p1: &ProjPoint<F>,
        p2: &ProjPoint<F>,
    ) -> Result<Self, ProjectiveError> {
        if p0.same_point(p1) || p1.same_point(p2) || p0.same_point(p2) {
            return Err(ProjectiveError::DegenerateTriple);
        }
        // z ↦ [z,p0][p1,p2] : [z,p2][p1,p0], linear in z.
        let k = bracket(p1, p2);
        let l = bracket(p1, p0);
        Ok(Mobius {
            a: k.times(&p0.y),
            b: k.times(&p0.x).negate(),
            c: l.times(&p2.y),
            d: l.times(&p2.x).negate(),
        })
    }

    pub fn apply(&self, p: &ProjPoint<F>) -> ProjPoint<F> {
        ProjPoint {
            x: self.a.times(&p.x).plus(&self.b.times(&p.y)),
            y: self.c.times(&p.x).plus(&self.d.times(&p.y)),
        }
    }

    pub fn determinant(&self) -> F {
        self.a.times(&self.d).minus(&self.b.times(&self.c))
    }
}
