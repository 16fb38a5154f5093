//! Exact arithmetic: rationals, cyclotomic fields, polynomials, dual numbers,
//! rational-function evaluation and dense linear algebra.

mod dual;
mod expr;
mod matrix;
mod mpoly;
mod poly;
mod projective;
mod ring;
mod scalar;

pub use dual::DualScalar;
pub use expr::{EvalError, Expr};
pub use matrix::{Matrix, RankProfile};
pub use mpoly::MPoly;
pub use poly::{interpolate, Poly1};
pub use projective::{bracket, cross_ratio, Mobius, ProjPoint, ProjectiveError};
pub use ring::{Field, Ring};
pub use scalar::{cyclotomic_poly, euler_phi, rational_sqrt, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible cyclotomic orders {0} and {1}")]
    IncompatibleOrders(u32, u32),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Bound on numerators and denominators of random rationals.
pub const RANDOM_HEIGHT: i64 = 97;

/// A random rational p/q with |p| ≤ 97 and 1 ≤ q ≤ 97.
pub fn random_rational(rng: &mut impl rand::Rng) -> Scalar {
    let p = rng.gen_range(-RANDOM_HEIGHT..=RANDOM_HEIGHT);
    let q = rng.gen_range(1..=RANDOM_HEIGHT);
    Scalar::from_frac(p, q)
}

/// A random nonzero rational of small height.
pub fn random_nonzero_rational(rng: &mut impl rand::Rng) -> Scalar {
    loop {
        let x = random_rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Determinant of a square matrix over any ring by cofactor expansion.
/// Used for small symbolic determinants (at most 4×4).
pub fn det_generic<R: Ring>(rows: &[Vec<R>]) -> R {
    let n = rows.len();
    match n {
        0 => R::one(),
        1 => rows[0][0].clone(),
        2 => rows[0][0]
            .times(&rows[1][1])
            .minus(&rows[0][1].times(&rows[1][0])),
        _ => {
            let mut acc = R::zero();
            for j in 0..n {
                if rows[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<R>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = rows[0][j].times(&det_generic(&minor));
                acc = if j % 2 == 0 {
                    acc.plus(&term)
                } else {
                    acc.minus(&term)
                };
            }
            acc
        }
    }
}
