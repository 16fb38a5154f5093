//! A small rational-function AST evaluated over any field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var(String),
    Const(Scalar),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("pole at point: denominator {0} vanishes")]
    Pole(String),
    #[error("unbound variable {0}")]
    Unbound(String),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn int(k: i64) -> Expr {
        Expr::Const(Scalar::from_int(k))
    }

    pub fn konst(s: Scalar) -> Expr {
        Expr::Const(s)
    }

    pub fn pow(self, e: u32) -> Expr {
        Expr::Pow(Box::new(self), e)
    }

    /// Evaluates with variables looked up through `env`.
    pub fn eval<F: Field>(&self, env: &dyn Fn(&str) -> Option<F>) -> Result<F, EvalError> {
        Ok(match self {
            Expr::Var(v) => env(v).ok_or_else(|| EvalError::Unbound(v.clone()))?,
            Expr::Const(c) => F::from_scalar(c),
            Expr::Add(a, b) => a.eval(env)?.plus(&b.eval(env)?),
            Expr::Sub(a, b) => a.eval(env)?.minus(&b.eval(env)?),
            Expr::Mul(a, b) => a.eval(env)?.times(&b.eval(env)?),
            Expr::Div(a, b) => {
                let num = a.eval(env)?;
                let den = b.eval(env)?;
                num.divide(&den)
                    .ok_or_else(|| EvalError::Pole(b.to_string()))?
            }
            Expr::Neg(a) => a.eval(env)?.negate(),
            Expr::Pow(a, e) => a.eval(env)?.power(*e),
        })
    }

    /// Evaluates with a list of (name, value) bindings.
    pub fn eval_at<F: Field>(&self, bindings: &[(&str, F)]) -> Result<F, EvalError> {
        self.eval(&|name: &str| {
            bindings
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, v)| v.clone())
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Var(_) => 5,
            Expr::Const(c)
                if c.is_rational() && c.to_rational().is_some_and(|q| q.is_integer()) =>
            {
                5
            }
            Expr::Const(_) => 0,
        }
    }

    fn fmt_child(&self, child: &Expr, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if child.precedence() < min {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Const(c) => {
                if self.precedence() == 0 {
                    write!(f, "({c})")
                } else {
                    write!(f, "{c}")
                }
            }
            Expr::Add(a, b) => {
                self.fmt_child(a, 1, f)?;
                write!(f, " + ")?;
                self.fmt_child(b, 2, f)
            }
            Expr::Sub(a, b) => {
                self.fmt_child(a, 1, f)?;
                write!(f, " - ")?;
                self.fmt_child(b, 2, f)
            }
            Expr::Mul(a, b) => {
                self.fmt_child(a, 2, f)?;
                write!(f, "*")?;
                self.fmt_child(b, 3, f)
            }
            Expr::Div(a, b) => {
                self.fmt_child(a, 2, f)?;
                write!(f, "/")?;
                self.fmt_child(b, 3, f)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                self.fmt_child(a, 3, f)
            }
            Expr::Pow(a, e) => {
                self.fmt_child(a, 5, f)?;
                write!(f, "^{e}")
            }
        }
    }
}

macro_rules! expr_op {
    ($tr:ident, $m:ident, $variant:ident) => {
        impl $tr for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
        impl $tr<i64> for Expr {
            type Output = Expr;
            fn $m(self, rhs: i64) -> Expr {
                Expr::$variant(Box::new(self), Box::new(Expr::int(rhs)))
            }
        }
        impl $tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                Expr::$variant(Box::new(self.clone()), Box::new(rhs.clone()))
            }
        }
    };
}

expr_op!(Add, add, Add);
expr_op!(Sub, sub, Sub);
expr_op!(Mul, mul, Mul);
expr_op!(Div, div, Div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{DualScalar, Ring};

    fn cross_ratio_expr() -> Expr {
        let (x, y, z, s) = (
            Expr::var("x"),
            Expr::var("y"),
            Expr::var("z"),
            Expr::var("s"),
        );
        (&s - &x) * (&y - &z) / ((&y - &x) * (&s - &z))
    }

    #[test]
    fn cross_ratio_at_0123() {
        let v: Scalar = cross_ratio_expr()
            .eval_at(&[
                ("x", Scalar::from_int(0)),
                ("y", Scalar::from_int(1)),
                ("z", Scalar::from_int(2)),
                ("s", Scalar::from_int(3)),
            ])
            .unwrap();
        // direct arithmetic: (3−0)(1−2) / ((1−0)(3−2))
        let direct = Scalar::from_int(3 * (1 - 2)) / Scalar::from_int(1 * (3 - 2));
        assert_eq!(v, direct);
        assert_eq!(v, Scalar::from_int(-3));
    }

    #[test]
    fn pole_reports_subexpression() {
        let e = Expr::int(1) / (Expr::var("x") - 2);
        let err = e.eval_at(&[("x", Scalar::from_int(2))]).unwrap_err();
        assert_eq!(err, EvalError::Pole("x - 2".into()));
        let err = e.eval_at::<Scalar>(&[]).unwrap_err();
        assert_eq!(err, EvalError::Unbound("x".into()));
    }

    #[test]
    fn dual_evaluation_differentiates() {
        let e = Expr::var("x").pow(2);
        let v: DualScalar = e
            .eval_at(&[("x", DualScalar::variable(Scalar::from_int(5), 0))])
            .unwrap();
        assert_eq!(v.partial(0), Scalar::from_int(10));
        assert_eq!(v.value, Scalar::from_int(25));
        let _ = DualScalar::one();
    }
}
