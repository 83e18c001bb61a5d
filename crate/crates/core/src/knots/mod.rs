//! Knot expressions and the complexes representing their classes.

mod build;
mod parse;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use build::{alexander, class_complex, square_summand, staircase, trefoil_staircase};
pub use parse::parse;

use crate::laurent::LaurentError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KnotExpr {
    Unknot,
    /// `p, q >= 1`, coprime.
    Torus(i64, i64),
    /// The `(p, q)` cable, `p` the longitudinal winding.
    Cable(Box<KnotExpr>, i64, i64),
    /// Connected sum.
    Sum(Box<KnotExpr>, Box<KnotExpr>),
    /// Mirror image with reversed orientation.
    Mirror(Box<KnotExpr>),
    /// The positive-clasped untwisted Whitehead double of the trefoil, `D`.
    WhiteheadDoubleTrefoil,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("({0}, {1}) are not coprime")]
    NotCoprime(i64, i64),
    #[error("torus knot T({0},{1}) needs positive parameters; write -T(p,q) for a mirror")]
    NonPositiveTorus(i64, i64),
    #[error("cable winding number must be positive, got {0}")]
    NonPositiveCable(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("unsupported expression {expr}: {reason}")]
    Unsupported { expr: String, reason: String },
    #[error(transparent)]
    Polynomial(#[from] LaurentError),
}

impl KnotExpr {
    pub fn torus(p: i64, q: i64) -> Self {
        KnotExpr::Torus(p, q)
    }

    pub fn cable(inner: KnotExpr, p: i64, q: i64) -> Self {
        KnotExpr::Cable(Box::new(inner), p, q)
    }

    pub fn sum(left: KnotExpr, right: KnotExpr) -> Self {
        KnotExpr::Sum(Box::new(left), Box::new(right))
    }

    pub fn mirror(inner: KnotExpr) -> Self {
        KnotExpr::Mirror(Box::new(inner))
    }

    /// Replaces every `D` by `T(2,3)`, which has the same class.
    pub fn replace_whitehead_double(&self) -> KnotExpr {
        match self {
            KnotExpr::WhiteheadDoubleTrefoil => KnotExpr::Torus(2, 3),
            KnotExpr::Unknot | KnotExpr::Torus(..) => self.clone(),
            KnotExpr::Cable(k, p, q) => KnotExpr::cable(k.replace_whitehead_double(), *p, *q),
            KnotExpr::Sum(a, b) => {
                KnotExpr::sum(a.replace_whitehead_double(), b.replace_whitehead_double())
            }
            KnotExpr::Mirror(k) => KnotExpr::mirror(k.replace_whitehead_double()),
        }
    }

    /// Checks the parameter constraints the parser also enforces.
    pub fn check(&self) -> Result<(), ExprError> {
        match self {
            KnotExpr::Unknot | KnotExpr::WhiteheadDoubleTrefoil => Ok(()),
            &KnotExpr::Torus(p, q) => {
                if p < 1 || q < 1 {
                    Err(ExprError::NonPositiveTorus(p, q))
                } else if num_integer::gcd(p, q) != 1 {
                    Err(ExprError::NotCoprime(p, q))
                } else {
                    Ok(())
                }
            }
            KnotExpr::Cable(k, p, q) => {
                if *p < 1 {
                    Err(ExprError::NonPositiveCable(*p))
                } else if num_integer::gcd(*p, *q) != 1 {
                    Err(ExprError::NotCoprime(*p, *q))
                } else {
                    k.check()
                }
            }
            KnotExpr::Sum(a, b) => a.check().and_then(|_| b.check()),
            KnotExpr::Mirror(k) => k.check(),
        }
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => write!(f, "U"),
            KnotExpr::WhiteheadDoubleTrefoil => write!(f, "D"),
            KnotExpr::Torus(p, q) => write!(f, "T({p},{q})"),
            KnotExpr::Cable(k, p, q) => write!(f, "C({k};{p},{q})"),
            KnotExpr::Sum(a, b) => match **b {
                KnotExpr::Sum(..) => write!(f, "{a} + ({b})"),
                _ => write!(f, "{a} + {b}"),
            },
            KnotExpr::Mirror(k) => match **k {
                KnotExpr::Sum(..) => write!(f, "-({k})"),
                _ => write!(f, "-{k}"),
            },
        }
    }
}

impl FromStr for KnotExpr {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
