//! Exact kernel for products of `(1 - q^E)` factors with affine exponents,
//! with substitution, local expansion, residues and a formal `log q` grading.
//!
//! `q` is treated as transcendental: a binomial vanishes only when its
//! exponent is identically zero. Numeric values of `q` enter only through
//! [`FactoredForm::eval_numeric`] and [`FactoredForm::eval_exact`].

mod affine;
mod form;
mod series;
mod sum;

pub use affine::{to_f64, AffineExponent, VarId};
pub use form::{FactoredForm, NUMERIC_POLE_TOL};
pub use series::{expand, residue, LocalSeries};
pub use sum::SumForm;

use thiserror::Error;

pub type Rational = num_rational::BigRational;

/// `p/q` as an exact rational.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QcasError {
    #[error("a denominator binomial vanishes identically; take a residue instead")]
    PoleAtSubstitution,
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable left unassigned in numeric evaluation")]
    UnassignedVariable,
    #[error("series coefficient of order {order} requested beyond truncation {truncation}")]
    BeyondTruncation { order: i64, truncation: i64 },
    #[error("series leading coefficient is not a single factored term")]
    NotFactored,
}
