use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use super::affine::{AffineExponent, VarId};
use super::form::FactoredForm;
use super::{QcasError, Rational};

/// A finite sum of factored forms. Like terms (same log-grade, monomial and
/// binomials) are merged and zero terms dropped; the empty sum is zero.
///
/// Sums only arise from local series expansion at higher-order poles.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SumForm {
    terms: Vec<FactoredForm>,
}

impl SumForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = FactoredForm>) -> Self {
        let mut merged: BTreeMap<_, Rational> = BTreeMap::new();
        let mut reps: BTreeMap<_, FactoredForm> = BTreeMap::new();
        for t in terms.into_iter().filter(|t| !t.is_zero()) {
            let key = t.shape();
            *merged.entry(key.clone()).or_insert_with(Rational::zero) += t.constant_factor();
            reps.entry(key).or_insert(t);
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| reps.remove(&k).expect("key present").with_constant(c))
            .collect();
        SumForm { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[FactoredForm] {
        &self.terms
    }

    /// The single term, if the sum has exactly one; `Some(zero)` for the empty sum.
    pub fn as_factored(&self) -> Option<FactoredForm> {
        match self.terms.as_slice() {
            [] => Some(FactoredForm::zero()),
            [t] => Some(t.clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &SumForm) -> SumForm {
        SumForm::from_terms(self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn mul(&self, other: &SumForm) -> SumForm {
        SumForm::from_terms(
            self.terms
                .iter()
                .flat_map(|a| other.terms.iter().map(move |b| a.mul(b))),
        )
    }

    pub fn mul_form(&self, f: &FactoredForm) -> SumForm {
        SumForm::from_terms(self.terms.iter().map(|a| a.mul(f)))
    }

    pub fn scale(&self, c: &Rational) -> SumForm {
        SumForm::from_terms(self.terms.iter().map(|a| a.scale(c)))
    }

    pub fn substitute(&self, var: VarId, value: &AffineExponent) -> Result<SumForm, QcasError> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.substitute(var, value))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SumForm::from_terms(terms))
    }

    pub fn eval_numeric(
        &self,
        q: f64,
        assignment: &BTreeMap<VarId, Complex64>,
    ) -> Result<Complex64, QcasError> {
        self.terms
            .iter()
            .try_fold(Complex64::new(0.0, 0.0), |acc, t| Ok(acc + t.eval_numeric(q, assignment)?))
    }

    pub fn vars(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.iter().flat_map(|t| t.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Log-grades of the terms, ascending and deduplicated.
    pub fn log_grades(&self) -> Vec<i64> {
        let mut g: Vec<i64> = self.terms.iter().map(|t| t.log_grade()).collect();
        g.sort();
        g.dedup();
        g
    }
}

impl From<FactoredForm> for SumForm {
    fn from(f: FactoredForm) -> Self {
        SumForm::from_terms([f])
    }
}

impl fmt::Display for SumForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{t}]")?;
        }
        Ok(())
    }
}
