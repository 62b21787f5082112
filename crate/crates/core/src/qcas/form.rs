//! Factored q-rational forms `c * (log q)^g * q^(E0) * PROD (1 - q^(E))^k`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::affine::{to_f64, AffineExponent, VarId};
use super::{QcasError, Rational};

/// Exact product of a rational constant, a power of `log q`, a q-monomial and
/// binomials `(1 - q^E)`.
///
/// Canonical by construction: every stored binomial exponent is nonzero with a
/// positive leading coefficient, multiplicities are nonzero, and zero is the
/// unique form with constant 0 and nothing else. Two forms are the same
/// function of `q` (transcendental) and the variables iff they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredForm {
    constant: Rational,
    log_grade: i64,
    monomial: AffineExponent,
    binomials: BTreeMap<AffineExponent, i64>,
}

impl FactoredForm {
    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn constant(c: Rational) -> Self {
        FactoredForm {
            constant: c,
            log_grade: 0,
            monomial: AffineExponent::zero(),
            binomials: BTreeMap::new(),
        }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    /// `(log q)^g`.
    pub fn log_power(g: i64) -> Self {
        let mut f = Self::one();
        f.log_grade = g;
        f
    }

    /// `q^E`.
    pub fn q_power(e: AffineExponent) -> Self {
        let mut f = Self::one();
        f.monomial = e;
        f
    }

    /// `(1 - q^E)`; the zero form when `E` vanishes identically.
    pub fn binomial(e: AffineExponent) -> Self {
        let mut f = Self::one();
        // k = 1 never errors
        let _ = f.push_binomial(e, 1);
        f
    }

    /// `(1 - q^E)^k`. Fails with `PoleAtSubstitution` for `E = 0`, `k < 0`.
    pub fn binomial_pow(e: AffineExponent, k: i64) -> Result<Self, QcasError> {
        let mut f = Self::one();
        f.push_binomial(e, k)?;
        Ok(f)
    }

    /// `q^E - 1`, i.e. `-(1 - q^E)`.
    pub fn q_minus_one(e: AffineExponent) -> Self {
        Self::binomial(e).scale(&-Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn constant_factor(&self) -> &Rational {
        &self.constant
    }

    pub fn log_grade(&self) -> i64 {
        self.log_grade
    }

    pub fn monomial(&self) -> &AffineExponent {
        &self.monomial
    }

    pub fn binomials(&self) -> impl Iterator<Item = (&AffineExponent, i64)> {
        self.binomials.iter().map(|(e, k)| (e, *k))
    }

    /// Binomials with negative multiplicity.
    pub fn denominator_binomials(&self) -> impl Iterator<Item = (&AffineExponent, i64)> {
        self.binomials().filter(|(_, k)| *k < 0)
    }

    /// The form with the constant and log-grade stripped; used as a like-term key.
    pub(crate) fn shape(&self) -> (i64, AffineExponent, BTreeMap<AffineExponent, i64>) {
        (self.log_grade, self.monomial.clone(), self.binomials.clone())
    }

    pub(crate) fn with_constant(mut self, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        self.constant = c;
        self
    }

    /// All variables occurring anywhere in the form.
    pub fn vars(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self
            .monomial
            .vars()
            .chain(self.binomials.keys().flat_map(|e| e.vars()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    fn push_binomial(&mut self, e: AffineExponent, k: i64) -> Result<(), QcasError> {
        if k == 0 || self.is_zero() {
            return Ok(());
        }
        if e.is_zero() {
            if k < 0 {
                return Err(QcasError::PoleAtSubstitution);
            }
            *self = Self::zero();
            return Ok(());
        }
        let e = if e.leading_sign().is_lt() {
            // (1 - q^E) = -q^E (1 - q^-E)
            if k.is_odd() {
                self.constant = -self.constant.clone();
            }
            self.monomial = std::mem::take(&mut self.monomial) + e.scale(&Rational::from_integer(k.into()));
            -e
        } else {
            e
        };
        let slot = self.binomials.entry(e.clone()).or_insert(0);
        *slot += k;
        if *slot == 0 {
            self.binomials.remove(&e);
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let mut f = self.clone();
        f.constant *= c;
        f
    }

    pub fn mul(&self, other: &FactoredForm) -> FactoredForm {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.constant *= &other.constant;
        out.log_grade += other.log_grade;
        out.monomial = out.monomial + other.monomial.clone();
        for (e, k) in &other.binomials {
            // exponents already canonical and nonzero
            let slot = out.binomials.entry(e.clone()).or_insert(0);
            *slot += k;
            if *slot == 0 {
                out.binomials.remove(e);
            }
        }
        out
    }

    pub fn inv(&self) -> Result<FactoredForm, QcasError> {
        self.pow(-1)
    }

    pub fn div(&self, other: &FactoredForm) -> Result<FactoredForm, QcasError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<FactoredForm, QcasError> {
        if self.is_zero() {
            return match k.cmp(&0) {
                std::cmp::Ordering::Less => Err(QcasError::DivisionByZero),
                std::cmp::Ordering::Equal => Ok(Self::one()),
                std::cmp::Ordering::Greater => Ok(Self::zero()),
            };
        }
        let kr = Rational::from_integer(k.into());
        Ok(FactoredForm {
            constant: Pow::pow(&self.constant, k as i32),
            log_grade: self.log_grade * k,
            monomial: self.monomial.scale(&kr),
            binomials: self
                .binomials
                .iter()
                .filter(|_| k != 0)
                .map(|(e, m)| (e.clone(), m * k))
                .collect(),
        })
    }

    /// Rewrites every exponent under `var := value`.
    ///
    /// A numerator binomial whose exponent becomes zero makes the result zero;
    /// a denominator binomial doing so is a pole and must be handled by a
    /// residue instead.
    pub fn substitute(&self, var: VarId, value: &AffineExponent) -> Result<FactoredForm, QcasError> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let rewritten: Vec<(AffineExponent, i64)> = self
            .binomials
            .iter()
            .map(|(e, k)| (e.substitute(var, value), *k))
            .collect();
        if rewritten.iter().any(|(e, k)| e.is_zero() && *k < 0) {
            return Err(QcasError::PoleAtSubstitution);
        }
        let mut out = FactoredForm {
            constant: self.constant.clone(),
            log_grade: self.log_grade,
            monomial: self.monomial.substitute(var, value),
            binomials: BTreeMap::new(),
        };
        for (e, k) in rewritten {
            out.push_binomial(e, k)?;
        }
        Ok(out)
    }

    /// Floating-point value at `q > 1` and a complex assignment of all variables.
    pub fn eval_numeric(
        &self,
        q: f64,
        assignment: &BTreeMap<VarId, Complex64>,
    ) -> Result<Complex64, QcasError> {
        if self.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let lq = q.ln();
        let qpow = |e: &AffineExponent| -> Result<Complex64, QcasError> {
            let x = e.eval_complex(assignment).ok_or(QcasError::UnassignedVariable)?;
            Ok((x * lq).exp())
        };
        let mut acc = Complex64::new(to_f64(&self.constant) * lq.powi(self.log_grade as i32), 0.0);
        acc *= qpow(&self.monomial)?;
        for (e, k) in &self.binomials {
            let b = Complex64::new(1.0, 0.0) - qpow(e)?;
            if *k < 0 && b.norm() < NUMERIC_POLE_TOL {
                return Err(QcasError::DivisionByZero);
            }
            acc *= b.powi(*k as i32);
        }
        Ok(acc)
    }

    /// Exact value at a rational `q` for a variable-free, log-free form with
    /// integer exponents. `None` when that does not apply.
    pub fn eval_exact(&self, q: &Rational) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.log_grade != 0 || !self.monomial.is_constant() {
            return None;
        }
        let int_pow = |e: &AffineExponent| -> Option<Rational> {
            if !e.is_constant() || !e.constant_part().is_integer() {
                return None;
            }
            let n: i32 = e.constant_part().to_integer().try_into().ok()?;
            Some(Pow::pow(q, n))
        };
        let mut acc = self.constant.clone() * int_pow(&self.monomial)?;
        for (e, k) in &self.binomials {
            let b = Rational::one() - int_pow(e)?;
            if b.is_zero() {
                return None;
            }
            acc *= Pow::pow(&b, *k as i32);
        }
        Some(acc)
    }
}

/// Magnitude below which a denominator binomial is treated as a pole.
pub const NUMERIC_POLE_TOL: f64 = 1e-12;

impl Mul for &FactoredForm {
    type Output = FactoredForm;
    fn mul(self, rhs: &FactoredForm) -> FactoredForm {
        FactoredForm::mul(self, rhs)
    }
}

impl fmt::Display for FactoredForm {
    /// Canonical text: `c * logq^g * q^(E0) * (1 - q^(E))^k * ...`, with the
    /// trivial log and monomial parts omitted and binomials in ascending order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        if self.is_zero() {
            return Ok(());
        }
        if self.log_grade != 0 {
            write!(f, " * logq^{}", self.log_grade)?;
        }
        if !self.monomial.is_zero() {
            write!(f, " * q^({})", self.monomial)?;
        }
        for (e, k) in &self.binomials {
            write!(f, " * (1 - q^({e}))^{k}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcas::rat;

    fn z() -> AffineExponent {
        AffineExponent::var(VarId(1))
    }

    #[test]
    fn inverse_pair_cancels() {
        let b = FactoredForm::binomial(z());
        assert!(b.mul(&b.inv().unwrap()).is_one());
    }

    #[test]
    fn orientation_rule() {
        let f = FactoredForm::binomial(-z()).mul(&FactoredForm::one());
        let expected = FactoredForm::q_power(-z()).mul(&FactoredForm::binomial(z())).scale(&rat(-1, 1));
        assert_eq!(f, expected);
        assert_eq!(f.to_string(), "-1 * q^(-z1) * (1 - q^(z1))^1");
    }

    #[test]
    fn multiplicities_add() {
        let a = AffineExponent::int(1);
        let t = AffineExponent::int(2);
        let x = FactoredForm::q_power(a.clone()).mul(&FactoredForm::binomial(&t - &z()));
        let sq = x.mul(&x);
        let expected = FactoredForm::q_power(a.scale(&rat(2, 1)))
            .mul(&FactoredForm::binomial_pow(&t - &z(), 2).unwrap());
        assert_eq!(sq, expected);
        assert_eq!(sq.binomials().count(), 1);
        assert_eq!(sq.binomials().next().unwrap().1, 2);
    }

    #[test]
    fn substitute_vanishing_binomial() {
        let t = AffineExponent::int(3);
        let e = &z() - &t;
        let den = FactoredForm::binomial_pow(e.clone(), -1).unwrap();
        assert_eq!(den.substitute(VarId(1), &t), Err(QcasError::PoleAtSubstitution));
        let num = FactoredForm::binomial(e);
        assert!(num.substitute(VarId(1), &t).unwrap().is_zero());
    }

    #[test]
    fn substitute_identity_case() {
        let f = FactoredForm::q_power(AffineExponent::var(VarId(1)) + AffineExponent::var(VarId(2)));
        let g = f.substitute(VarId(2), &AffineExponent::zero()).unwrap();
        assert_eq!(g, FactoredForm::q_power(AffineExponent::var(VarId(1))));
    }

    #[test]
    fn numeric_examples() {
        let mut asg = BTreeMap::new();
        asg.insert(VarId(1), Complex64::new(1.0, 0.0));
        let v = FactoredForm::binomial(z()).eval_numeric(2.0, &asg).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);

        let f = FactoredForm::log_power(-1);
        let v = f.eval_numeric(std::f64::consts::E, &BTreeMap::new()).unwrap();
        assert!((v.re - 1.0).abs() < 1e-15);

        // (1 - q^-z)(1 - q^z) with q^z = -1
        asg.insert(VarId(1), Complex64::new(0.0, std::f64::consts::PI / 2f64.ln()));
        let f = FactoredForm::binomial(-z()).mul(&FactoredForm::binomial(z()));
        let v = f.eval_numeric(2.0, &asg).unwrap();
        assert!((v - Complex64::new(4.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn numeric_pole_is_reported() {
        let mut asg = BTreeMap::new();
        asg.insert(VarId(1), Complex64::new(0.0, 0.0));
        let f = FactoredForm::binomial_pow(z(), -1).unwrap();
        assert_eq!(f.eval_numeric(2.0, &asg), Err(QcasError::DivisionByZero));
    }

    #[test]
    fn exact_evaluation() {
        // q (q - 1)(q^2 - 1) at q = 2
        let f = FactoredForm::q_power(AffineExponent::int(1))
            .mul(&FactoredForm::q_minus_one(AffineExponent::int(1)))
            .mul(&FactoredForm::q_minus_one(AffineExponent::int(2)));
        assert_eq!(f.eval_exact(&rat(2, 1)), Some(rat(6, 1)));
        let half = FactoredForm::q_power(AffineExponent::constant(rat(1, 2)));
        assert_eq!(half.eval_exact(&rat(4, 1)), None);
    }
}
