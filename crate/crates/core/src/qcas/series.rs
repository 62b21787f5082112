//! Truncated Laurent expansion in `w = var - center` and residue extraction.
//!
//! Every factor is expanded with exact rational coefficients:
//!
//! * a binomial whose exponent vanishes at the center, `E = e*w`:
//!   `(1 - q^(e w))^k = (-e log q w)^k * g(e log q w)^k`, `g(u) = (e^u - 1)/u`;
//! * any other binomial `(1 - q^(E0) e^(e log q w))^k`;
//! * the monomial `q^(E0) e^(e log q w)`.
//!
//! Each `w^n` comes with `(log q)^n`, so a residue lowers the log-grade by exactly one.

use num_traits::{One, Pow, Zero};

use super::affine::{AffineExponent, VarId};
use super::form::FactoredForm;
use super::sum::SumForm;
use super::{QcasError, Rational};

/// `sum_{n >= min_order} c_n w^n`, known for `n < truncation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSeries {
    var: VarId,
    center: Rational,
    min_order: i64,
    coefficients: Vec<SumForm>,
    truncation: i64,
}

impl LocalSeries {
    pub fn var(&self) -> VarId {
        self.var
    }

    pub fn center(&self) -> &Rational {
        &self.center
    }

    pub fn min_order(&self) -> i64 {
        self.min_order
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    /// Coefficient of `w^order`; zero below `min_order`.
    pub fn coefficient(&self, order: i64) -> Result<SumForm, QcasError> {
        if order >= self.truncation {
            return Err(QcasError::BeyondTruncation {
                order,
                truncation: self.truncation,
            });
        }
        if order < self.min_order {
            return Ok(SumForm::zero());
        }
        Ok(self
            .coefficients
            .get((order - self.min_order) as usize)
            .cloned()
            .unwrap_or_default())
    }

    /// Expansion of a single factored form, with all orders below `truncation`.
    pub fn of_form(
        f: &FactoredForm,
        var: VarId,
        center: &Rational,
        truncation: i64,
    ) -> Result<LocalSeries, QcasError> {
        let point = AffineExponent::constant(center.clone());
        let mut min_order = 0i64;
        let mut prefactor = FactoredForm::constant(f.constant_factor().clone())
            .mul(&FactoredForm::log_power(f.log_grade()));
        let mut factors: Vec<(Vec<SumForm>, i64)> = Vec::new();

        // The order of the leading term must be known before the length.
        let mut parts = Vec::new();
        for (e, k) in f.binomials() {
            let (slope, _) = e.split(var);
            let at_center = e.substitute(var, &point);
            if at_center.is_zero() {
                min_order += k;
                // (-slope * log q)^k
                prefactor = prefactor
                    .mul(&FactoredForm::constant(Pow::pow(&-slope.clone(), k as i32)))
                    .mul(&FactoredForm::log_power(k));
                parts.push(Part::Vanishing { slope, k });
            } else if slope.is_zero() {
                prefactor = prefactor.mul(&FactoredForm::binomial_pow(at_center, k)?);
            } else {
                parts.push(Part::Binomial { base: at_center, slope, k });
            }
        }
        let (mslope, _) = f.monomial().split(var);
        prefactor = prefactor.mul(&FactoredForm::q_power(f.monomial().substitute(var, &point)));

        let len = (truncation - min_order).max(0) as usize;
        if !mslope.is_zero() {
            factors.push((exp_series(&mslope, len), 1));
        }
        for part in parts {
            match part {
                Part::Vanishing { slope, k } => factors.push((expm1_over_u_series(&slope, len), k)),
                Part::Binomial { base, slope, k } => factors.push((binomial_series(&base, &slope, len), k)),
            }
        }

        let mut acc = unit_series(len);
        for (s, k) in factors {
            let p = pow_series(&s, k, len)?;
            acc = mul_series(&acc, &p, len);
        }
        let coefficients = acc.into_iter().map(|c| c.mul_form(&prefactor)).collect();
        Ok(LocalSeries {
            var,
            center: center.clone(),
            min_order,
            coefficients,
            truncation,
        })
    }

    /// Pole order of `f` at `var = center` for generic values of the other
    /// variables; negative for a zero.
    pub fn pole_order(f: &FactoredForm, var: VarId, center: &Rational) -> i64 {
        let point = AffineExponent::constant(center.clone());
        -f.binomials()
            .filter(|(e, _)| e.substitute(var, &point).is_zero())
            .map(|(_, k)| k)
            .sum::<i64>()
    }
}

enum Part {
    Vanishing { slope: Rational, k: i64 },
    Binomial { base: AffineExponent, slope: Rational, k: i64 },
}

fn factorial(n: usize) -> Rational {
    let mut acc = num_bigint::BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

fn unit_series(len: usize) -> Vec<SumForm> {
    let mut s = vec![SumForm::zero(); len];
    if let Some(c) = s.first_mut() {
        *c = FactoredForm::one().into();
    }
    s
}

/// `(slope log q)^n / denom`.
fn power_term(slope: &Rational, n: usize, denom: Rational) -> FactoredForm {
    FactoredForm::constant(Pow::pow(slope, n as i32) / denom).mul(&FactoredForm::log_power(n as i64))
}

/// `exp(slope log q w)`.
fn exp_series(slope: &Rational, len: usize) -> Vec<SumForm> {
    (0..len).map(|n| power_term(slope, n, factorial(n)).into()).collect()
}

/// `g(slope log q w)` with `g(u) = (e^u - 1)/u = sum u^n/(n+1)!`.
fn expm1_over_u_series(slope: &Rational, len: usize) -> Vec<SumForm> {
    (0..len).map(|n| power_term(slope, n, factorial(n + 1)).into()).collect()
}

/// `1 - q^base exp(slope log q w)`.
fn binomial_series(base: &AffineExponent, slope: &Rational, len: usize) -> Vec<SumForm> {
    let mono = FactoredForm::q_power(base.clone());
    (0..len)
        .map(|n| {
            if n == 0 {
                FactoredForm::binomial(base.clone()).into()
            } else {
                power_term(slope, n, -factorial(n)).mul(&mono).into()
            }
        })
        .collect()
}

fn mul_series(a: &[SumForm], b: &[SumForm], len: usize) -> Vec<SumForm> {
    (0..len)
        .map(|n| {
            (0..=n).fold(SumForm::zero(), |acc, i| match (a.get(i), b.get(n - i)) {
                (Some(x), Some(y)) if !x.is_zero() && !y.is_zero() => acc.add(&x.mul(y)),
                _ => acc,
            })
        })
        .collect()
}

/// `s^k` for a series whose leading coefficient is a single invertible form,
/// by the recurrence `p_n = 1/(n s_0) sum_{i=1}^n (k i - n + i) s_i p_{n-i}`.
fn pow_series(s: &[SumForm], k: i64, len: usize) -> Result<Vec<SumForm>, QcasError> {
    if len == 0 {
        return Ok(Vec::new());
    }
    let lead = s[0].as_factored().ok_or(QcasError::NotFactored)?;
    let lead_inv = lead.inv()?;
    let mut p = vec![SumForm::from(lead.pow(k)?)];
    for n in 1..len {
        let mut acc = SumForm::zero();
        for i in 1..=n {
            let w = k * i as i64 - (n - i) as i64;
            if w == 0 {
                continue;
            }
            if let Some(si) = s.get(i) {
                acc = acc.add(&si.mul(&p[n - i]).scale(&Rational::from_integer(w.into())));
            }
        }
        let scale = Rational::one() / Rational::from_integer((n as i64).into());
        p.push(acc.mul_form(&lead_inv).scale(&scale));
    }
    Ok(p)
}

/// Residue of `f dz` at `var = point`. Regular points give zero.
pub fn residue(f: &SumForm, var: VarId, point: &Rational) -> Result<SumForm, QcasError> {
    let mut out = SumForm::zero();
    for term in f.terms() {
        if LocalSeries::pole_order(term, var, point) <= 0 {
            continue;
        }
        let series = LocalSeries::of_form(term, var, point, 0)?;
        out = out.add(&series.coefficient(-1)?);
    }
    Ok(out)
}

/// Expansion of a sum, all orders below `truncation`.
pub fn expand(f: &SumForm, var: VarId, center: &Rational, truncation: i64) -> Result<LocalSeries, QcasError> {
    let pieces = f
        .terms()
        .iter()
        .map(|t| LocalSeries::of_form(t, var, center, truncation))
        .collect::<Result<Vec<_>, _>>()?;
    let min_order = pieces.iter().map(|p| p.min_order).min().unwrap_or(truncation).min(truncation);
    let mut coefficients = vec![SumForm::zero(); (truncation - min_order).max(0) as usize];
    for p in &pieces {
        for (i, c) in p.coefficients.iter().enumerate() {
            let idx = (p.min_order + i as i64 - min_order) as usize;
            coefficients[idx] = coefficients[idx].add(c);
        }
    }
    Ok(LocalSeries {
        var,
        center: center.clone(),
        min_order,
        coefficients,
        truncation,
    })
}
