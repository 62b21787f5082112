//! Input parameters and the measures of the unramified character tori.

use std::fmt;

use num_traits::{One, Pow};
use thiserror::Error;

use crate::qcas::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("index {index} out of range {lo}..={hi}")]
    OutOfRange { index: i64, lo: i64, hi: i64 },
}

/// How `q` is to be treated.
#[derive(Debug, Clone, PartialEq)]
pub enum QMode {
    Symbolic,
    Exact(Rational),
    Float(f64),
}

impl QMode {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            QMode::Symbolic => None,
            QMode::Exact(r) => Some(crate::qcas::to_f64(r)),
            QMode::Float(x) => Some(*x),
        }
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::Symbolic => write!(f, "symbolic"),
            QMode::Exact(r) => write!(f, "{r}"),
            QMode::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Formal degree of the cuspidal representation: an opaque positive unit or a
/// positive rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegSigma {
    Symbolic,
    Exact(Rational),
}

/// Unvalidated parameters as they arrive from a caller.
#[derive(Debug, Clone, PartialEq)]
pub struct RawParams {
    pub m: i64,
    pub d: i64,
    pub t: i64,
    pub a: i64,
    pub q: QMode,
    pub deg_sigma: DegSigma,
}

impl RawParams {
    pub fn new(m: i64, d: i64, t: i64, a: i64) -> Self {
        RawParams {
            m,
            d,
            t,
            a,
            q: QMode::Symbolic,
            deg_sigma: DegSigma::Symbolic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamWarning {
    /// `t` does not divide `m`; the formulas stay well defined over the rationals.
    TorsionNotDividing { m: u32, t: u32 },
}

impl fmt::Display for ParamWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamWarning::TorsionNotDividing { m, t } => write!(f, "t={t} does not divide m={m}"),
        }
    }
}

/// Validated parameters: block size `m`, block count `d`, torsion number `t`
/// and pair conductor `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct SetupParams {
    m: u32,
    d: u32,
    t: u32,
    a: u32,
    q: QMode,
    deg_sigma: DegSigma,
    warnings: Vec<ParamWarning>,
}

pub fn validate(raw: RawParams) -> Result<SetupParams, ModelError> {
    let bad = |msg: String| Err(ModelError::InvalidParams(msg));
    if raw.m < 1 {
        return bad(format!("m must be >= 1, got {}", raw.m));
    }
    if raw.d < 1 {
        return bad(format!("d must be >= 1, got {}", raw.d));
    }
    if raw.t < 1 {
        return bad(format!("t must be >= 1, got {}", raw.t));
    }
    if raw.t > raw.m {
        return bad(format!("t must not exceed m, got t={} > m={}", raw.t, raw.m));
    }
    if raw.a < 0 {
        return bad(format!("a must be >= 0, got {}", raw.a));
    }
    if raw.m > u32::MAX as i64 || raw.d > u32::MAX as i64 || raw.a > u32::MAX as i64 {
        return bad("parameter too large".into());
    }
    match &raw.q {
        QMode::Exact(r) if *r <= Rational::one() => return bad(format!("q must be > 1, got {r}")),
        QMode::Float(x) if x.is_nan() || *x <= 1.0 || !x.is_finite() => return bad(format!("q must be > 1, got {x}")),
        _ => {}
    }
    if let DegSigma::Exact(r) = &raw.deg_sigma {
        if *r <= Rational::from_integer(0.into()) {
            return bad(format!("deg(sigma) must be positive, got {r}"));
        }
    }
    let (m, d, t, a) = (raw.m as u32, raw.d as u32, raw.t as u32, raw.a as u32);
    let mut warnings = Vec::new();
    if m % t != 0 {
        warnings.push(ParamWarning::TorsionNotDividing { m, t });
    }
    Ok(SetupParams {
        m,
        d,
        t,
        a,
        q: raw.q,
        deg_sigma: raw.deg_sigma,
        warnings,
    })
}

impl SetupParams {
    /// Symbolic `q` and `deg(sigma)`.
    pub fn new(m: i64, d: i64, t: i64, a: i64) -> Result<Self, ModelError> {
        validate(RawParams::new(m, d, t, a))
    }

    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn t(&self) -> u32 {
        self.t
    }
    pub fn a(&self) -> u32 {
        self.a
    }
    pub fn n(&self) -> u32 {
        self.m * self.d
    }
    pub fn q(&self) -> &QMode {
        &self.q
    }
    pub fn deg_sigma(&self) -> &DegSigma {
        &self.deg_sigma
    }
    pub fn warnings(&self) -> &[ParamWarning] {
        &self.warnings
    }

    pub fn with_q(mut self, q: QMode) -> Result<Self, ModelError> {
        self.q = q;
        let raw = self.to_raw();
        validate(raw)
    }

    pub fn with_deg_sigma(mut self, deg: DegSigma) -> Result<Self, ModelError> {
        self.deg_sigma = deg;
        validate(self.to_raw())
    }

    fn to_raw(&self) -> RawParams {
        RawParams {
            m: self.m as i64,
            d: self.d as i64,
            t: self.t as i64,
            a: self.a as i64,
            q: self.q.clone(),
            deg_sigma: self.deg_sigma.clone(),
        }
    }

    pub(crate) fn t_rat(&self) -> Rational {
        Rational::from_integer(self.t.into())
    }

    /// `m/t`.
    pub fn m_over_t(&self) -> Rational {
        Rational::new(self.m.into(), self.t.into())
    }

    fn check_level(&self, l: u32) -> Result<(), ModelError> {
        if l < 1 || l > self.d {
            return Err(ModelError::OutOfRange {
                index: l as i64,
                lo: 1,
                hi: self.d as i64,
            });
        }
        Ok(())
    }
}

/// Measures of `X^nr_0(M_l)` and of the unitary orbit `O_{l,0}` at level `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureReport {
    pub l: u32,
    pub chars_measure: Rational,
    pub orbit_measure: Rational,
}

/// `(d - l + 1) m^l`: the degree of the covering
/// `(z_1..z_l) -> (z_1^m, .., z_{l-1}^m, z_l^((d-l+1)m))` of the torus.
pub fn measure_chars(p: &SetupParams, l: u32) -> Result<Rational, ModelError> {
    p.check_level(l)?;
    let m = Rational::from_integer(p.m.into());
    Ok(Rational::from_integer((p.d - l + 1).into()) * Pow::pow(&m, l as i32))
}

/// `(d - l + 1) (m/t)^l`; each fibre of the orbit map has `t^l` points.
pub fn measure_orbit(p: &SetupParams, l: u32) -> Result<Rational, ModelError> {
    p.check_level(l)?;
    Ok(Rational::from_integer((p.d - l + 1).into()) * Pow::pow(&p.m_over_t(), l as i32))
}

pub fn measure_report(p: &SetupParams, l: u32) -> Result<MeasureReport, ModelError> {
    Ok(MeasureReport {
        l,
        chars_measure: measure_chars(p, l)?,
        orbit_measure: measure_orbit(p, l)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcas::rat;

    #[test]
    fn validate_examples() {
        let p = SetupParams::new(2, 3, 1, 1).unwrap();
        assert_eq!(p.n(), 6);
        assert!(p.warnings().is_empty());
        assert!(matches!(SetupParams::new(2, 2, 3, 0), Err(ModelError::InvalidParams(_))));
        let p = SetupParams::new(6, 2, 4, 0).unwrap();
        assert_eq!(p.warnings(), &[ParamWarning::TorsionNotDividing { m: 6, t: 4 }]);
    }

    #[test]
    fn rejects_bad_inputs() {
        for (m, d, t, a) in [(0, 1, 1, 0), (1, 0, 1, 0), (1, 1, 0, 0), (1, 1, 1, -1)] {
            assert!(SetupParams::new(m, d, t, a).is_err(), "{m} {d} {t} {a}");
        }
        let mut raw = RawParams::new(1, 1, 1, 0);
        raw.q = QMode::Float(1.0);
        assert!(validate(raw.clone()).is_err());
        raw.q = QMode::Exact(rat(1, 2));
        assert!(validate(raw.clone()).is_err());
        raw.q = QMode::Exact(rat(3, 1));
        raw.deg_sigma = DegSigma::Exact(rat(0, 1));
        assert!(validate(raw).is_err());
    }

    #[test]
    fn chars_measure_examples() {
        assert_eq!(measure_chars(&SetupParams::new(2, 3, 1, 0).unwrap(), 2).unwrap(), rat(8, 1));
        assert_eq!(measure_chars(&SetupParams::new(1, 1, 1, 0).unwrap(), 1).unwrap(), rat(1, 1));
        assert_eq!(measure_chars(&SetupParams::new(3, 2, 1, 0).unwrap(), 1).unwrap(), rat(6, 1));
    }

    #[test]
    fn orbit_measure_examples() {
        assert_eq!(measure_orbit(&SetupParams::new(2, 3, 2, 0).unwrap(), 2).unwrap(), rat(2, 1));
        assert_eq!(measure_orbit(&SetupParams::new(2, 3, 1, 0).unwrap(), 2).unwrap(), rat(8, 1));
        assert_eq!(measure_orbit(&SetupParams::new(6, 2, 3, 0).unwrap(), 1).unwrap(), rat(4, 1));
    }

    #[test]
    fn level_out_of_range() {
        let p = SetupParams::new(2, 3, 1, 0).unwrap();
        assert!(matches!(measure_chars(&p, 0), Err(ModelError::OutOfRange { .. })));
        assert!(matches!(measure_orbit(&p, 4), Err(ModelError::OutOfRange { .. })));
    }

    #[test]
    fn measure_relations() {
        for (m, t) in [(1, 1), (2, 1), (2, 2), (6, 3), (6, 4)] {
            for d in 1..=5 {
                let p = SetupParams::new(m, d, t, 0).unwrap();
                for l in 1..=d as u32 {
                    let chars = measure_chars(&p, l).unwrap();
                    let orbit = measure_orbit(&p, l).unwrap();
                    assert_eq!(orbit * Pow::pow(&p.t_rat(), l as i32), chars);
                }
                let top = measure_report(&p, d as u32).unwrap();
                assert_eq!(top.chars_measure, Pow::pow(&rat(m, 1), d as i32));
                assert_eq!(top.orbit_measure, Pow::pow(&p.m_over_t(), d as i32));
            }
        }
    }
}
