//! Finite group orders, the constant `gamma(G/M)`, and the formal degree both
//! as the closed formula and as assembled from the residue of `mu`.

use std::fmt;

use num_traits::{One, Pow};

use crate::fault::Fault;
use crate::model::{DegSigma, ModelError, QMode, SetupParams};
use crate::mu::MuError;
use crate::qcas::{AffineExponent, FactoredForm, Rational};
use crate::report::CheckReport;
use crate::resdata;

/// A formal degree: `factored * degσ^sigma_power`, where `factored` is a
/// variable-free form in `q` of log-grade 0.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeResult {
    pub factored: FactoredForm,
    /// Power of the symbolic `degσ`; 0 once an exact `deg(sigma)` is folded in.
    pub sigma_power: u32,
    /// Value at `q` when `q` is numeric and `deg(sigma)` is exact.
    pub numeric: Option<f64>,
    /// Exact value when `q` is rational.
    pub exact: Option<Rational>,
}

impl DegreeResult {
    fn build(p: &SetupParams, form: FactoredForm) -> Self {
        let (factored, sigma_power) = match p.deg_sigma() {
            DegSigma::Symbolic => (form, p.d()),
            DegSigma::Exact(r) => (form.scale(&Pow::pow(r, p.d())), 0),
        };
        let exact = match (p.q(), sigma_power) {
            (QMode::Exact(q), 0) => factored.eval_exact(q),
            _ => None,
        };
        let numeric = match (p.q().as_f64(), sigma_power) {
            (Some(q), 0) => factored.eval_numeric(q, &Default::default()).ok().map(|z| z.re),
            _ => None,
        };
        DegreeResult {
            factored,
            sigma_power,
            numeric,
            exact,
        }
    }

    /// `self / other` when both carry the same power of `degσ`.
    pub fn quotient(&self, other: &DegreeResult) -> Option<FactoredForm> {
        (self.sigma_power == other.sigma_power)
            .then(|| self.factored.div(&other.factored).ok())
            .flatten()
    }
}

impl fmt::Display for DegreeResult {
    /// The factored part, then `degσ` or `degσ^k`; a unit factored part is
    /// omitted in front of `degσ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sigma = match self.sigma_power {
            0 => None,
            1 => Some("degσ".to_string()),
            k => Some(format!("degσ^{k}")),
        };
        match sigma {
            None => write!(f, "{}", self.factored),
            Some(s) if self.factored.is_one() => write!(f, "{s}"),
            Some(s) => write!(f, "{} * {s}", self.factored),
        }
    }
}

/// `|GL_n(F_q)| = q^(n(n-1)/2) PROD_{k=1..n} (q^k - 1)`.
pub fn gl_order(n: u32) -> Result<FactoredForm, ModelError> {
    if n < 1 {
        return Err(ModelError::OutOfRange {
            index: n as i64,
            lo: 1,
            hi: i64::MAX,
        });
    }
    let n = n as i64;
    let mut acc = FactoredForm::q_power(AffineExponent::int(n * (n - 1) / 2));
    for k in 1..=n {
        acc = acc.mul(&FactoredForm::q_minus_one(AffineExponent::int(k)));
    }
    Ok(acc)
}

/// `|GL_n(F_q)| / |GL_m(F_q)|^d * q^(mn - n^2)`.
pub fn gamma_factor(p: &SetupParams) -> FactoredForm {
    let (m, n) = (p.m() as i64, p.n() as i64);
    let big = gl_order(p.n()).expect("n >= 1");
    let small = gl_order(p.m()).expect("m >= 1").pow(p.d() as i64).expect("nonzero base");
    big.div(&small)
        .expect("nonzero base")
        .mul(&FactoredForm::q_power(AffineExponent::int(m * n - n * n)))
}

/// The closed formula for the formal degree of the discrete series.
pub fn closed_form_degree(p: &SetupParams) -> DegreeResult {
    let (d, t, a) = (p.d() as i64, p.t() as i64, p.a() as i64);
    let c = Pow::pow(&p.m_over_t(), p.d() - 1) / Rational::from_integer(d.into());
    let tri = d * (d - 1) / 2;
    let form = gamma_factor(p)
        .mul(&FactoredForm::constant(c))
        .mul(&FactoredForm::q_power(AffineExponent::int(a * tri)))
        .mul(&FactoredForm::q_power(AffineExponent::int(t * tri)))
        .mul(&FactoredForm::q_minus_one(AffineExponent::int(t)).pow(d).expect("nonzero base"))
        .mul(&FactoredForm::q_minus_one(AffineExponent::int(t * d)).inv().expect("nonzero base"));
    DegreeResult::build(p, form)
}

/// `gamma(G/M) deg(rho_d) |Stab(A_1)|^(-1) Res_{A_1} mu`, with
/// `deg(rho_d) = deg(sigma)^d` and a trivial stabilizer (the point is regular).
pub fn assemble_degree(p: &SetupParams) -> Result<DegreeResult, MuError> {
    assemble_degree_with(p, None)
}

pub fn assemble_degree_with(p: &SetupParams, fault: Option<Fault>) -> Result<DegreeResult, MuError> {
    let stab = Rational::one();
    let form = gamma_factor(p)
        .mul(&resdata::res_a1_mu_with(p, fault)?)
        .scale(&(Rational::one() / stab));
    Ok(DegreeResult::build(p, form))
}

/// Passes iff the assembled and closed degrees agree canonically; the detail
/// is the canonical quotient.
pub fn verify_theorem(p: &SetupParams, fault: Option<Fault>) -> CheckReport {
    let name = format!("theorem m={} d={} t={} a={}", p.m(), p.d(), p.t(), p.a());
    CheckReport::run(name, || -> Result<(bool, String), MuError> {
        let lhs = assemble_degree_with(p, fault)?;
        let rhs = closed_form_degree(p);
        let quotient = lhs.quotient(&rhs).unwrap_or_else(FactoredForm::zero);
        Ok((quotient.is_one(), quotient.to_string()))
    })
}
