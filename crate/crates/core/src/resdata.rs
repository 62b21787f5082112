//! Residue data: iterated residues along the nested subspaces `A_l` and the
//! fully specialized residue of `mu`.

use num_traits::Pow;

use crate::coords::{self, ResiduePlan};
use crate::fault::Fault;
use crate::model::{ModelError, SetupParams};
use crate::mu::{self, MuError};
use crate::qcas::{self, AffineExponent, FactoredForm, QcasError, Rational, SumForm};

/// `Res_{A_l} psi` as a function of `z_1, ..., z_{l-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueDatumResult {
    pub l: u32,
    /// Power of `log q` contributed by the prefactor, `d - l`.
    pub prefactor_log_grade: i64,
    pub value: SumForm,
}

/// Residues at `z_k = r_k` for the plan steps with `k >= stop_at`, innermost first.
pub fn iterated_residue(f: &SumForm, plan: &ResiduePlan, stop_at: u32) -> Result<SumForm, QcasError> {
    let mut acc = f.clone();
    for (v, r) in plan.steps().iter().filter(|(v, _)| v.0 >= stop_at) {
        if acc.is_zero() {
            break;
        }
        acc = qcas::residue(&acc, *v, r)?;
    }
    Ok(acc)
}

fn check_level(p: &SetupParams, l: u32) -> Result<(), ModelError> {
    if l < 1 || l > p.d() {
        return Err(ModelError::OutOfRange {
            index: l as i64,
            lo: 1,
            hi: p.d() as i64,
        });
    }
    Ok(())
}

/// `(m log q / t)^(d-l) / (d-l+1)` times the iterated residue down to `z_l`.
pub fn res_al(p: &SetupParams, psi: &SumForm, l: u32) -> Result<ResidueDatumResult, MuError> {
    res_al_with(p, psi, l, None)
}

pub fn res_al_with(p: &SetupParams, psi: &SumForm, l: u32, fault: Option<Fault>) -> Result<ResidueDatumResult, MuError> {
    check_level(p, l)?;
    let k = p.d() - l;
    let mut scalar: Rational = Pow::pow(&p.m_over_t(), k);
    if !Fault::drops_normalizer(fault, l) {
        scalar /= Rational::from_integer((k + 1).into());
    }
    let prefactor = FactoredForm::constant(scalar).mul(&FactoredForm::log_power(k as i64));
    let value = iterated_residue(psi, &coords::residue_plan(p), l)?.mul_form(&prefactor);
    Ok(ResidueDatumResult {
        l,
        prefactor_log_grade: k as i64,
        value,
    })
}

/// `Res_{A_1} mu` as a variable-free factored form.
pub fn res_a1_mu(p: &SetupParams) -> Result<FactoredForm, MuError> {
    res_a1_mu_with(p, None)
}

pub fn res_a1_mu_with(p: &SetupParams, fault: Option<Fault>) -> Result<FactoredForm, MuError> {
    let mu = SumForm::from(mu::mu_in_z(p)?);
    let r = res_al_with(p, &mu, 1, fault)?;
    Ok(r.value.as_factored().ok_or(QcasError::NotFactored)?)
}

/// `(m/t)^(d-1) (1/d) q^(a d(d-1)/2) q^(t d(d-1)/2) (q^t - 1)^d / (q^(td) - 1)`.
pub fn res_a1_mu_closed(p: &SetupParams) -> FactoredForm {
    let (d, t, a) = (p.d() as i64, p.t() as i64, p.a() as i64);
    let c = Pow::pow(&p.m_over_t(), p.d() - 1) / Rational::from_integer(d.into());
    let tri = d * (d - 1) / 2;
    let qt = FactoredForm::q_minus_one(AffineExponent::int(t));
    let qtd = FactoredForm::q_minus_one(AffineExponent::int(t * d));
    FactoredForm::constant(c)
        .mul(&FactoredForm::q_power(AffineExponent::int((a + t) * tri)))
        .mul(&qt.pow(d).expect("nonzero base"))
        .mul(&qtd.inv().expect("nonzero base"))
}

/// The residue chain taken in the order `z_1` first, after the unimodular
/// change `z_1 = w + z_2/2` that makes both poles through the residue point
/// coordinate hyperplanes. Only defined for `d = 3`.
pub fn res_a1_mu_reversed_d3(p: &SetupParams) -> Result<FactoredForm, MuError> {
    if p.d() != 3 {
        return Err(ModelError::InvalidParams(format!("reversed chain needs d=3, got d={}", p.d())).into());
    }
    let (z1, z2) = (coords::z(1), coords::z(2));
    let half = Rational::new(1.into(), 2.into());
    let sheared = mu::mu_in_z(p)?.substitute(z1, &(AffineExponent::var(z1) + AffineExponent::term(z2, half)))?;
    let t = p.t_rat();
    let mut acc = SumForm::from(sheared);
    acc = qcas::residue(&acc, z1, &t)?;
    acc = qcas::residue(&acc, z2, &t)?;
    let scalar = Pow::pow(&p.m_over_t(), 2u32) / Rational::from_integer(3.into());
    let f = acc.as_factored().ok_or(QcasError::NotFactored)?;
    Ok(f.mul(&FactoredForm::constant(scalar)).mul(&FactoredForm::log_power(2)))
}
