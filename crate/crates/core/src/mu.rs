//! The Harish-Chandra mu-function on the orbit of `sigma x ... x sigma`.
//!
//! `mu` is the product over block pairs `i < j` of a rank-one factor in
//! `x = s_i - s_j`:
//!
//! ```text
//! q^(a+2t) (1 - q^(t x)) (1 - q^(-t x)) / ((1 - q^(t(x+1))) (1 - q^(t(1-x))))
//! ```
//!
//! The per-pair constant `q^(a+2t)` is the one for which the product of the
//! pairs `(l-1, j)`, `j = l..d`, at the nested point reproduces the closed
//! level ratio `mu^{M_{l-1}} / mu^{M_l}` exactly; `telescoping_matches_closed`
//! below checks this.

use std::fmt;

use crate::coords::{self, Weight};
use crate::model::{ModelError, SetupParams};
use crate::qcas::{AffineExponent, FactoredForm, QcasError, Rational, VarId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MuError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Qcas(#[from] QcasError),
}

/// The locus `s_i - s_j = level` for blocks `i < j`, `level` in `{-1, 0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PoleHyperplane {
    pub i: u32,
    pub j: u32,
    pub level: i8,
}

impl PoleHyperplane {
    /// Membership of a numeric weight; symbolic weights are never on a hyperplane.
    pub fn contains(&self, lambda: &Weight) -> bool {
        let diff = lambda.difference(self.i as usize, self.j as usize);
        diff.is_constant() && *diff.constant_part() == Rational::from_integer(self.level.into())
    }
}

impl fmt::Display for PoleHyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{} - s{} = {}", self.i, self.j, self.level)
    }
}

/// Rank-one factor at `x` (in block units, so the exponents carry `t x`).
/// A pole at `x = +-1` is reported as `PoleAtSubstitution`.
pub fn rank_one_factor(p: &SetupParams, x: &AffineExponent) -> Result<FactoredForm, QcasError> {
    let t = p.t_rat();
    let tx = x.scale(&t);
    let tee = AffineExponent::constant(t.clone());
    let head = FactoredForm::q_power(AffineExponent::int(p.a() as i64) + tee.scale(&Rational::from_integer(2.into())));
    let num = FactoredForm::binomial(tx.clone()).mul(&FactoredForm::binomial(-&tx));
    let den = FactoredForm::binomial_pow(&tx + &tee, -1)?.mul(&FactoredForm::binomial_pow(&tee - &tx, -1)?);
    Ok(head.mul(&num).mul(&den))
}

/// Product of rank-one factors over all block pairs of `lambda`. A pole in
/// any pair is an error even when another pair vanishes.
pub fn mu_full(p: &SetupParams, lambda: &Weight) -> Result<FactoredForm, QcasError> {
    let d = lambda.len();
    let mut acc = FactoredForm::one();
    for i in 1..=d {
        for j in i + 1..=d {
            acc = acc.mul(&rank_one_factor(p, &lambda.difference(i, j))?);
        }
    }
    Ok(acc)
}

/// `mu` as a function of the residue coordinates `z_1, ..., z_{d-1}`.
pub fn mu_in_z(p: &SetupParams) -> Result<FactoredForm, MuError> {
    let lambda = coords::z_to_s(p, &coords::z_vars(p))?;
    Ok(mu_full(p, &lambda)?)
}

fn check_level(p: &SetupParams, l: u32) -> Result<(), ModelError> {
    if l < 2 || l > p.d() {
        return Err(ModelError::OutOfRange {
            index: l as i64,
            lo: 2,
            hi: p.d() as i64,
        });
    }
    Ok(())
}

/// The closed level ratio in the variable `z`:
///
/// ```text
/// q^((d-l+1)a) (1 - q^(T - z)) (1 - q^(T + z)) / ((1 - q^(-T - t - z)) (1 - q^(-T - t + z)))
/// ```
///
/// with `T = t (d-l)/2`.
pub fn mu_level_ratio_closed(p: &SetupParams, l: u32, z: VarId) -> Result<FactoredForm, MuError> {
    check_level(p, l)?;
    let zz = AffineExponent::var(z);
    let big_t = AffineExponent::constant(Rational::new(
        (p.t() as i64 * (p.d() - l) as i64).into(),
        2.into(),
    ));
    let tee = AffineExponent::int(p.t() as i64);
    let shifted = -(&big_t + &tee);
    let f = FactoredForm::q_power(AffineExponent::int(((p.d() - l + 1) * p.a()) as i64))
        .mul(&FactoredForm::binomial(&big_t - &zz))
        .mul(&FactoredForm::binomial(&big_t + &zz))
        .mul(&FactoredForm::binomial_pow(&shifted - &zz, -1)?)
        .mul(&FactoredForm::binomial_pow(&shifted + &zz, -1)?);
    Ok(f)
}

/// The same ratio as the product of the pairs `(l-1, j)`, `j = l..d`, at
/// `x_j = z/t - (d-l)/2 + (j-l)`.
pub fn mu_level_ratio_telescoped(p: &SetupParams, l: u32, z: VarId) -> Result<FactoredForm, MuError> {
    check_level(p, l)?;
    let base = AffineExponent::term(z, Rational::new(1.into(), (p.t() as i64).into()))
        - AffineExponent::constant(Rational::new(((p.d() - l) as i64).into(), 2.into()));
    let mut acc = FactoredForm::one();
    for j in l..=p.d() {
        let x = &base + &AffineExponent::int((j - l) as i64);
        acc = acc.mul(&rank_one_factor(p, &x)?);
    }
    Ok(acc)
}

/// All hyperplanes `s_i - s_j in {0, 1, -1}`, `1 <= i < j <= d`.
pub fn pole_hyperplanes(p: &SetupParams) -> Vec<PoleHyperplane> {
    let d = p.d();
    let mut out = Vec::new();
    for i in 1..=d {
        for j in i + 1..=d {
            for level in [0, 1, -1] {
                out.push(PoleHyperplane { i, j, level });
            }
        }
    }
    out
}

/// Hyperplanes through a numeric weight.
pub fn hyperplanes_through(p: &SetupParams, lambda: &Weight) -> Vec<PoleHyperplane> {
    pole_hyperplanes(p)
        .into_iter()
        .filter(|h| h.contains(lambda))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcas::rat;

    fn zv(l: u32) -> AffineExponent {
        AffineExponent::var(VarId(l))
    }

    #[test]
    fn d2_rank_one_matches_closed_ratio() {
        for t in 1..=3 {
            for a in 0..=2 {
                let p = SetupParams::new(3, 2, t, a).unwrap();
                let x = zv(1).scale(&Rational::new(1.into(), t.into()));
                let lhs = rank_one_factor(&p, &x).unwrap();
                let rhs = mu_level_ratio_closed(&p, 2, VarId(1)).unwrap();
                assert_eq!(lhs, rhs, "t={t} a={a}");
            }
        }
    }

    #[test]
    fn rank_one_vanishes_at_origin() {
        let p = SetupParams::new(1, 2, 1, 0).unwrap();
        assert!(rank_one_factor(&p, &AffineExponent::zero()).unwrap().is_zero());
        assert_eq!(
            rank_one_factor(&p, &AffineExponent::int(1)),
            Err(QcasError::PoleAtSubstitution)
        );
    }

    #[test]
    fn closed_ratio_example_d3_l2_t2() {
        let p = SetupParams::new(2, 3, 2, 1).unwrap();
        let z = zv(1);
        let expected = FactoredForm::q_power(AffineExponent::int(2))
            .mul(&FactoredForm::binomial(&AffineExponent::int(1) - &z))
            .mul(&FactoredForm::binomial(&AffineExponent::int(1) + &z))
            .mul(&FactoredForm::binomial_pow(&AffineExponent::int(-3) - &z, -1).unwrap())
            .mul(&FactoredForm::binomial_pow(&AffineExponent::int(-3) + &z, -1).unwrap());
        assert_eq!(mu_level_ratio_closed(&p, 2, VarId(1)).unwrap(), expected);
    }

    #[test]
    fn closed_ratio_is_even() {
        let p = SetupParams::new(2, 4, 2, 1).unwrap();
        for l in 2..=4 {
            let f = mu_level_ratio_closed(&p, l, VarId(1)).unwrap();
            let g = f.substitute(VarId(1), &-zv(1)).unwrap();
            assert_eq!(f, g);
        }
    }

    #[test]
    fn telescoping_matches_closed() {
        for d in 2..=6 {
            for t in 1..=3 {
                for a in 0..=2 {
                    let p = SetupParams::new(6, d, t, a).unwrap();
                    for l in 2..=d as u32 {
                        let z = VarId(l - 1);
                        assert_eq!(
                            mu_level_ratio_telescoped(&p, l, z).unwrap(),
                            mu_level_ratio_closed(&p, l, z).unwrap(),
                            "d={d} t={t} a={a} l={l}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn level_out_of_range() {
        let p = SetupParams::new(2, 3, 1, 0).unwrap();
        assert!(mu_level_ratio_closed(&p, 1, VarId(1)).is_err());
        assert!(mu_level_ratio_telescoped(&p, 4, VarId(1)).is_err());
    }

    #[test]
    fn mu_full_small_cases() {
        let p = SetupParams::new(1, 1, 1, 0).unwrap();
        assert!(mu_in_z(&p).unwrap().is_one());
        let p = SetupParams::new(2, 2, 2, 1).unwrap();
        assert_eq!(mu_in_z(&p).unwrap(), mu_level_ratio_closed(&p, 2, VarId(1)).unwrap());
    }

    #[test]
    fn shift_invariance() {
        let p = SetupParams::new(1, 3, 1, 2).unwrap();
        let lam = coords::z_to_s(&p, &coords::z_vars(&p)).unwrap();
        let shifted = lam.shifted(&(zv(7) + AffineExponent::constant(rat(5, 3))));
        assert_eq!(mu_full(&p, &lam).unwrap(), mu_full(&p, &shifted).unwrap());
    }

    #[test]
    fn hyperplane_counts() {
        assert_eq!(pole_hyperplanes(&SetupParams::new(1, 2, 1, 0).unwrap()).len(), 3);
        assert_eq!(pole_hyperplanes(&SetupParams::new(1, 3, 1, 0).unwrap()).len(), 9);
        let p = SetupParams::new(1, 4, 1, 0).unwrap();
        let through = hyperplanes_through(&p, &coords::discrete_point(&p));
        for k in 1..4 {
            assert!(through.contains(&PoleHyperplane { i: k, j: k + 1, level: 1 }));
        }
    }
}
