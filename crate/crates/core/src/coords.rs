//! Block coordinates `s`, the rescaled simple roots `alpha~_j` and the
//! residue coordinates `z`.
//!
//! A weight `lambda` is stored by its block exponents: `chi_lambda` is
//! `|det_m|^{s_1} x ... x |det_m|^{s_d}`. The coroot `alpha_l^v` pairs as
//! `s_l - s_{l+1}`. In these coordinates
//!
//! ```text
//! alpha~_j = (1/t) * ( 0,..,0, (d-j)/(d-j+1), -1/(d-j+1), .., -1/(d-j+1) )
//!                               ^ entry j
//! ```
//!
//! which gives `t <alpha_l^v, sum_j z_j alpha~_j> = z_l - (d-l-1)/(d-l) z_{l+1}`
//! with `z_d = 0`.

use crate::model::{ModelError, SetupParams};
use crate::qcas::{AffineExponent, Rational, VarId};

/// Block exponents of a weight. Entries may be affine in the `z` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    s: Vec<AffineExponent>,
}

impl Weight {
    pub fn new(s: Vec<AffineExponent>) -> Self {
        Weight { s }
    }

    pub fn from_rationals(s: impl IntoIterator<Item = Rational>) -> Self {
        Weight {
            s: s.into_iter().map(AffineExponent::constant).collect(),
        }
    }

    pub fn zero(d: usize) -> Self {
        Weight {
            s: vec![AffineExponent::zero(); d],
        }
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn entries(&self) -> &[AffineExponent] {
        &self.s
    }

    /// `s_i - s_j`, 1-based.
    pub fn difference(&self, i: usize, j: usize) -> AffineExponent {
        &self.s[i - 1] - &self.s[j - 1]
    }

    pub fn is_numeric(&self) -> bool {
        self.s.iter().all(|e| e.is_constant())
    }

    /// Numeric entries, if every entry is variable-free.
    pub fn rationals(&self) -> Option<Vec<Rational>> {
        self.is_numeric()
            .then(|| self.s.iter().map(|e| e.constant_part().clone()).collect())
    }

    /// Adds the same amount to every block (an unramified character of G).
    pub fn shifted(&self, c: &AffineExponent) -> Weight {
        Weight {
            s: self.s.iter().map(|e| e + c).collect(),
        }
    }

    /// Representative with `sum s_k = 0`; only meaningful when numeric.
    pub fn normalized(&self) -> Weight {
        if !self.is_numeric() || self.s.is_empty() {
            return self.clone();
        }
        let total = self
            .s
            .iter()
            .fold(AffineExponent::zero(), |acc, e| acc + e.clone());
        let mean = total.scale(&Rational::new(1.into(), (self.s.len() as i64).into()));
        self.shifted(&-mean)
    }

    pub fn permuted(&self, perm: &[usize]) -> Weight {
        Weight {
            s: perm.iter().map(|&i| self.s[i].clone()).collect(),
        }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            s: self.s.iter().zip(&other.s).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &AffineExponent) -> Weight {
        // only constant multipliers or constant weights stay affine
        assert!(k.is_constant() || self.is_numeric(), "product would not be affine");
        if k.is_constant() {
            let c = k.constant_part();
            Weight {
                s: self.s.iter().map(|e| e.scale(c)).collect(),
            }
        } else {
            Weight {
                s: self.s.iter().map(|e| k.scale(e.constant_part())).collect(),
            }
        }
    }
}

/// The nested residue specialization `z_{d-1} = r_{d-1}, ..., z_1 = r_1`,
/// innermost first, with `r_l = t (d-l+1)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResiduePlan {
    steps: Vec<(VarId, Rational)>,
}

impl ResiduePlan {
    pub fn steps(&self) -> &[(VarId, Rational)] {
        &self.steps
    }

    /// `r_l` for the variable `z_l`, if it is part of the plan.
    pub fn point(&self, l: u32) -> Option<&Rational> {
        self.steps.iter().find(|(v, _)| v.0 == l).map(|(_, r)| r)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// `z_l` as a variable.
pub fn z(l: u32) -> VarId {
    VarId(l)
}

/// `z_1, ..., z_{d-1}` as affine expressions.
pub fn z_vars(p: &SetupParams) -> Vec<AffineExponent> {
    (1..p.d()).map(|l| AffineExponent::var(z(l))).collect()
}

fn check_root(p: &SetupParams, j: u32) -> Result<(), ModelError> {
    if j < 1 || j >= p.d() {
        return Err(ModelError::OutOfRange {
            index: j as i64,
            lo: 1,
            hi: p.d() as i64 - 1,
        });
    }
    Ok(())
}

/// `alpha~_j` in block coordinates.
pub fn alpha_tilde(p: &SetupParams, j: u32) -> Result<Weight, ModelError> {
    check_root(p, j)?;
    let (d, t) = (p.d() as i64, p.t() as i64);
    let j = j as i64;
    let s = (1..=d)
        .map(|k| {
            let v = if k < j {
                Rational::from_integer(0.into())
            } else if k == j {
                Rational::new((d - j).into(), (t * (d - j + 1)).into())
            } else {
                Rational::new((-1).into(), (t * (d - j + 1)).into())
            };
            AffineExponent::constant(v)
        })
        .collect();
    Ok(Weight::new(s))
}

/// `<alpha_l^v, lambda> = s_l - s_{l+1}`.
pub fn pairing_coroot(p: &SetupParams, l: u32, lambda: &Weight) -> Result<AffineExponent, ModelError> {
    check_root(p, l)?;
    if lambda.len() != p.d() as usize {
        return Err(ModelError::InvalidParams(format!(
            "weight has {} entries, expected {}",
            lambda.len(),
            p.d()
        )));
    }
    Ok(lambda.difference(l as usize, l as usize + 1))
}

/// `sum_j z_j alpha~_j`.
pub fn z_to_s(p: &SetupParams, zs: &[AffineExponent]) -> Result<Weight, ModelError> {
    if zs.len() + 1 != p.d() as usize {
        return Err(ModelError::InvalidParams(format!(
            "expected {} residue coordinates, got {}",
            p.d() - 1,
            zs.len()
        )));
    }
    let mut acc = Weight::zero(p.d() as usize);
    for (j, zj) in zs.iter().enumerate() {
        let root = alpha_tilde(p, j as u32 + 1)?;
        acc = acc.add(&root.scale(zj));
    }
    Ok(acc)
}

/// `r_l = t (d - l + 1) / 2`.
pub fn residue_point(p: &SetupParams, l: u32) -> Rational {
    Rational::new((p.t() as i64 * (p.d() as i64 - l as i64 + 1)).into(), 2.into())
}

pub fn residue_plan(p: &SetupParams) -> ResiduePlan {
    ResiduePlan {
        steps: (1..p.d()).rev().map(|l| (z(l), residue_point(p, l))).collect(),
    }
}

/// The residue point `(r_1, ..., r_{d-1})` in block coordinates; equals
/// `((d-1)/2, (d-3)/2, ..., (1-d)/2)`.
pub fn discrete_point(p: &SetupParams) -> Weight {
    let rs: Vec<AffineExponent> = (1..p.d())
        .map(|l| AffineExponent::constant(residue_point(p, l)))
        .collect();
    z_to_s(p, &rs).expect("plan has d-1 points")
}
