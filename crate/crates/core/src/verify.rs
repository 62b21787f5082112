//! Symbolic identity suites over a parameter grid.

use std::fmt;
use std::str::FromStr;

use crate::coords;
use crate::degree;
use crate::fault::Fault;
use crate::model::SetupParams;
use crate::mu::{self, MuError};
use crate::qcas::{AffineExponent, Rational};
use crate::report::CheckReport;
use crate::resdata;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Pairing,
    Ratio,
    Residue,
    Theorem,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Pairing, Suite::Ratio, Suite::Residue, Suite::Theorem];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pairing => "pairing",
            Suite::Ratio => "ratio",
            Suite::Residue => "residue",
            Suite::Theorem => "theorem",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

/// Parameter grid. `t_set = None` means every divisor of `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub d_max: u32,
    pub m_set: Vec<u32>,
    pub t_set: Option<Vec<u32>>,
    pub a_set: Vec<u32>,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            d_max: 6,
            m_set: vec![1, 2, 3, 6],
            t_set: None,
            a_set: vec![0, 1, 2],
        }
    }
}

impl Grid {
    /// Valid cases sorted by `(m, d, t, a)`. Pairs with `t > m` are skipped.
    pub fn cases(&self) -> Vec<SetupParams> {
        let mut keys = Vec::new();
        for &m in &self.m_set {
            let ts: Vec<u32> = match &self.t_set {
                Some(ts) => ts.iter().copied().filter(|&t| t >= 1 && t <= m).collect(),
                None => (1..=m).filter(|t| m % t == 0).collect(),
            };
            for d in 1..=self.d_max {
                for &t in &ts {
                    for &a in &self.a_set {
                        keys.push((m, d, t, a));
                    }
                }
            }
        }
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|(m, d, t, a)| SetupParams::new(m.into(), d.into(), t.into(), a.into()).ok())
            .collect()
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.d_max < 1 {
            return Err("d-max must be >= 1".into());
        }
        if self.m_set.is_empty() || self.a_set.is_empty() || self.m_set.contains(&0) {
            return Err("m-set and a-set must be nonempty, m >= 1".into());
        }
        if let Some(ts) = &self.t_set {
            if ts.is_empty() || ts.contains(&0) {
                return Err("t-set must be nonempty, t >= 1".into());
            }
        }
        Ok(())
    }
}

fn case_name(kind: &str, p: &SetupParams) -> String {
    format!("{kind} m={} d={} t={} a={}", p.m(), p.d(), p.t(), p.a())
}

/// `t <alpha_l^v, sum z_j alpha~_j> = z_l - (d-l-1)/(d-l) z_{l+1}` for every
/// `l`, and the residue point lands on `((d-1)/2, ..., (1-d)/2)`.
pub fn check_pairing(p: &SetupParams) -> CheckReport {
    CheckReport::run(case_name("pairing", p), || -> Result<(bool, String), MuError> {
        let d = p.d();
        let lam = coords::z_to_s(p, &coords::z_vars(p))?;
        for l in 1..d {
            let got = coords::pairing_coroot(p, l, &lam)?.scale(&p.t_rat());
            let mut want = AffineExponent::var(coords::z(l));
            if l + 1 < d {
                let c = Rational::new(((d - l - 1) as i64).into(), ((d - l) as i64).into());
                want = want - AffineExponent::term(coords::z(l + 1), c);
            }
            if got != want {
                return Ok((false, format!("l={l}: {got} != {want}")));
            }
        }
        let point = coords::discrete_point(p);
        let want: Vec<Rational> = (1..=d as i64)
            .map(|k| Rational::new((d as i64 + 1 - 2 * k).into(), 2.into()))
            .collect();
        if point.rationals().as_deref() != Some(&want[..]) {
            return Ok((false, "residue point mismatch".into()));
        }
        Ok((true, "1".into()))
    })
}

/// Telescoped pair products against the closed level ratio at every level.
pub fn check_ratio(p: &SetupParams) -> CheckReport {
    CheckReport::run(case_name("ratio", p), || -> Result<(bool, String), MuError> {
        for l in 2..=p.d() {
            let z = coords::z(l - 1);
            let tele = mu::mu_level_ratio_telescoped(p, l, z)?;
            let closed = mu::mu_level_ratio_closed(p, l, z)?;
            let quotient = tele.div(&closed)?;
            if !quotient.is_one() {
                return Ok((false, format!("l={l}: {quotient}")));
            }
        }
        Ok((true, "1".into()))
    })
}

/// The fully specialized residue of `mu` against its closed form.
pub fn check_residue(p: &SetupParams, fault: Option<Fault>) -> CheckReport {
    CheckReport::run(case_name("residue", p), || -> Result<(bool, String), MuError> {
        let got = resdata::res_a1_mu_with(p, fault)?;
        let quotient = got.div(&resdata::res_a1_mu_closed(p))?;
        if got.log_grade() != 0 {
            return Ok((false, format!("log-grade {}", got.log_grade())));
        }
        Ok((quotient.is_one(), quotient.to_string()))
    })
}

pub fn run_case(suite: Suite, p: &SetupParams, fault: Option<Fault>) -> CheckReport {
    match suite {
        Suite::Pairing => check_pairing(p),
        Suite::Ratio => check_ratio(p),
        Suite::Residue => check_residue(p, fault),
        Suite::Theorem => degree::verify_theorem(p, fault),
    }
}

/// One report per grid case, in case order.
pub fn run_suite(suite: Suite, grid: &Grid, fault: Option<Fault>) -> Vec<CheckReport> {
    grid.cases().iter().map(|p| run_case(suite, p, fault)).collect()
}
