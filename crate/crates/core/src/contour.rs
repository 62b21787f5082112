//! Trapezoidal quadrature of `mu` over shifted and unitary character tori,
//! comparing the shifted integral with the sum of residue-datum integrals.
//!
//! Every circle is parametrized as `z = R + i theta`, `theta` in
//! `[0, 2 pi / log q)`, so `(log q / 2 pi)^k` times the `k`-fold integral is
//! the plain mean over the node grid.

use num_complex::Complex64;
use thiserror::Error;

use crate::coords;
use crate::fault::Fault;
use crate::model::{self, ModelError, SetupParams};
use crate::mu::{self, MuError};
use crate::qcas::{to_f64, FactoredForm, QcasError, SumForm, VarId};
use crate::report::CheckReport;
use crate::resdata;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ContourError {
    #[error("invalid quadrature: {0}")]
    InvalidSpec(String),
    #[error("contour Re z = {shift:?} meets a pole hyperplane")]
    ShiftOnPole { shift: Vec<f64> },
    #[error("shift R_{l} = {value} is not beyond the residue point r_{l} = {r}")]
    OutsideChamber { l: u32, value: f64, r: f64 },
    #[error(transparent)]
    Mu(#[from] MuError),
}

impl From<QcasError> for ContourError {
    fn from(e: QcasError) -> Self {
        ContourError::Mu(e.into())
    }
}

impl From<ModelError> for ContourError {
    fn from(e: ModelError) -> Self {
        ContourError::Mu(e.into())
    }
}

/// Distance in `Re` below which a denominator is treated as lying on the contour.
pub const POLE_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub nodes: usize,
    pub q: f64,
    /// `R_1, ..., R_{d-1}`; `None` selects [`default_shift`].
    pub shift: Option<Vec<f64>>,
    pub tolerance: f64,
}

impl QuadratureSpec {
    pub fn new(nodes: usize, q: f64, tolerance: f64) -> Self {
        QuadratureSpec {
            nodes,
            q,
            shift: None,
            tolerance,
        }
    }

    pub fn with_shift(mut self, shift: Vec<f64>) -> Self {
        self.shift = Some(shift);
        self
    }

    fn validate(&self) -> Result<(), ContourError> {
        if self.nodes < 16 || !self.nodes.is_power_of_two() {
            return Err(ContourError::InvalidSpec(format!(
                "nodes must be a power of two >= 16, got {}",
                self.nodes
            )));
        }
        if self.q.is_nan() || self.q <= 1.0 || !self.q.is_finite() {
            return Err(ContourError::InvalidSpec(format!("q must be > 1, got {}", self.q)));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(ContourError::InvalidSpec("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// `R_l = r_l + t/2 + 1/4`.
pub fn default_shift(p: &SetupParams) -> Vec<f64> {
    (1..p.d())
        .map(|l| to_f64(&coords::residue_point(p, l)) + p.t() as f64 / 2.0 + 0.25)
        .collect()
}

/// A sum of factored forms with exponents flattened to `f64` coefficient
/// vectors over `z_1..z_k`, for fast repeated evaluation.
struct Compiled {
    terms: Vec<CompiledTerm>,
}

struct CompiledTerm {
    scale: f64,
    monomial: (f64, Vec<f64>),
    binomials: Vec<(f64, Vec<f64>, i32)>,
}

fn flatten(e: &crate::qcas::AffineExponent, k: usize, lq: f64) -> (f64, Vec<f64>) {
    let mut v = vec![0.0; k];
    for (var, c) in e.coeffs() {
        v[var.0 as usize - 1] = to_f64(c) * lq;
    }
    (to_f64(e.constant_part()) * lq, v)
}

impl Compiled {
    fn new(f: &SumForm, k: usize, q: f64) -> Self {
        let lq = q.ln();
        let terms = f
            .terms()
            .iter()
            .map(|t| CompiledTerm {
                scale: to_f64(t.constant_factor()) * lq.powi(t.log_grade() as i32),
                monomial: flatten(t.monomial(), k, lq),
                binomials: t
                    .binomials()
                    .map(|(e, m)| {
                        let (c, v) = flatten(e, k, lq);
                        (c, v, m as i32)
                    })
                    .collect(),
            })
            .collect();
        Compiled { terms }
    }

    fn eval(&self, z: &[Complex64]) -> Complex64 {
        let lin = |(c, v): (&f64, &Vec<f64>)| -> Complex64 {
            v.iter().zip(z).fold(Complex64::new(*c, 0.0), |acc, (a, x)| acc + x * *a)
        };
        let mut sum = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let mut acc = Complex64::new(t.scale, 0.0) * lin((&t.monomial.0, &t.monomial.1)).exp();
            for (c, v, m) in &t.binomials {
                acc *= (Complex64::new(1.0, 0.0) - lin((c, v)).exp()).powi(*m);
            }
            sum += acc;
        }
        sum
    }
}

/// Mean of `f` over the `k`-torus `Re z = base`, `n` nodes per circle, with
/// deterministic lexicographic accumulation.
fn torus_mean(f: &Compiled, base: &[f64], n: usize, period: f64) -> Complex64 {
    let k = base.len();
    if k == 0 {
        return f.eval(&[]);
    }
    let thetas: Vec<f64> = (0..n).map(|j| j as f64 * period / n as f64).collect();
    let mut idx = vec![0usize; k];
    let mut z: Vec<Complex64> = base.iter().map(|&r| Complex64::new(r, thetas[0])).collect();
    let mut sum = Complex64::new(0.0, 0.0);
    loop {
        sum += f.eval(&z);
        let mut pos = k;
        loop {
            if pos == 0 {
                return sum / (n as f64).powi(k as i32);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                z[pos] = Complex64::new(base[pos], thetas[idx[pos]]);
                break;
            }
            idx[pos] = 0;
            z[pos] = Complex64::new(base[pos], thetas[0]);
        }
    }
}

fn resolve_shift(p: &SetupParams, spec: &QuadratureSpec, mu: &FactoredForm) -> Result<Vec<f64>, ContourError> {
    let shift = spec.shift.clone().unwrap_or_else(|| default_shift(p));
    if shift.len() + 1 != p.d() as usize {
        return Err(ContourError::InvalidSpec(format!(
            "shift has {} entries, expected {}",
            shift.len(),
            p.d() - 1
        )));
    }
    let assignment = shift.iter().enumerate().map(|(i, &r)| (VarId(i as u32 + 1), r)).collect();
    if mu.denominator_binomials().any(|(e, _)| e.eval_real(&assignment).abs() < POLE_MARGIN) {
        return Err(ContourError::ShiftOnPole { shift });
    }
    for (i, &value) in shift.iter().enumerate() {
        let l = i as u32 + 1;
        let r = to_f64(&coords::residue_point(p, l));
        if value <= r {
            return Err(ContourError::OutsideChamber { l, value, r });
        }
    }
    Ok(shift)
}

fn period(q: f64) -> f64 {
    2.0 * std::f64::consts::PI / q.ln()
}

/// `(m/t)^d` times the mean of `mu` over the shifted torus `Re z = R`.
pub fn lhs_contour(p: &SetupParams, spec: &QuadratureSpec) -> Result<Complex64, ContourError> {
    spec.validate()?;
    let mu = mu::mu_in_z(p)?;
    let shift = resolve_shift(p, spec, &mu)?;
    let k = shift.len();
    let f = Compiled::new(&SumForm::from(mu), k, spec.q);
    let measure = to_f64(&model::measure_orbit(p, p.d())?);
    Ok(torus_mean(&f, &shift, spec.nodes, period(spec.q)) * measure)
}

/// Per-level terms `l = 1..d`: the orbit measure `(d-l+1)(m/t)^l` times the
/// mean of `Res_{A_l} mu` over the unitary torus in `z_1..z_{l-1}`.
pub fn rhs_terms(p: &SetupParams, spec: &QuadratureSpec, fault: Option<Fault>) -> Result<Vec<Complex64>, ContourError> {
    spec.validate()?;
    let mu = SumForm::from(mu::mu_in_z(p)?);
    let mut out = Vec::with_capacity(p.d() as usize);
    for l in 1..=p.d() {
        let datum = resdata::res_al_with(p, &mu, l, fault)?;
        let k = l as usize - 1;
        let f = Compiled::new(&datum.value, k, spec.q);
        let measure = to_f64(&model::measure_orbit(p, l)?);
        out.push(torus_mean(&f, &vec![0.0; k], spec.nodes, period(spec.q)) * measure);
    }
    Ok(out)
}

pub fn rhs_residue_sum(p: &SetupParams, spec: &QuadratureSpec) -> Result<Complex64, ContourError> {
    Ok(rhs_terms(p, spec, None)?.into_iter().sum())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub terms: Vec<Complex64>,
    pub rel_error: f64,
    pub check: CheckReport,
}

/// `|lhs - rhs| / max(|lhs|, 1)`.
pub fn relative_error(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / lhs.norm().max(1.0)
}

pub fn verify_residue_decomposition(
    p: &SetupParams,
    spec: &QuadratureSpec,
    fault: Option<Fault>,
) -> Result<DecompositionReport, ContourError> {
    let start = std::time::Instant::now();
    let lhs = lhs_contour(p, spec)?;
    let terms = rhs_terms(p, spec, fault)?;
    let rhs: Complex64 = terms.iter().sum();
    let rel_error = relative_error(lhs, rhs);
    let passed = rel_error <= spec.tolerance;
    let check = CheckReport {
        name: format!(
            "contour m={} d={} t={} a={} q={} nodes={}",
            p.m(),
            p.d(),
            p.t(),
            p.a(),
            spec.q,
            spec.nodes
        ),
        status: if passed {
            crate::report::Status::Pass
        } else {
            crate::report::Status::Fail
        },
        detail: format!("{rel_error:.3e}"),
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    Ok(DecompositionReport {
        lhs,
        rhs,
        terms,
        rel_error,
        check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn p(m: i64, d: i64, t: i64, a: i64) -> SetupParams {
        SetupParams::new(m, d, t, a).unwrap()
    }

    #[test]
    fn compiled_matches_eval_numeric() {
        let pp = p(2, 3, 2, 1);
        let mu = mu::mu_in_z(&pp).unwrap();
        let c = Compiled::new(&SumForm::from(mu.clone()), 2, 3.0);
        let z = [Complex64::new(0.3, 1.1), Complex64::new(-0.7, 0.2)];
        let assignment: BTreeMap<_, _> = [(VarId(1), z[0]), (VarId(2), z[1])].into();
        let want = mu.eval_numeric(3.0, &assignment).unwrap();
        assert!((c.eval(&z) - want).norm() < 1e-12 * want.norm().max(1.0));
    }

    #[test]
    fn d1_is_constant() {
        let spec = QuadratureSpec::new(16, 2.0, 1e-12);
        let pp = p(1, 1, 1, 0);
        assert_eq!(lhs_contour(&pp, &spec).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(rhs_residue_sum(&pp, &spec).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn d2_converges_under_doubling() {
        let pp = p(1, 2, 1, 0);
        let a = lhs_contour(&pp, &QuadratureSpec::new(256, 2.0, 1e-8).with_shift(vec![1.5])).unwrap();
        let b = lhs_contour(&pp, &QuadratureSpec::new(512, 2.0, 1e-8).with_shift(vec![1.5])).unwrap();
        assert!(a.im.abs() < 1e-12 && a.re.is_finite());
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn shift_on_pole_and_chamber() {
        let pp = p(1, 2, 1, 0);
        let on = QuadratureSpec::new(64, 2.0, 1e-8).with_shift(vec![1.0]);
        assert!(matches!(lhs_contour(&pp, &on), Err(ContourError::ShiftOnPole { .. })));
        let inside = QuadratureSpec::new(64, 2.0, 1e-8).with_shift(vec![0.5]);
        assert!(matches!(lhs_contour(&pp, &inside), Err(ContourError::OutsideChamber { .. })));
        assert!(matches!(
            lhs_contour(&pp, &QuadratureSpec::new(48, 2.0, 1e-8)),
            Err(ContourError::InvalidSpec(_))
        ));
    }

    #[test]
    fn d2_decomposition_and_fault() {
        let pp = p(1, 2, 1, 0);
        let spec = QuadratureSpec::new(512, 2.0, 1e-8);
        let r = verify_residue_decomposition(&pp, &spec, None).unwrap();
        assert!(r.check.passed(), "{:?}", r);
        assert_eq!(r.terms.len(), 2);
        let bad = verify_residue_decomposition(&pp, &spec, Some(Fault::DropLevelNormalizer)).unwrap();
        assert!(!bad.check.passed());
    }

    #[test]
    fn lhs_is_the_limit_deep_in_the_chamber() {
        // no poles lie beyond the shift and each pair factor tends to q^(a+t)
        for (d, q, t, m, a) in [(2, 2.0f64, 1, 1, 0), (2, 3.0, 2, 4, 1), (3, 2.0, 1, 2, 1), (3, 3.0, 2, 2, 0)] {
            let pp = p(m, d, t, a);
            let pairs = (d * (d - 1) / 2) as f64;
            let want = (m as f64 / t as f64).powi(d as i32) * q.powf(pairs * (a + t) as f64);
            let got = lhs_contour(&pp, &QuadratureSpec::new(64, q, 1e-8)).unwrap();
            assert!((got.re - want).abs() < 1e-9 * want && got.im.abs() < 1e-9 * want, "{got} vs {want}");
        }
    }

    #[test]
    fn shift_independence_d2() {
        let pp = p(2, 2, 2, 1);
        let base = lhs_contour(&pp, &QuadratureSpec::new(512, 3.0, 1e-8)).unwrap();
        for r in [2.3, 2.9, 3.7] {
            let v = lhs_contour(&pp, &QuadratureSpec::new(512, 3.0, 1e-8).with_shift(vec![r])).unwrap();
            assert!((v - base).norm() < 1e-10 * base.norm().max(1.0), "R={r}");
        }
    }
}
