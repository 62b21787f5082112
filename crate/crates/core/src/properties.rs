//! Randomized checks of the engine's structural properties.

use std::collections::BTreeMap;

use num_complex::Complex64;
use proptest::prelude::*;

use crate::contour::{self, QuadratureSpec};
use crate::coords::{self, Weight};
use crate::degree;
use crate::model::SetupParams;
use crate::mu;
use crate::qcas::{self, rat, AffineExponent, FactoredForm, Rational, SumForm, VarId};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-8i64..=8, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn affine2() -> impl Strategy<Value = AffineExponent> {
    (small_rat(), small_rat(), small_rat()).prop_map(|(c, a, b)| {
        AffineExponent::constant(c) + AffineExponent::term(VarId(1), a) + AffineExponent::term(VarId(2), b)
    })
}

fn form() -> impl Strategy<Value = FactoredForm> {
    (
        small_rat().prop_filter("nonzero", |c| *c != rat(0, 1)),
        -2i64..=2,
        affine2(),
        proptest::collection::vec((affine2(), -2i64..=2), 0..4),
    )
        .prop_map(|(c, g, mono, bins)| {
            let mut f = FactoredForm::constant(c)
                .mul(&FactoredForm::log_power(g))
                .mul(&FactoredForm::q_power(mono));
            for (e, k) in bins {
                if !e.is_zero() {
                    f = f.mul(&FactoredForm::binomial_pow(e, k).unwrap());
                }
            }
            f
        })
}

fn params(d_max: i64) -> impl Strategy<Value = SetupParams> {
    (1i64..=d_max, 1i64..=3, 0i64..=2).prop_map(|(d, t, a)| SetupParams::new(6, d, t, a).unwrap())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Product of the pairs `(i, j)`, `j > i`, at `lambda`.
fn pairs_from(p: &SetupParams, lambda: &Weight, i: usize) -> FactoredForm {
    ((i + 1)..=lambda.len()).fold(FactoredForm::one(), |acc, j| {
        acc.mul(&mu::rank_one_factor(p, &lambda.difference(i, j)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn residue_is_linear(f in form(), c in small_rat(), r in small_rat()) {
        let z = VarId(1);
        let s = SumForm::from(f);
        prop_assert_eq!(
            qcas::residue(&s.scale(&c), z, &r).unwrap(),
            qcas::residue(&s, z, &r).unwrap().scale(&c)
        );
    }

    #[test]
    fn log_grade_is_additive(f in form(), g in form()) {
        prop_assert_eq!(f.mul(&g).log_grade(), f.log_grade() + g.log_grade());
        let pole = FactoredForm::binomial_pow(AffineExponent::var(VarId(1)), -1).unwrap();
        let h = f.substitute(VarId(1), &AffineExponent::int(7)).unwrap_or_else(|_| FactoredForm::one()).mul(&pole);
        let res = qcas::residue(&SumForm::from(h.clone()), VarId(1), &rat(0, 1)).unwrap();
        prop_assert_eq!(res.log_grades(), vec![h.log_grade() - 1]);
    }

    #[test]
    fn weyl_symmetry(p in params(4), pick in 0usize..24) {
        let lam = coords::z_to_s(&p, &coords::z_vars(&p)).unwrap();
        let perms = permutations(p.d() as usize);
        let perm = &perms[pick % perms.len()];
        prop_assert_eq!(mu::mu_full(&p, &lam).unwrap(), mu::mu_full(&p, &lam.permuted(perm)).unwrap());
    }

    #[test]
    fn rank_one_is_even(p in params(2), x in affine2()) {
        let f = mu::rank_one_factor(&p, &x);
        let g = mu::rank_one_factor(&p, &-&x);
        prop_assert_eq!(f, g);
    }

    #[test]
    fn regular_off_hyperplanes(p in params(5), entries in proptest::collection::vec(small_rat(), 5)) {
        let lam = Weight::from_rationals(entries.into_iter().take(p.d() as usize));
        let through = mu::hyperplanes_through(&p, &lam);
        let value = mu::mu_full(&p, &lam);
        if through.is_empty() {
            let v = value.unwrap();
            prop_assert!(!v.is_zero());
            prop_assert!(v.vars().is_empty());
        } else if through.iter().any(|h| h.level != 0) {
            prop_assert!(value.is_err());
        } else {
            prop_assert!(value.unwrap().is_zero());
        }
    }

    #[test]
    fn central_shift_leaves_pairings(p in params(6), c in small_rat()) {
        prop_assume!(p.d() >= 2);
        let lam = coords::z_to_s(&p, &coords::z_vars(&p)).unwrap();
        let moved = lam.shifted(&AffineExponent::constant(c));
        for l in 1..p.d() {
            prop_assert_eq!(
                coords::pairing_coroot(&p, l, &lam).unwrap(),
                coords::pairing_coroot(&p, l, &moved).unwrap()
            );
        }
    }
}

#[test]
fn discrete_point_has_unit_steps() {
    for d in 1..=8 {
        for t in 1..=3 {
            let p = SetupParams::new(6, d, t, 0).unwrap();
            let s = coords::discrete_point(&p);
            for k in 1..d as usize {
                assert_eq!(s.difference(k, k + 1), AffineExponent::int(1));
            }
            assert_eq!(s.normalized(), s);
        }
    }
}

#[test]
fn nested_product_identity() {
    for d in 2..=5 {
        for (t, a) in [(1, 0), (2, 1), (3, 2)] {
            let p = SetupParams::new(6, d, t, a).unwrap();
            let lam = coords::z_to_s(&p, &coords::z_vars(&p)).unwrap();
            let product = (1..d as usize).fold(FactoredForm::one(), |acc, i| acc.mul(&pairs_from(&p, &lam, i)));
            assert_eq!(product, mu::mu_full(&p, &lam).unwrap());

            for l in 2..=d as u32 {
                let zs: Vec<AffineExponent> = (1..d as u32)
                    .map(|k| {
                        if k < l {
                            AffineExponent::var(coords::z(k))
                        } else {
                            AffineExponent::constant(coords::residue_point(&p, k))
                        }
                    })
                    .collect();
                let nested = coords::z_to_s(&p, &zs).unwrap();
                let level = pairs_from(&p, &nested, l as usize - 1);
                assert_eq!(level.vars(), vec![coords::z(l - 1)], "d={d} l={l}");
                assert_eq!(level, mu::mu_level_ratio_closed(&p, l, coords::z(l - 1)).unwrap());
            }
        }
    }
}

#[test]
fn gl_order_at_prime_powers_is_integral() {
    for q in [2i64, 3, 4, 5, 7, 8, 9] {
        for n in 1..=4 {
            let v = degree::gl_order(n).unwrap().eval_exact(&rat(q, 1)).unwrap();
            assert!(v.is_integer() && v > rat(0, 1), "q={q} n={n}");
        }
    }
}

#[test]
fn node_doubling_converges_monotonically() {
    let p = SetupParams::new(1, 2, 1, 0).unwrap();
    let reference = contour::lhs_contour(&p, &QuadratureSpec::new(1024, 2.0, 1e-8)).unwrap();
    let mut last = f64::INFINITY;
    for n in [16, 32, 64] {
        let v = contour::lhs_contour(&p, &QuadratureSpec::new(n, 2.0, 1e-8)).unwrap();
        let err = (v - reference).norm();
        assert!(err < last || err < 1e-13, "n={n} err={err}");
        last = err;
    }
}

#[test]
fn unitary_values_are_real() {
    let p = SetupParams::new(2, 3, 2, 1).unwrap();
    let f = mu::mu_in_z(&p).unwrap();
    let env: BTreeMap<VarId, Complex64> = [(VarId(1), Complex64::new(0.0, 0.7)), (VarId(2), Complex64::new(0.0, -1.3))].into();
    let v = f.eval_numeric(3.0, &env).unwrap();
    assert!(v.im.abs() < 1e-12 * v.norm() && v.re > 0.0);
}
