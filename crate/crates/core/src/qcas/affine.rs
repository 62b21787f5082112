//! Affine exponents `c0 + c1*z1 + c2*z2 + ...` with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Rational;

/// Index of a residue variable. `VarId(l)` is rendered as `zl`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}", self.0)
    }
}

/// An affine form over the residue variables. Zero coefficients are never stored,
/// so derived equality is structural equality of the function.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AffineExponent {
    constant: Rational,
    coeffs: BTreeMap<VarId, Rational>,
}

impl AffineExponent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        AffineExponent {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: VarId) -> Self {
        Self::term(v, Rational::from_integer(1.into()))
    }

    pub fn term(v: VarId, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_coeff(v, c);
        e
    }

    fn add_coeff(&mut self, v: VarId, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(v).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }

    /// True when no variable occurs.
    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_part(&self) -> &Rational {
        &self.constant
    }

    pub fn coeff(&self, v: VarId) -> Rational {
        self.coeffs.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (VarId, &Rational)> {
        self.coeffs.iter().map(|(v, c)| (*v, c))
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        AffineExponent {
            constant: &self.constant * k,
            coeffs: self.coeffs.iter().map(|(v, c)| (*v, c * k)).collect(),
        }
    }

    /// Splits off the coefficient of `v`: `self = coeff * v + rest`.
    pub fn split(&self, v: VarId) -> (Rational, AffineExponent) {
        let mut rest = self.clone();
        let c = rest.coeffs.remove(&v).unwrap_or_else(Rational::zero);
        (c, rest)
    }

    /// Replaces `v` by the affine expression `value`.
    pub fn substitute(&self, v: VarId, value: &AffineExponent) -> AffineExponent {
        let (c, rest) = self.split(v);
        if c.is_zero() {
            return rest;
        }
        rest + value.scale(&c)
    }

    /// Sign of the leading coefficient: first variable in `VarId` order, the
    /// constant last.
    pub fn leading_sign(&self) -> Ordering {
        match self.coeffs.values().next() {
            Some(c) => c.cmp(&Rational::zero()),
            None => self.constant.cmp(&Rational::zero()),
        }
    }

    /// Real part at a real assignment of the variables; missing variables are 0.
    pub fn eval_real(&self, assignment: &BTreeMap<VarId, f64>) -> f64 {
        let mut acc = to_f64(&self.constant);
        for (v, c) in &self.coeffs {
            acc += to_f64(c) * assignment.get(v).copied().unwrap_or(0.0);
        }
        acc
    }

    /// Value at a complex assignment; returns `None` if a variable is unassigned.
    pub fn eval_complex(&self, assignment: &BTreeMap<VarId, Complex64>) -> Option<Complex64> {
        let mut acc = Complex64::new(to_f64(&self.constant), 0.0);
        for (v, c) in &self.coeffs {
            acc += assignment.get(v)? * to_f64(c);
        }
        Some(acc)
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Ord for AffineExponent {
    /// Lexicographic over the union of variables in ascending order, constant last.
    fn cmp(&self, other: &Self) -> Ordering {
        let zero = Rational::zero();
        let mut a = self.coeffs.iter().peekable();
        let mut b = other.coeffs.iter().peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some((va, ca)), Some((vb, cb))) => match va.cmp(vb) {
                    Ordering::Equal => {
                        let o = ca.cmp(cb);
                        a.next();
                        b.next();
                        o
                    }
                    Ordering::Less => {
                        let o = (*ca).cmp(&zero);
                        a.next();
                        o
                    }
                    Ordering::Greater => {
                        let o = zero.cmp(cb);
                        b.next();
                        o
                    }
                },
                (Some((_, ca)), None) => {
                    let o = (*ca).cmp(&zero);
                    a.next();
                    o
                }
                (None, Some((_, cb))) => {
                    let o = zero.cmp(cb);
                    b.next();
                    o
                }
            };
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.constant.cmp(&other.constant)
    }
}

impl PartialOrd for AffineExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for AffineExponent {
    type Output = AffineExponent;
    fn add(mut self, rhs: AffineExponent) -> AffineExponent {
        self.constant += rhs.constant;
        for (v, c) in rhs.coeffs {
            self.add_coeff(v, c);
        }
        self
    }
}

impl Add<&AffineExponent> for &AffineExponent {
    type Output = AffineExponent;
    fn add(self, rhs: &AffineExponent) -> AffineExponent {
        self.clone() + rhs.clone()
    }
}

impl Neg for AffineExponent {
    type Output = AffineExponent;
    fn neg(self) -> AffineExponent {
        AffineExponent {
            constant: -self.constant,
            coeffs: self.coeffs.into_iter().map(|(v, c)| (v, -c)).collect(),
        }
    }
}

impl Neg for &AffineExponent {
    type Output = AffineExponent;
    fn neg(self) -> AffineExponent {
        -self.clone()
    }
}

impl Sub for AffineExponent {
    type Output = AffineExponent;
    fn sub(self, rhs: AffineExponent) -> AffineExponent {
        self + (-rhs)
    }
}

impl Sub<&AffineExponent> for &AffineExponent {
    type Output = AffineExponent;
    fn sub(self, rhs: &AffineExponent) -> AffineExponent {
        self.clone() - rhs.clone()
    }
}

impl Mul<&Rational> for &AffineExponent {
    type Output = AffineExponent;
    fn mul(self, rhs: &Rational) -> AffineExponent {
        self.scale(rhs)
    }
}

impl From<Rational> for AffineExponent {
    fn from(c: Rational) -> Self {
        AffineExponent::constant(c)
    }
}

impl From<VarId> for AffineExponent {
    fn from(v: VarId) -> Self {
        AffineExponent::var(v)
    }
}

impl fmt::Display for AffineExponent {
    /// `1/2 + z1 - 1/2*z2`; the constant is omitted when zero unless the whole
    /// form is zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.constant.is_zero() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (v, c) in &self.coeffs {
            let mag = c.abs();
            let body = if mag == Rational::from_integer(1.into()) {
                v.to_string()
            } else {
                format!("{mag}*{v}")
            };
            match (first, c.is_negative()) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}
