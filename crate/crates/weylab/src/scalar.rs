//! Coefficient rings for operator terms.
//!
//! Two rings appear throughout the crate:
//!
//! * plain arbitrary-precision rationals ([`Rat`]), used once the four model
//!   parameters have been fixed to exact values, and
//! * sparse polynomials in the parameters `a`, `b`, `w`, `l` with rational
//!   coefficients ([`ParamPoly`]), used while the parameters stay symbolic.
//!
//! [`Scalar`] tags which ring a coefficient lives in. Mixing rings is a hard
//! error everywhere; the only sanctioned crossings are explicit promotion of
//! a rational into a constant polynomial and full instantiation of a
//! polynomial at a rational assignment.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Rational `n/d` from machine integers.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Rational integer `n`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The four model parameters, in canonical order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Param {
    /// First deformation strength.
    A,
    /// Second deformation strength.
    B,
    /// Oscillator frequency.
    W,
    /// Sector deformation strength.
    L,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::A, Param::B, Param::W, Param::L];

    pub fn index(self) -> usize {
        match self {
            Param::A => 0,
            Param::B => 1,
            Param::W => 2,
            Param::L => 3,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Param::A => 'a',
            Param::B => 'b',
            Param::W => 'w',
            Param::L => 'l',
        }
    }

    pub fn from_symbol(c: char) -> Option<Param> {
        match c {
            'a' => Some(Param::A),
            'b' => Some(Param::B),
            'w' => Some(Param::W),
            'l' => Some(Param::L),
            _ => None,
        }
    }
}

/// Exponent vector of a parameter monomial, indexed by [`Param::index`].
pub type ParamExps = [u32; 4];

/// Sparse polynomial in the four model parameters over the rationals.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so the
/// representation is canonical: equal polynomials compare equal and emit
/// identical text. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ParamPoly {
    terms: BTreeMap<ParamExps, Rat>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        ParamPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = ParamPoly::default();
        if !c.is_zero() {
            p.terms.insert([0; 4], c);
        }
        p
    }

    pub fn var(v: Param) -> Self {
        let mut exps = [0u32; 4];
        exps[v.index()] = 1;
        ParamPoly::monomial(exps, Rat::one())
    }

    pub fn monomial(exps: ParamExps, coeff: Rat) -> Self {
        let mut p = ParamPoly::default();
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&[0; 4])
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Constant value if the polynomial has no variable part.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&[0; 4]) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ParamExps, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: ParamExps, coeff: &Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, coeff.clone());
            }
        }
    }

    pub fn add(&self, other: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> ParamPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &ParamPoly) -> ParamPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(exps, &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> ParamPoly {
        let mut out = ParamPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, f: &Rat) -> ParamPoly {
        if f.is_zero() {
            return ParamPoly::zero();
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= f;
        }
        out
    }

    /// Degree in one parameter.
    pub fn degree_in(&self, v: Param) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    /// Total degree across all four parameters.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// True if the parameter occurs with positive exponent anywhere.
    pub fn depends_on(&self, v: Param) -> bool {
        self.terms.keys().any(|e| e[v.index()] > 0)
    }

    /// Evaluate at a full rational assignment. Parameters that actually occur
    /// must all be assigned; unused parameters may be left out.
    pub fn eval(&self, assign: &ParamAssign) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for v in Param::ALL {
                let e = exps[v.index()];
                if e == 0 {
                    continue;
                }
                let val = assign
                    .get(v)
                    .ok_or(Error::MissingAssignment { param: v.symbol() })?;
                for _ in 0..e {
                    term *= val;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitute the assigned parameters, keeping the rest symbolic.
    pub fn substitute(&self, assign: &ParamAssign) -> ParamPoly {
        let mut out = ParamPoly::default();
        for (exps, coeff) in &self.terms {
            let mut c = coeff.clone();
            let mut rest = *exps;
            for v in Param::ALL {
                let e = exps[v.index()];
                if e == 0 {
                    continue;
                }
                if let Some(val) = assign.get(v) {
                    for _ in 0..e {
                        c *= val;
                    }
                    rest[v.index()] = 0;
                }
            }
            out.add_term(rest, &c);
        }
        out
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textfmt::emit_parampoly(self))
    }
}

impl From<i64> for ParamPoly {
    fn from(n: i64) -> Self {
        ParamPoly::constant(rat_int(n))
    }
}

impl From<Rat> for ParamPoly {
    fn from(c: Rat) -> Self {
        ParamPoly::constant(c)
    }
}

macro_rules! parampoly_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait for &ParamPoly {
            type Output = ParamPoly;
            fn $method(self, rhs: &ParamPoly) -> ParamPoly {
                ParamPoly::$imp(self, rhs)
            }
        }
        impl $trait for ParamPoly {
            type Output = ParamPoly;
            fn $method(self, rhs: ParamPoly) -> ParamPoly {
                ParamPoly::$imp(&self, &rhs)
            }
        }
        impl $trait<&ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $method(self, rhs: &ParamPoly) -> ParamPoly {
                ParamPoly::$imp(&self, rhs)
            }
        }
        impl $trait<ParamPoly> for &ParamPoly {
            type Output = ParamPoly;
            fn $method(self, rhs: ParamPoly) -> ParamPoly {
                ParamPoly::$imp(self, &rhs)
            }
        }
    };
}

parampoly_binop!(Add, add, add);
parampoly_binop!(Sub, sub, sub);
parampoly_binop!(Mul, mul, mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly::neg(&self)
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly::neg(self)
    }
}

impl Mul<ParamPoly> for i64 {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        rhs.scale(&rat_int(self))
    }
}

impl Mul<&ParamPoly> for i64 {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        rhs.scale(&rat_int(self))
    }
}

/// Rational values for some subset of the four parameters.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ParamAssign {
    values: [Option<Rat>; 4],
}

impl ParamAssign {
    pub fn new() -> Self {
        ParamAssign::default()
    }

    /// Assignment binding all four parameters.
    pub fn full(a: Rat, b: Rat, w: Rat, l: Rat) -> Self {
        ParamAssign {
            values: [Some(a), Some(b), Some(w), Some(l)],
        }
    }

    pub fn with(mut self, v: Param, value: Rat) -> Self {
        self.values[v.index()] = Some(value);
        self
    }

    pub fn get(&self, v: Param) -> Option<&Rat> {
        self.values[v.index()].as_ref()
    }

    pub fn is_full(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    /// Parameters bound by this assignment, in canonical order.
    pub fn bound(&self) -> Vec<Param> {
        Param::ALL
            .into_iter()
            .filter(|v| self.values[v.index()].is_some())
            .collect()
    }
}

/// Tag naming the coefficient ring of a scalar or operator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RingTag {
    /// Plain rationals.
    Rational,
    /// Polynomials in the model parameters.
    Parametric,
}

impl RingTag {
    pub fn name(self) -> &'static str {
        match self {
            RingTag::Rational => "rational",
            RingTag::Parametric => "parametric",
        }
    }
}

/// A coefficient together with the ring it lives in.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Rat(Rat),
    Poly(ParamPoly),
}

impl Scalar {
    pub fn ring(&self) -> RingTag {
        match self {
            Scalar::Rat(_) => RingTag::Rational,
            Scalar::Poly(_) => RingTag::Parametric,
        }
    }

    pub fn zero(ring: RingTag) -> Scalar {
        match ring {
            RingTag::Rational => Scalar::Rat(Rat::zero()),
            RingTag::Parametric => Scalar::Poly(ParamPoly::zero()),
        }
    }

    pub fn one(ring: RingTag) -> Scalar {
        match ring {
            RingTag::Rational => Scalar::Rat(Rat::one()),
            RingTag::Parametric => Scalar::Poly(ParamPoly::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(c) => c.is_zero(),
            Scalar::Poly(p) => p.is_zero(),
        }
    }

    pub fn checked_add(&self, other: &Scalar, context: &'static str) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Ok(Scalar::Rat(x + y)),
            (Scalar::Poly(x), Scalar::Poly(y)) => Ok(Scalar::Poly(x.add(y))),
            _ => Err(Error::RingMismatch {
                lhs: self.ring().name(),
                rhs: other.ring().name(),
                context,
            }),
        }
    }

    pub fn checked_mul(&self, other: &Scalar, context: &'static str) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Ok(Scalar::Rat(x * y)),
            (Scalar::Poly(x), Scalar::Poly(y)) => Ok(Scalar::Poly(x.mul(y))),
            _ => Err(Error::RingMismatch {
                lhs: self.ring().name(),
                rhs: other.ring().name(),
                context,
            }),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(c) => Scalar::Rat(-c.clone()),
            Scalar::Poly(p) => Scalar::Poly(p.neg()),
        }
    }

    /// Multiply by a plain rational; valid in either ring.
    pub fn scale(&self, f: &Rat) -> Scalar {
        match self {
            Scalar::Rat(c) => Scalar::Rat(c * f),
            Scalar::Poly(p) => Scalar::Poly(p.scale(f)),
        }
    }

    /// Promote into the parametric ring.
    pub fn to_parametric(&self) -> Scalar {
        match self {
            Scalar::Rat(c) => Scalar::Poly(ParamPoly::constant(c.clone())),
            Scalar::Poly(_) => self.clone(),
        }
    }

    /// Evaluate down to a plain rational. Rational scalars pass through
    /// untouched; parametric ones need every occurring parameter assigned.
    pub fn instantiate(&self, assign: &ParamAssign) -> Result<Rat> {
        match self {
            Scalar::Rat(c) => Ok(c.clone()),
            Scalar::Poly(p) => p.eval(assign),
        }
    }

    /// As a rational, if this scalar is in the rational ring.
    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Scalar::Rat(c) => Some(c),
            Scalar::Poly(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textfmt::emit_scalar(self))
    }
}

impl From<Rat> for Scalar {
    fn from(c: Rat) -> Scalar {
        Scalar::Rat(c)
    }
}

impl From<ParamPoly> for Scalar {
    fn from(p: ParamPoly) -> Scalar {
        Scalar::Poly(p)
    }
}

/// True if the rational is non-negative. Used by emitters to place signs.
pub(crate) fn rat_is_nonneg(c: &Rat) -> bool {
    !c.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> ParamPoly {
        ParamPoly::var(Param::A)
    }

    fn w() -> ParamPoly {
        ParamPoly::var(Param::W)
    }

    #[test]
    fn ring_ops_stay_canonical() {
        let p = 2 * a().pow(2) + 3 * w() - 2 * a().pow(2);
        assert_eq!(p, 3 * w());
        assert_eq!(p.num_terms(), 1);
        let q = &p - &p;
        assert!(q.is_zero());
        assert_eq!(q.num_terms(), 0);
    }

    #[test]
    fn eval_requires_occurring_params_only() {
        let p = 2 * a() + ParamPoly::one();
        let assign = ParamAssign::new().with(Param::A, rat(1, 2));
        assert_eq!(p.eval(&assign).unwrap(), rat_int(2));
        let missing = ParamAssign::new().with(Param::B, rat_int(7));
        match p.eval(&missing) {
            Err(Error::MissingAssignment { param }) => assert_eq!(param, 'a'),
            other => panic!("expected missing assignment, got {other:?}"),
        }
    }

    #[test]
    fn partial_substitution_keeps_rest_symbolic() {
        let p = a() * w() + 4 * w();
        let sub = p.substitute(&ParamAssign::new().with(Param::A, rat_int(-4)));
        assert!(sub.is_zero());
    }

    #[test]
    fn scalar_ring_mismatch_is_an_error() {
        let x = Scalar::Rat(rat_int(1));
        let y = Scalar::Poly(ParamPoly::one());
        let err = x.checked_add(&y, "test").unwrap_err();
        match err {
            Error::RingMismatch { lhs, rhs, .. } => {
                assert_eq!(lhs, "rational");
                assert_eq!(rhs, "parametric");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn pow_and_degree() {
        let p = (a() + w()).pow(3);
        assert_eq!(p.degree_in(Param::A), 3);
        assert_eq!(p.total_degree(), 3);
        assert_eq!(p.num_terms(), 4);
    }
}
