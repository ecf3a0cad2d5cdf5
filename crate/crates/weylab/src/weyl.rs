//! Normal-ordered differential operators in two variables.
//!
//! An operator is a finite sum of monomials `c * t^i u^j dt^m du^n`, where
//! `dt`, `du` are the partial derivatives in `t`, `u` and `c` is a
//! [`Scalar`]. All products are immediately rewritten into this normal form
//! (multiplication operators left of derivatives) with the two-variable
//! commutation rule applied independently in `t` and `u`:
//!
//! ```text
//! dt^m t^i = sum_{r=0..min(m,i)} C(m,r) * i!/(i-r)! * t^(i-r) dt^(m-r)
//! ```
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so every operator has
//! a unique canonical representation, equality is structural, and iteration
//! order is deterministic.
//!
//! Products guard against blow-up with an exact pre-estimate of the number of
//! intermediate terms; if it exceeds the budget the product is refused with
//! [`Error::BudgetExceeded`] before any work happens. With the `parallel`
//! feature large products fan out over rayon; the merge is an exact
//! commutative addition, so parallel and sequential results are identical.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::scalar::{Param, ParamAssign, ParamPoly, Rat, RingTag, Scalar};
use crate::{Error, Result};

/// Default cap on the estimated number of intermediate terms in one product.
pub const DEFAULT_TERM_BUDGET: u64 = 10_000_000;

/// Estimated work above which a product fans out over rayon.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: u64 = 1 << 14;

/// Exponent vector of one normal-ordered monomial `t^i u^j dt^m du^n`.
///
/// The derived `Ord` is lexicographic in `(t_pow, u_pow, dt_pow, du_pow)`,
/// which fixes the canonical term order used everywhere (maps, emission).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DiffMono {
    pub t_pow: u32,
    pub u_pow: u32,
    pub dt_pow: u32,
    pub du_pow: u32,
}

impl DiffMono {
    pub const IDENTITY: DiffMono = DiffMono {
        t_pow: 0,
        u_pow: 0,
        dt_pow: 0,
        du_pow: 0,
    };

    pub fn new(t_pow: u32, u_pow: u32, dt_pow: u32, du_pow: u32) -> Self {
        DiffMono {
            t_pow,
            u_pow,
            dt_pow,
            du_pow,
        }
    }

    /// Total derivative order `m + n`.
    pub fn derivative_order(&self) -> u32 {
        self.dt_pow + self.du_pow
    }

    pub fn is_identity(&self) -> bool {
        *self == DiffMono::IDENTITY
    }
}

impl fmt::Display for DiffMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textfmt::emit_mono(self))
    }
}

/// Monomial exponents `(first_pow, second_pow)` of a two-variable polynomial.
pub type Mono2 = (u32, u32);

/// Sparse polynomial in two commuting variables with [`Scalar`] coefficients.
///
/// The variables are anonymous; the catalog reads them as `(t, u)` and the
/// Cartesian layer as `(x, y)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly2 {
    terms: BTreeMap<Mono2, Scalar>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn mono(first_pow: u32, second_pow: u32, coeff: Scalar) -> Self {
        let mut p = Poly2::default();
        if !coeff.is_zero() {
            p.terms.insert((first_pow, second_pow), coeff);
        }
        p
    }

    pub fn constant(coeff: Scalar) -> Self {
        Poly2::mono(0, 0, coeff)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn ring(&self) -> Option<RingTag> {
        self.terms.values().next().map(Scalar::ring)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono2, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: Mono2) -> Option<&Scalar> {
        self.terms.get(&mono)
    }

    pub fn add_term(&mut self, mono: Mono2, coeff: &Scalar) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        if let Some(r) = self.ring() {
            if r != coeff.ring() {
                return Err(Error::RingMismatch {
                    lhs: r.name(),
                    rhs: coeff.ring().name(),
                    context: "Poly2::add_term",
                });
            }
        }
        match self.terms.get_mut(&mono) {
            Some(c) => {
                *c = c.checked_add(coeff, "Poly2::add_term")?;
                if c.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, coeff.clone());
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly2) -> Result<Poly2> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Poly2 {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &Poly2) -> Result<Poly2> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly2) -> Result<Poly2> {
        let mut out = Poly2::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1.checked_mul(c2, "Poly2::mul")?;
                out.add_term((m1.0 + m2.0, m1.1 + m2.1), &c)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Poly2> {
        let ring = self.ring().unwrap_or(RingTag::Rational);
        let mut out = Poly2::constant(Scalar::one(ring));
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn scale(&self, f: &Rat) -> Poly2 {
        let mut out = Poly2::zero();
        for (m, c) in &self.terms {
            let s = c.scale(f);
            if !s.is_zero() {
                out.terms.insert(*m, s);
            }
        }
        out
    }

    pub fn to_parametric(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (m, c) in &self.terms {
            out.terms.insert(*m, c.to_parametric());
        }
        out
    }

    /// Substitute rationals for all parameters occurring in the coefficients.
    pub fn instantiate(&self, assign: &ParamAssign) -> Result<Poly2> {
        let mut out = Poly2::zero();
        for (m, c) in &self.terms {
            let v = c.instantiate(assign)?;
            if !v.is_zero() {
                out.terms.insert(*m, Scalar::Rat(v));
            }
        }
        Ok(out)
    }

    /// Evaluate a rational-ring polynomial at a rational point.
    pub fn eval_rat(&self, first: &Rat, second: &Rat) -> Result<Rat> {
        let mut acc = Rat::zero();
        for ((p, q), c) in &self.terms {
            let c = c.as_rational().ok_or(Error::RingMismatch {
                lhs: "parametric",
                rhs: "rational",
                context: "Poly2::eval_rat",
            })?;
            let mut term = c.clone();
            for _ in 0..*p {
                term *= first;
            }
            for _ in 0..*q {
                term *= second;
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Largest total degree `p + q` over the support, zero for the zero
    /// polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(p, q)| p + q).max().unwrap_or(0)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textfmt::emit_poly2(self, "t", "u"))
    }
}

/// Normal-ordered differential operator: canonical map from monomials to
/// nonzero coefficients, all in one ring.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DiffOp {
    terms: BTreeMap<DiffMono, Scalar>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    /// Constant multiple of the identity operator.
    pub fn constant(coeff: Scalar) -> Self {
        let mut op = DiffOp::zero();
        if !coeff.is_zero() {
            op.terms.insert(DiffMono::IDENTITY, coeff);
        }
        op
    }

    /// Single-term operator.
    pub fn from_mono(mono: DiffMono, coeff: Scalar) -> Self {
        let mut op = DiffOp::zero();
        if !coeff.is_zero() {
            op.terms.insert(mono, coeff);
        }
        op
    }

    /// Build from a term list, accumulating duplicate monomials. All terms
    /// must share one ring.
    pub fn from_terms<I>(terms: I) -> Result<DiffOp>
    where
        I: IntoIterator<Item = (DiffMono, Scalar)>,
    {
        let mut op = DiffOp::zero();
        for (m, c) in terms {
            op.add_term(m, &c)?;
        }
        Ok(op)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Ring of the coefficients; `None` for the zero operator, which is
    /// compatible with either ring.
    pub fn ring(&self) -> Option<RingTag> {
        self.terms.values().next().map(Scalar::ring)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DiffMono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &DiffMono) -> Option<&Scalar> {
        self.terms.get(mono)
    }

    /// Largest total derivative order over the support.
    pub fn derivative_order(&self) -> u32 {
        self.terms
            .keys()
            .map(DiffMono::derivative_order)
            .max()
            .unwrap_or(0)
    }

    /// Largest coefficient degree in one model parameter (zero in the
    /// rational ring).
    pub fn coeff_degree_in(&self, v: Param) -> u32 {
        self.terms
            .values()
            .map(|c| match c {
                Scalar::Rat(_) => 0,
                Scalar::Poly(p) => p.degree_in(v),
            })
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, mono: DiffMono, coeff: &Scalar) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        if let Some(r) = self.ring() {
            if r != coeff.ring() {
                return Err(Error::RingMismatch {
                    lhs: r.name(),
                    rhs: coeff.ring().name(),
                    context: "DiffOp::add_term",
                });
            }
        }
        match self.terms.get_mut(&mono) {
            Some(c) => {
                *c = c.checked_add(coeff, "DiffOp::add_term")?;
                if c.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, coeff.clone());
            }
        }
        Ok(())
    }

    pub fn neg(&self) -> DiffOp {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, f: &Rat) -> DiffOp {
        let mut out = DiffOp::zero();
        for (m, c) in &self.terms {
            let s = c.scale(f);
            if !s.is_zero() {
                out.terms.insert(*m, s);
            }
        }
        out
    }

    /// Promote a rational-ring operator into the parametric ring.
    pub fn to_parametric(&self) -> DiffOp {
        let mut out = DiffOp::zero();
        for (m, c) in &self.terms {
            out.terms.insert(*m, c.to_parametric());
        }
        out
    }

    /// Multiply every coefficient by one scalar of the same ring.
    pub fn mul_scalar(&self, s: &Scalar) -> Result<DiffOp> {
        let mut out = DiffOp::zero();
        for (m, c) in &self.terms {
            let v = c.checked_mul(s, "DiffOp::mul_scalar")?;
            if !v.is_zero() {
                out.terms.insert(*m, v);
            }
        }
        Ok(out)
    }

    /// Substitute the assigned parameters into every coefficient, staying in
    /// the parametric ring. Rational-ring operators pass through unchanged.
    pub fn substitute(&self, assign: &ParamAssign) -> DiffOp {
        let mut out = DiffOp::zero();
        for (m, c) in &self.terms {
            let v = match c {
                Scalar::Rat(_) => c.clone(),
                Scalar::Poly(p) => Scalar::Poly(p.substitute(assign)),
            };
            if !v.is_zero() {
                out.terms.insert(*m, v);
            }
        }
        out
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textfmt::emit_diffop(self))
    }
}

/// Internal abstraction over the two coefficient rings so the hot loops are
/// monomorphic.
trait Coeff: Clone + Send + Sync {
    fn coeff_is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale_int(&self, f: &BigInt) -> Self;
    fn wrap(self) -> Scalar;
    fn extract(s: &Scalar) -> &Self;
}

impl Coeff for Rat {
    fn coeff_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_int(&self, f: &BigInt) -> Self {
        self * Rat::from_integer(f.clone())
    }
    fn wrap(self) -> Scalar {
        Scalar::Rat(self)
    }
    fn extract(s: &Scalar) -> &Self {
        match s {
            Scalar::Rat(c) => c,
            Scalar::Poly(_) => unreachable!("ring verified before dispatch"),
        }
    }
}

impl Coeff for ParamPoly {
    fn coeff_is_zero(&self) -> bool {
        ParamPoly::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self = ParamPoly::add(self, other);
    }
    fn mul_ref(&self, other: &Self) -> Self {
        ParamPoly::mul(self, other)
    }
    fn scale_int(&self, f: &BigInt) -> Self {
        self.scale(&Rat::from_integer(f.clone()))
    }
    fn wrap(self) -> Scalar {
        Scalar::Poly(self)
    }
    fn extract(s: &Scalar) -> &Self {
        match s {
            Scalar::Poly(p) => p,
            Scalar::Rat(_) => unreachable!("ring verified before dispatch"),
        }
    }
}

fn falling(n: u32, r: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 0..r {
        acc *= BigInt::from(n - k);
    }
    acc
}

fn binomial_u(n: u32, k: u32) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Common ring of two operands, if any; `None` means both sides are zero.
fn join_rings(
    lhs: Option<RingTag>,
    rhs: Option<RingTag>,
    context: &'static str,
) -> Result<Option<RingTag>> {
    match (lhs, rhs) {
        (Some(a), Some(b)) if a != b => Err(Error::RingMismatch {
            lhs: a.name(),
            rhs: b.name(),
            context,
        }),
        (Some(a), _) => Ok(Some(a)),
        (None, b) => Ok(b),
    }
}

fn add_into<C: Coeff>(acc: &mut BTreeMap<DiffMono, C>, mono: DiffMono, contrib: C) {
    match acc.get_mut(&mono) {
        Some(c) => {
            c.add_assign_ref(&contrib);
            if c.coeff_is_zero() {
                acc.remove(&mono);
            }
        }
        None => {
            if !contrib.coeff_is_zero() {
                acc.insert(mono, contrib);
            }
        }
    }
}

/// Number of normal-form terms produced by composing two monomials.
fn pair_estimate(lhs: &DiffMono, rhs: &DiffMono) -> u64 {
    let r_span = lhs.dt_pow.min(rhs.t_pow) as u64 + 1;
    let s_span = lhs.du_pow.min(rhs.u_pow) as u64 + 1;
    r_span * s_span
}

/// Exact number of intermediate terms `op_mul` would generate, before any
/// cancellation.
pub fn mul_estimate(lhs: &DiffOp, rhs: &DiffOp) -> u64 {
    let mut total = 0u64;
    for m1 in lhs.terms.keys() {
        for m2 in rhs.terms.keys() {
            total = total.saturating_add(pair_estimate(m1, m2));
        }
    }
    total
}

/// Normal-ordered product of two monomial terms, accumulated into `acc`.
fn compose_pair_into<C: Coeff>(
    acc: &mut BTreeMap<DiffMono, C>,
    m1: &DiffMono,
    c1: &C,
    m2: &DiffMono,
    c2: &C,
) {
    let c12 = c1.mul_ref(c2);
    for r in 0..=m1.dt_pow.min(m2.t_pow) {
        let f_r = binomial_u(m1.dt_pow, r) * falling(m2.t_pow, r);
        for s in 0..=m1.du_pow.min(m2.u_pow) {
            let f = &f_r * binomial_u(m1.du_pow, s) * falling(m2.u_pow, s);
            let mono = DiffMono::new(
                m1.t_pow + m2.t_pow - r,
                m1.u_pow + m2.u_pow - s,
                m1.dt_pow + m2.dt_pow - r,
                m1.du_pow + m2.du_pow - s,
            );
            add_into(acc, mono, c12.scale_int(&f));
        }
    }
}

fn typed_terms<C: Coeff>(op: &DiffOp) -> Vec<(DiffMono, C)> {
    op.terms
        .iter()
        .map(|(m, s)| (*m, C::extract(s).clone()))
        .collect()
}

fn wrap_terms<C: Coeff>(map: BTreeMap<DiffMono, C>) -> DiffOp {
    DiffOp {
        terms: map.into_iter().map(|(m, c)| (m, c.wrap())).collect(),
    }
}

fn mul_typed_seq<C: Coeff>(lhs: &[(DiffMono, C)], rhs: &[(DiffMono, C)]) -> BTreeMap<DiffMono, C> {
    let mut acc = BTreeMap::new();
    for (m1, c1) in lhs {
        for (m2, c2) in rhs {
            compose_pair_into(&mut acc, m1, c1, m2, c2);
        }
    }
    acc
}

#[cfg(feature = "parallel")]
fn merge_maps<C: Coeff>(
    mut into: BTreeMap<DiffMono, C>,
    from: BTreeMap<DiffMono, C>,
) -> BTreeMap<DiffMono, C> {
    if into.len() < from.len() {
        return merge_maps(from, into);
    }
    for (m, c) in from {
        add_into(&mut into, m, c);
    }
    into
}

#[cfg(feature = "parallel")]
fn mul_typed_par<C: Coeff>(lhs: &[(DiffMono, C)], rhs: &[(DiffMono, C)]) -> BTreeMap<DiffMono, C> {
    lhs.par_iter()
        .fold(BTreeMap::new, |mut acc, (m1, c1)| {
            for (m2, c2) in rhs {
                compose_pair_into(&mut acc, m1, c1, m2, c2);
            }
            acc
        })
        .reduce(BTreeMap::new, merge_maps)
}

fn mul_dispatch(lhs: &DiffOp, rhs: &DiffOp, ring: RingTag, estimate: u64) -> DiffOp {
    // Estimates below the parallel threshold run sequentially even in the
    // parallel build; the result does not depend on the path taken.
    let _ = estimate;
    match ring {
        RingTag::Rational => {
            let a = typed_terms::<Rat>(lhs);
            let b = typed_terms::<Rat>(rhs);
            #[cfg(feature = "parallel")]
            if estimate >= PAR_THRESHOLD {
                return wrap_terms(mul_typed_par(&a, &b));
            }
            wrap_terms(mul_typed_seq(&a, &b))
        }
        RingTag::Parametric => {
            let a = typed_terms::<ParamPoly>(lhs);
            let b = typed_terms::<ParamPoly>(rhs);
            #[cfg(feature = "parallel")]
            if estimate >= PAR_THRESHOLD {
                return wrap_terms(mul_typed_par(&a, &b));
            }
            wrap_terms(mul_typed_seq(&a, &b))
        }
    }
}

/// Sum of two operators over a common ring.
pub fn op_add(lhs: &DiffOp, rhs: &DiffOp) -> Result<DiffOp> {
    join_rings(lhs.ring(), rhs.ring(), "op_add")?;
    let mut out = lhs.clone();
    for (m, c) in &rhs.terms {
        out.add_term(*m, c)?;
    }
    Ok(out)
}

/// Difference of two operators over a common ring.
pub fn op_sub(lhs: &DiffOp, rhs: &DiffOp) -> Result<DiffOp> {
    op_add(lhs, &rhs.neg())
}

/// Normal-ordered product, refusing compositions whose exact pre-estimate of
/// intermediate terms exceeds `budget`.
pub fn op_mul_with_budget(lhs: &DiffOp, rhs: &DiffOp, budget: u64) -> Result<DiffOp> {
    let ring = join_rings(lhs.ring(), rhs.ring(), "op_mul")?;
    let estimate = mul_estimate(lhs, rhs);
    if estimate > budget {
        return Err(Error::BudgetExceeded {
            estimate,
            budget,
            lhs_terms: lhs.num_terms(),
            rhs_terms: rhs.num_terms(),
        });
    }
    match ring {
        None => Ok(DiffOp::zero()),
        Some(r) => Ok(mul_dispatch(lhs, rhs, r, estimate)),
    }
}

/// Normal-ordered product under the default term budget.
pub fn op_mul(lhs: &DiffOp, rhs: &DiffOp) -> Result<DiffOp> {
    op_mul_with_budget(lhs, rhs, DEFAULT_TERM_BUDGET)
}

/// Sequential product, bypassing rayon regardless of features. Exists so the
/// benchmark suite can compare paths; results equal [`op_mul`] exactly.
pub fn op_mul_seq(lhs: &DiffOp, rhs: &DiffOp, budget: u64) -> Result<DiffOp> {
    let ring = join_rings(lhs.ring(), rhs.ring(), "op_mul")?;
    let estimate = mul_estimate(lhs, rhs);
    if estimate > budget {
        return Err(Error::BudgetExceeded {
            estimate,
            budget,
            lhs_terms: lhs.num_terms(),
            rhs_terms: rhs.num_terms(),
        });
    }
    match ring {
        None => Ok(DiffOp::zero()),
        Some(RingTag::Rational) => Ok(wrap_terms(mul_typed_seq(
            &typed_terms::<Rat>(lhs),
            &typed_terms::<Rat>(rhs),
        ))),
        Some(RingTag::Parametric) => Ok(wrap_terms(mul_typed_seq(
            &typed_terms::<ParamPoly>(lhs),
            &typed_terms::<ParamPoly>(rhs),
        ))),
    }
}

/// Rayon product, forcing the parallel path even below the size threshold.
/// Exists for the benchmark suite; results equal [`op_mul`] exactly.
#[cfg(feature = "parallel")]
pub fn op_mul_par(lhs: &DiffOp, rhs: &DiffOp, budget: u64) -> Result<DiffOp> {
    let ring = join_rings(lhs.ring(), rhs.ring(), "op_mul")?;
    let estimate = mul_estimate(lhs, rhs);
    if estimate > budget {
        return Err(Error::BudgetExceeded {
            estimate,
            budget,
            lhs_terms: lhs.num_terms(),
            rhs_terms: rhs.num_terms(),
        });
    }
    match ring {
        None => Ok(DiffOp::zero()),
        Some(RingTag::Rational) => Ok(wrap_terms(mul_typed_par(
            &typed_terms::<Rat>(lhs),
            &typed_terms::<Rat>(rhs),
        ))),
        Some(RingTag::Parametric) => Ok(wrap_terms(mul_typed_par(
            &typed_terms::<ParamPoly>(lhs),
            &typed_terms::<ParamPoly>(rhs),
        ))),
    }
}

/// Commutator `[A, B] = AB - BA` with a shared budget across both products.
pub fn op_commutator_with_budget(lhs: &DiffOp, rhs: &DiffOp, budget: u64) -> Result<DiffOp> {
    join_rings(lhs.ring(), rhs.ring(), "op_commutator")?;
    let estimate = mul_estimate(lhs, rhs).saturating_add(mul_estimate(rhs, lhs));
    if estimate > budget {
        return Err(Error::BudgetExceeded {
            estimate,
            budget,
            lhs_terms: lhs.num_terms(),
            rhs_terms: rhs.num_terms(),
        });
    }
    let ab = op_mul_with_budget(lhs, rhs, budget)?;
    let ba = op_mul_with_budget(rhs, lhs, budget)?;
    op_sub(&ab, &ba)
}

/// Commutator under the default term budget.
pub fn op_commutator(lhs: &DiffOp, rhs: &DiffOp) -> Result<DiffOp> {
    op_commutator_with_budget(lhs, rhs, DEFAULT_TERM_BUDGET)
}

/// Integer power `A^n` (with `A^0` the identity in `A`'s ring, rational for
/// the zero operator).
pub fn op_pow(op: &DiffOp, n: u32) -> Result<DiffOp> {
    let ring = op.ring().unwrap_or(RingTag::Rational);
    let mut out = DiffOp::constant(Scalar::one(ring));
    for _ in 0..n {
        out = op_mul(&out, op)?;
    }
    Ok(out)
}

/// Apply an operator to a polynomial in `(t, u)`.
pub fn op_apply(op: &DiffOp, poly: &Poly2) -> Result<Poly2> {
    join_rings(op.ring(), poly.ring(), "op_apply")?;
    let mut out = Poly2::zero();
    for (mono, c) in &op.terms {
        for ((p, q), d) in &poly.terms {
            if mono.dt_pow > *p || mono.du_pow > *q {
                continue;
            }
            let factor = falling(*p, mono.dt_pow) * falling(*q, mono.du_pow);
            let coeff = c
                .checked_mul(d, "op_apply")?
                .scale(&Rat::from_integer(factor));
            out.add_term(
                (
                    p - mono.dt_pow + mono.t_pow,
                    q - mono.du_pow + mono.u_pow,
                ),
                &coeff,
            )?;
        }
    }
    Ok(out)
}

/// Substitute rationals for the parameters in every coefficient, landing in
/// the rational ring. Parameters that occur but are unassigned are an error.
pub fn scalar_instantiate(op: &DiffOp, assign: &ParamAssign) -> Result<DiffOp> {
    let mut out = DiffOp::zero();
    for (m, c) in &op.terms {
        let v = c.instantiate(assign)?;
        if !v.is_zero() {
            out.terms.insert(*m, Scalar::Rat(v));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn rop(terms: &[(u32, u32, u32, u32, i64)]) -> DiffOp {
        DiffOp::from_terms(
            terms
                .iter()
                .map(|&(i, j, m, n, c)| (DiffMono::new(i, j, m, n), Scalar::Rat(rat_int(c)))),
        )
        .unwrap()
    }

    #[test]
    fn heisenberg_relations() {
        let dt = rop(&[(0, 0, 1, 0, 1)]);
        let du = rop(&[(0, 0, 0, 1, 1)]);
        let t = rop(&[(1, 0, 0, 0, 1)]);
        let u = rop(&[(0, 1, 0, 0, 1)]);
        assert_eq!(op_commutator(&dt, &t).unwrap(), rop(&[(0, 0, 0, 0, 1)]));
        assert_eq!(op_commutator(&du, &u).unwrap(), rop(&[(0, 0, 0, 0, 1)]));
        assert!(op_commutator(&dt, &u).unwrap().is_zero());
        assert!(op_commutator(&du, &t).unwrap().is_zero());
    }

    #[test]
    fn normal_ordering_matches_closed_form() {
        // dt^2 t^3 = t^3 dt^2 + 6 t^2 dt + 6 t
        let lhs = op_mul(&rop(&[(0, 0, 2, 0, 1)]), &rop(&[(3, 0, 0, 0, 1)])).unwrap();
        assert_eq!(
            lhs,
            rop(&[(3, 0, 2, 0, 1), (2, 0, 1, 0, 6), (1, 0, 0, 0, 6)])
        );
        // du^2 u^2 = u^2 du^2 + 4 u du + 2
        let lhs = op_mul(&rop(&[(0, 0, 0, 2, 1)]), &rop(&[(0, 2, 0, 0, 1)])).unwrap();
        assert_eq!(
            lhs,
            rop(&[(0, 2, 0, 2, 1), (0, 1, 0, 1, 4), (0, 0, 0, 0, 2)])
        );
    }

    #[test]
    fn product_is_associative_on_samples() {
        let a = rop(&[(1, 0, 2, 0, 3), (0, 2, 0, 1, -1)]);
        let b = rop(&[(2, 1, 0, 0, 1), (0, 0, 1, 1, 5)]);
        let c = rop(&[(0, 1, 1, 0, 2), (1, 0, 0, 2, -4)]);
        let ab_c = op_mul(&op_mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = op_mul(&a, &op_mul(&b, &c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn apply_differentiates_and_multiplies() {
        let op = rop(&[(1, 0, 1, 0, 1)]); // t dt
        let p = Poly2::mono(2, 1, Scalar::Rat(rat_int(1))); // t^2 u
        let image = op_apply(&op, &p).unwrap();
        assert_eq!(image, Poly2::mono(2, 1, Scalar::Rat(rat_int(2))));
        let du = rop(&[(0, 0, 0, 1, 1)]);
        let t = Poly2::mono(1, 0, Scalar::Rat(rat_int(1)));
        assert!(op_apply(&du, &t).unwrap().is_zero());
    }

    #[test]
    fn budget_refuses_large_products_upfront() {
        let a = rop(&[(0, 0, 5, 5, 1)]);
        let b = rop(&[(5, 5, 0, 0, 1)]);
        match op_mul_with_budget(&a, &b, 10) {
            Err(Error::BudgetExceeded {
                estimate,
                budget,
                lhs_terms,
                rhs_terms,
            }) => {
                assert_eq!(estimate, 36);
                assert_eq!(budget, 10);
                assert_eq!(lhs_terms, 1);
                assert_eq!(rhs_terms, 1);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn instantiate_reports_missing_parameter() {
        let op = DiffOp::from_mono(
            DiffMono::new(1, 0, 0, 0),
            Scalar::Poly(ParamPoly::var(Param::W)),
        );
        let err = scalar_instantiate(&op, &ParamAssign::new()).unwrap_err();
        assert_eq!(err, Error::MissingAssignment { param: 'w' });
        let ok = scalar_instantiate(&op, &ParamAssign::new().with(Param::W, rat(3, 2))).unwrap();
        assert_eq!(
            ok,
            DiffOp::from_mono(DiffMono::new(1, 0, 0, 0), Scalar::Rat(rat(3, 2)))
        );
    }

    #[test]
    fn ring_mix_is_rejected() {
        let r = rop(&[(0, 0, 1, 0, 1)]);
        let p = DiffOp::from_mono(DiffMono::IDENTITY, Scalar::Poly(ParamPoly::var(Param::A)));
        assert!(matches!(
            op_add(&r, &p),
            Err(Error::RingMismatch { .. })
        ));
        assert!(matches!(
            op_mul(&r, &p),
            Err(Error::RingMismatch { .. })
        ));
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_products_are_identical() {
        // Big enough to clear PAR_THRESHOLD with room to spare.
        let mut a = DiffOp::zero();
        let mut b = DiffOp::zero();
        for i in 0..12u32 {
            for m in 0..6u32 {
                a.add_term(
                    DiffMono::new(i, (i * 7 + m) % 5, m, (m + i) % 4),
                    &Scalar::Rat(rat(3 * i as i64 + 1, m as i64 + 2)),
                )
                .unwrap();
                b.add_term(
                    DiffMono::new((i * 3 + 1) % 9, i % 6, (m * 2 + 1) % 7, m % 5),
                    &Scalar::Rat(rat(i as i64 - 7, 2 * m as i64 + 1)),
                )
                .unwrap();
            }
        }
        let seq = op_mul_seq(&a, &b, DEFAULT_TERM_BUDGET).unwrap();
        let par = op_mul_par(&a, &b, DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(seq, par);
    }
}
