//! Rational-coefficient differential operators in the Cartesian plane,
//! evaluated exactly as maps between truncated jets.
//!
//! The substitution `t = x^2 + y^2`, `u = (Im (x+iy)^k)^2` relates the
//! normal-ordered two-variable operators of the algebraic layer to planar
//! operators whose coefficients are rational functions of `x` and `y`. Those
//! coefficients have denominators supported on a fixed singular set (the
//! coordinate axes, the diagonals, and the harmonic polynomials
//! `Re (x+iy)^k`, `Im (x+iy)^k`), so they fall outside the polynomial Weyl
//! algebra and are never normal-ordered symbolically. Instead an operator is
//! kept as a structural tree ([`CartOp`]) and *collapsed* at a rational base
//! point into finitely many jet coefficients ([`PreparedCartOp`]); identities
//! between operators are certified by letting both sides act on a spanning
//! family of monomial jets at pseudo-random regular points and checking that
//! every residual jet vanishes identically through its order.
//!
//! The module provides:
//!
//! * exact polynomial utilities in `x, y` (parsing, harmonic polynomials,
//!   the pullback of `t, u`-polynomials), see [`parse_xy`], [`harmonic_re`],
//!   [`pullback`];
//! * the operator catalog [`cart_h`], [`cart_x`], [`cart_y`] mirroring the
//!   algebraic one, with coefficients transcribed verbatim from the source
//!   material and cross-checked here;
//! * conjugation by the reference factor
//!   `Psi_0 = P^a Q^b exp(-w r^2/2 - l r^4/4)` as a first-order substitution
//!   on derivative symbols ([`conjugated_apply`]), so gauge-transformed
//!   operators act on jets without symbolic powers of `Psi_0`;
//! * the certification drivers [`certify_zero`], [`crosscheck_algebraic`],
//!   [`duality_check`], [`principal_symbol_check`] and
//!   [`square_reduction_check`].

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::jet::{jet_of_poly, triangle, Jet2};
use crate::linalg::{determinant, RatMat};
use crate::scalar::{rat_int, ParamAssign, ParamPoly, Rat, Scalar};
use crate::weyl::Poly2;
use crate::{Error, Result};

mod jetop;
mod ops;
mod xy;

pub use jetop::PreparedCartOp;
pub use ops::{cart_h, cart_x, cart_y};
pub use xy::{harmonic_im, harmonic_re, parse_xy, pullback};

/// A polynomial from the fixed singular set, carrying a stable display label
/// so a vanishing denominator factor can be reported by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularFactor {
    label: String,
    poly: Poly2,
}

impl SingularFactor {
    fn new(label: impl Into<String>, poly: Poly2) -> Self {
        SingularFactor {
            label: label.into(),
            poly,
        }
    }

    /// The coordinate axis factor `x`.
    pub fn var_x() -> Self {
        Self::new("x", Poly2::mono(1, 0, Scalar::Rat(Rat::one())))
    }

    /// The coordinate axis factor `y`.
    pub fn var_y() -> Self {
        Self::new("y", Poly2::mono(0, 1, Scalar::Rat(Rat::one())))
    }

    /// The diagonal factor `x - y`.
    pub fn x_minus_y() -> Self {
        let mut p = Poly2::mono(1, 0, Scalar::Rat(Rat::one()));
        p.add_term((0, 1), &Scalar::Rat(-Rat::one()))
            .expect("rational ring");
        Self::new("x-y", p)
    }

    /// The anti-diagonal factor `x + y`.
    pub fn x_plus_y() -> Self {
        let mut p = Poly2::mono(1, 0, Scalar::Rat(Rat::one()));
        p.add_term((0, 1), &Scalar::Rat(Rat::one()))
            .expect("rational ring");
        Self::new("x+y", p)
    }

    /// The harmonic factor `Re (x+iy)^k`.
    pub fn re_part(k: u32) -> Self {
        Self::new(format!("Re(x+iy)^{k}"), harmonic_re(k))
    }

    /// The harmonic factor `Im (x+iy)^k`.
    pub fn im_part(k: u32) -> Self {
        Self::new(format!("Im(x+iy)^{k}"), harmonic_im(k))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn poly(&self) -> &Poly2 {
        &self.poly
    }

    /// Exact value at a rational point.
    pub fn eval(&self, pt: &(Rat, Rat)) -> Result<Rat> {
        self.poly.eval_rat(&pt.0, &pt.1)
    }
}

/// One term `num / (f_1^e_1 ... f_r^e_r)` of an operator coefficient. The
/// numerator may carry symbolic parameters; every denominator factor comes
/// from the singular set.
#[derive(Clone, Debug)]
pub struct CartFrac {
    num: Poly2,
    den: Vec<(SingularFactor, u32)>,
}

impl CartFrac {
    pub fn new(num: Poly2, den: Vec<(SingularFactor, u32)>) -> Self {
        CartFrac { num, den }
    }

    /// A denominator-free term.
    pub fn polynomial(num: Poly2) -> Self {
        CartFrac {
            num,
            den: Vec::new(),
        }
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &[(SingularFactor, u32)] {
        &self.den
    }
}

/// An operator coefficient: a finite sum of [`CartFrac`] terms.
#[derive(Clone, Debug, Default)]
pub struct CartCoeff {
    fracs: Vec<CartFrac>,
}

impl CartCoeff {
    pub fn new(fracs: Vec<CartFrac>) -> Self {
        CartCoeff { fracs }
    }

    /// A constant coefficient (possibly depending on the model parameters).
    pub fn constant(c: ParamPoly) -> Self {
        CartCoeff {
            fracs: vec![CartFrac::polynomial(Poly2::constant(Scalar::Poly(c)))],
        }
    }

    /// A constant rational coefficient.
    pub fn rational(c: Rat) -> Self {
        CartCoeff {
            fracs: vec![CartFrac::polynomial(Poly2::constant(Scalar::Rat(c)))],
        }
    }

    /// A denominator-free polynomial coefficient.
    pub fn polynomial(p: Poly2) -> Self {
        CartCoeff {
            fracs: vec![CartFrac::polynomial(p)],
        }
    }

    pub fn fracs(&self) -> &[CartFrac] {
        &self.fracs
    }

    /// Exact jet of the coefficient at a regular base point. Fails with the
    /// offending factor's label when the point lies on the singular set.
    pub fn jet(&self, assign: &ParamAssign, base: &(Rat, Rat), order: u32) -> Result<Jet2> {
        jetop::coeff_jet(self, assign, base, order)
    }
}

/// A differential operator in the plane with rational-function coefficients,
/// kept as a structural tree. Trees are never expanded or normal-ordered
/// symbolically; [`CartOp::prepare`] collapses them at a base point.
#[derive(Clone, Debug)]
pub enum CartOp {
    /// The derivative monomial `(d/dx)^dx (d/dy)^dy`; the identity when both
    /// exponents are zero.
    Deriv { dx: u32, dy: u32 },
    /// Multiplication by a coefficient function.
    Mul(CartCoeff),
    /// The anticommutator `{(d/dx)^dx (d/dy)^dy, f}`, evaluated as
    /// `D(f g) + f D(g)` rather than expanded symbolically.
    Anti { dx: u32, dy: u32, coeff: CartCoeff },
    /// A sum of operators.
    Sum(Vec<CartOp>),
    /// A composition, applied right-to-left: `Compose([a, b])` maps `g` to
    /// `a(b(g))`.
    Compose(Vec<CartOp>),
    /// A composition power.
    Pow(Box<CartOp>, u32),
}

impl CartOp {
    pub fn deriv(dx: u32, dy: u32) -> Self {
        CartOp::Deriv { dx, dy }
    }

    pub fn mul(coeff: CartCoeff) -> Self {
        CartOp::Mul(coeff)
    }

    pub fn anti(dx: u32, dy: u32, coeff: CartCoeff) -> Self {
        CartOp::Anti { dx, dy, coeff }
    }

    /// A rational multiple of an operator.
    pub fn scaled(c: Rat, op: CartOp) -> Self {
        CartOp::Compose(vec![CartOp::Mul(CartCoeff::rational(c)), op])
    }

    /// Syntactic upper bound for the differential order. Collapsing can only
    /// lower it (coefficients may cancel), so it is safe for sizing jets.
    pub fn order(&self) -> u32 {
        match self {
            CartOp::Deriv { dx, dy } => dx + dy,
            CartOp::Mul(_) => 0,
            CartOp::Anti { dx, dy, .. } => dx + dy,
            CartOp::Sum(parts) => parts.iter().map(CartOp::order).max().unwrap_or(0),
            CartOp::Compose(parts) => parts.iter().map(CartOp::order).sum(),
            CartOp::Pow(base, e) => base.order() * e,
        }
    }

    /// Collapse at a base point into normal-ordered jet coefficients that
    /// retain `coeff_order` orders of accuracy.
    pub fn prepare(
        &self,
        assign: &ParamAssign,
        base: &(Rat, Rat),
        coeff_order: u32,
    ) -> Result<PreparedCartOp> {
        jetop::collapse(self, assign, base, coeff_order)
    }

    /// Collapse the conjugated operator `Psi_0^-1 . self . Psi_0`. Each
    /// derivative symbol is replaced by `d + (d log Psi_0)` before
    /// collapsing, so no symbolic powers of the reference factor appear.
    pub fn prepare_conjugated(
        &self,
        gauge: &GaugeFactor,
        base: &(Rat, Rat),
        coeff_order: u32,
    ) -> Result<PreparedCartOp> {
        let rewritten = jetop::conjugate_tree(self, gauge.k());
        jetop::collapse(&rewritten, &gauge.assign(), base, coeff_order)
    }
}

/// Apply an operator to a jet. The result keeps `f.order() - op.order()`
/// orders of accuracy, so the input must carry at least the operator order.
pub fn cart_apply(op: &CartOp, assign: &ParamAssign, f: &Jet2) -> Result<Jet2> {
    let prepared = op.prepare(assign, f.base(), spare_order(op, f)?)?;
    prepared.apply(f)
}

/// Apply the conjugation `Psi_0^-1 . op . Psi_0` to a jet.
pub fn conjugated_apply(op: &CartOp, gauge: &GaugeFactor, f: &Jet2) -> Result<Jet2> {
    let prepared = op.prepare_conjugated(gauge, f.base(), spare_order(op, f)?)?;
    prepared.apply(f)
}

fn spare_order(op: &CartOp, f: &Jet2) -> Result<u32> {
    let ord = op.order();
    f.order().checked_sub(ord).ok_or_else(|| {
        Error::Invalid(format!(
            "operator of order {ord} applied to a jet of order {}",
            f.order()
        ))
    })
}

/// Parameters of the reference factor
/// `Psi_0 = (Re (x+iy)^k)^a (Im (x+iy)^k)^b exp(-w r^2 / 2 - l r^4 / 4)`.
/// Only its logarithmic gradient enters conjugation, so the exponents and
/// strengths are stored as exact rationals and no root extraction happens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeFactor {
    k: u32,
    a: Rat,
    b: Rat,
    w: Rat,
    l: Rat,
}

impl GaugeFactor {
    /// The factor with a Gaussian tail only (`l = 0`).
    pub fn exact(k: u32, a: Rat, b: Rat, w: Rat) -> Self {
        GaugeFactor {
            k,
            a,
            b,
            w,
            l: Rat::zero(),
        }
    }

    /// The factor with the quartic tail switched on.
    pub fn deformed(k: u32, a: Rat, b: Rat, w: Rat, l: Rat) -> Self {
        GaugeFactor { k, a, b, w, l }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The parameter assignment carried by this factor.
    pub fn assign(&self) -> ParamAssign {
        ParamAssign::full(self.a.clone(), self.b.clone(), self.w.clone(), self.l.clone())
    }
}

/// Deterministic pseudo-random rational points avoiding the zero sets of the
/// given factors. Coordinates are small fractions `n/d` with `|n| <= 9`,
/// `1 <= d <= 4`; points are distinct and returned in generation order.
pub fn points_avoiding(
    factors: &[SingularFactor],
    count: usize,
    seed: u64,
) -> Result<Vec<(Rat, Rat)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 10_000 * count.max(1) {
            return Err(Error::Invalid(
                "point generation exhausted its attempt budget".into(),
            ));
        }
        let mut draw = || {
            let n: i64 = rng.gen_range(-9..=9);
            let d: i64 = rng.gen_range(1..=4);
            Rat::new(n.into(), d.into())
        };
        let pt = (draw(), draw());
        if factors
            .iter()
            .map(|f| f.eval(&pt))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .any(Rat::is_zero)
        {
            continue;
        }
        if seen.insert(pt.clone()) {
            out.push(pt);
        }
    }
    Ok(out)
}

/// Points avoiding the level-`k` singular set: the axes and the zero sets of
/// `Re (x+iy)^k` and `Im (x+iy)^k`.
pub fn standard_points(k: u32, count: usize, seed: u64) -> Result<Vec<(Rat, Rat)>> {
    points_avoiding(
        &[
            SingularFactor::var_x(),
            SingularFactor::var_y(),
            SingularFactor::re_part(k),
            SingularFactor::im_part(k),
        ],
        count,
        seed,
    )
}

/// One nonzero residual from a certification run: the action applied to the
/// monomial `x^i y^j` at `point` produced a jet whose Taylor slot `slot` holds
/// `value` instead of zero.
#[derive(Clone, Debug)]
pub struct ResidualFailure {
    pub point: (Rat, Rat),
    pub monomial: (u32, u32),
    pub slot: (u32, u32),
    pub value: Rat,
}

/// Outcome of [`certify_zero`]. The run certifies that a differential
/// operator of order at most `action_order` with polynomial coefficients of
/// degree at most `deg_bound` annihilating every tested monomial jet at every
/// tested point must be the zero operator; `failures` lists each residual.
#[derive(Clone, Debug)]
pub struct CertifyReport {
    pub action_order: u32,
    pub jet_order: u32,
    pub deg_bound: u32,
    pub points: usize,
    pub monomials_per_point: usize,
    pub failures: Vec<ResidualFailure>,
}

impl CertifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A jet-to-jet action produced for one base point.
pub type JetAction<'a> = Box<dyn Fn(&Jet2) -> Result<Jet2> + 'a>;

/// Certify that a black-box jet action vanishes identically.
///
/// For every point the action is applied to the jets of all monomials
/// `x^i y^j` with `i + j <= action_order`, prepared at order `jet_order`.
/// Before testing, the matrix of derivative values
/// `(d^alpha x^i y^j)(point)` over those monomials is checked to be
/// nonsingular, so the monomial jets genuinely span and a vanishing action
/// has order-`action_order` kernel at the point. An operator of order
/// `action_order` with polynomial coefficients of degree at most `deg_bound`
/// that kills them at more than `deg_bound` points is identically zero;
/// callers must therefore supply more than `deg_bound` points.
pub fn certify_zero<F>(
    factory: F,
    action_order: u32,
    jet_order: u32,
    deg_bound: u32,
    points: &[(Rat, Rat)],
) -> Result<CertifyReport>
where
    F: for<'p> Fn(&'p (Rat, Rat)) -> Result<JetAction<'p>> + Sync,
{
    if points.len() <= deg_bound as usize {
        return Err(Error::Invalid(format!(
            "{} points cannot certify coefficients of degree up to {deg_bound}",
            points.len()
        )));
    }
    let check_point = |pt: &(Rat, Rat)| -> Result<Vec<ResidualFailure>> {
        verify_span_matrix(pt, action_order)?;
        let action = factory(pt)?;
        let mut failures = Vec::new();
        for (i, j) in triangle(action_order) {
            let mono = Poly2::mono(i, j, Scalar::Rat(Rat::one()));
            let out = action(&jet_of_poly(&mono, pt, jet_order)?)?;
            if let Some((slot, value)) = first_nonzero(&out) {
                failures.push(ResidualFailure {
                    point: pt.clone(),
                    monomial: (i, j),
                    slot,
                    value,
                });
            }
        }
        Ok(failures)
    };

    #[cfg(feature = "parallel")]
    let per_point = points
        .par_iter()
        .map(check_point)
        .collect::<Result<Vec<_>>>()?;
    #[cfg(not(feature = "parallel"))]
    let per_point = points
        .iter()
        .map(check_point)
        .collect::<Result<Vec<_>>>()?;

    Ok(CertifyReport {
        action_order,
        jet_order,
        deg_bound,
        points: points.len(),
        monomials_per_point: triangle(action_order).count(),
        failures: per_point.into_iter().flatten().collect(),
    })
}

/// Nonsingularity of the matrix `(d^alpha x^i y^j)(point)` over all pairs of
/// multi-indices with total degree at most `m`. The matrix is block
/// triangular with diagonal entries `i! j!`, so this never fires; it is
/// checked anyway so the certification does not rest on that argument.
fn verify_span_matrix(pt: &(Rat, Rat), m: u32) -> Result<()> {
    let monos: Vec<(u32, u32)> = triangle(m).collect();
    let n = monos.len();
    let mut mat = RatMat::zeros(n, n);
    for (r, &(a1, a2)) in monos.iter().enumerate() {
        for (c, &(i, j)) in monos.iter().enumerate() {
            if a1 > i || a2 > j {
                continue;
            }
            let v = falling(i, a1) * falling(j, a2)
                * pow_rat(&pt.0, i - a1)
                * pow_rat(&pt.1, j - a2);
            mat.set(r, c, v);
        }
    }
    if determinant(&mat)?.is_zero() {
        return Err(Error::SingularMatrix {
            context: format!(
                "derivative span matrix at ({}, {}) through order {m}",
                pt.0, pt.1
            ),
        });
    }
    Ok(())
}

fn falling(n: u32, k: u32) -> Rat {
    let mut out = Rat::one();
    for step in 0..k {
        out *= rat_int((n - step) as i64);
    }
    out
}

fn pow_rat(v: &Rat, e: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..e {
        out *= v;
    }
    out
}

fn first_nonzero(jet: &Jet2) -> Option<((u32, u32), Rat)> {
    triangle(jet.order())
        .map(|(p, q)| ((p, q), jet.coeff(p, q)))
        .find(|(_, c)| !c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn no_params() -> ParamAssign {
        ParamAssign::full(Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero())
    }

    #[test]
    fn singular_factors_evaluate_their_polynomials() {
        let pt = (rat(1, 2), rat(-3, 1));
        assert_eq!(SingularFactor::var_x().eval(&pt).unwrap(), rat(1, 2));
        assert_eq!(SingularFactor::x_plus_y().eval(&pt).unwrap(), rat(-5, 2));
        // Re (x+iy)^2 = x^2 - y^2.
        assert_eq!(SingularFactor::re_part(2).eval(&pt).unwrap(), rat(-35, 4));
        assert_eq!(SingularFactor::im_part(2).eval(&pt).unwrap(), rat(-3, 1));
    }

    #[test]
    fn point_generation_is_deterministic_and_avoids_singular_sets() {
        let a = standard_points(4, 24, 7).unwrap();
        let b = standard_points(4, 24, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 24);
        let p4 = SingularFactor::re_part(4);
        let q4 = SingularFactor::im_part(4);
        for pt in &a {
            assert!(!pt.0.is_zero() && !pt.1.is_zero());
            assert!(!p4.eval(pt).unwrap().is_zero());
            assert!(!q4.eval(pt).unwrap().is_zero());
        }
        let other = standard_points(4, 24, 8).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn derivative_against_coordinate_commutes_to_the_identity() {
        // [d/dx, x] acts as the identity; certify that the action minus the
        // identity is zero on jets.
        let x = CartCoeff::polynomial(Poly2::mono(1, 0, Scalar::Rat(Rat::one())));
        let commutator = CartOp::Sum(vec![
            CartOp::Compose(vec![CartOp::deriv(1, 0), CartOp::Mul(x.clone())]),
            CartOp::scaled(rat_int(-1), CartOp::Compose(vec![
                CartOp::Mul(x),
                CartOp::deriv(1, 0),
            ])),
            CartOp::scaled(rat_int(-1), CartOp::deriv(0, 0)),
        ]);
        let assign = no_params();
        let points = standard_points(1, 3, 1).unwrap();
        let report = certify_zero(
            |pt| {
                let prepared = commutator.prepare(&assign, pt, 4)?;
                Ok(Box::new(move |f: &Jet2| prepared.apply(f)) as JetAction)
            },
            1,
            5,
            2,
            &points,
        )
        .unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert_eq!(report.monomials_per_point, 3);
    }

    #[test]
    fn a_nonzero_action_is_reported_with_its_residual() {
        // d/dx alone is not zero; the report must name the offending slot.
        let op = CartOp::deriv(1, 0);
        let assign = no_params();
        let points = standard_points(1, 2, 3).unwrap();
        let report = certify_zero(
            |pt| {
                let prepared = op.prepare(&assign, pt, 3)?;
                Ok(Box::new(move |f: &Jet2| prepared.apply(f)) as JetAction)
            },
            1,
            4,
            1,
            &points,
        )
        .unwrap();
        assert!(!report.passed());
        // x^0 y^0 differentiates to zero, x^1 y^0 to one, x^0 y^1 to zero.
        assert_eq!(report.failures.len(), 2);
        assert_eq!(report.failures[0].monomial, (1, 0));
        assert_eq!(report.failures[0].value, Rat::one());
    }

    #[test]
    fn too_few_points_are_rejected() {
        let points = standard_points(1, 3, 1).unwrap();
        let err = certify_zero(
            |_pt| Ok(Box::new(|f: &Jet2| Ok(f.clone())) as JetAction),
            1,
            4,
            40,
            &points,
        )
        .unwrap_err();
        assert!(err.to_string().contains("cannot certify"));
    }

    #[test]
    fn coefficient_jets_report_singular_points_by_factor_name() {
        // 1 / (x - y) at a point on the diagonal.
        let c = CartCoeff::new(vec![CartFrac::new(
            Poly2::constant(Scalar::Rat(Rat::one())),
            vec![(SingularFactor::x_minus_y(), 1)],
        )]);
        let err = c
            .jet(&no_params(), &(rat(1, 2), rat(1, 2)), 2)
            .unwrap_err();
        match err {
            Error::SingularPoint { factor, .. } => assert_eq!(factor, "x-y"),
            other => panic!("unexpected error {other:?}"),
        }
        let jet = c.jet(&no_params(), &(rat(3, 1), rat(1, 1)), 2).unwrap();
        assert_eq!(jet.value(), &rat(1, 2));
    }
}
