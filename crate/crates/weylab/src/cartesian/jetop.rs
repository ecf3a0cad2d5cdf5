//! Collapsing operator trees into normal-ordered jet coefficients at a base
//! point, and conjugation by the reference factor as a tree rewrite.
//!
//! A [`CartOp`] tree is interpreted, never expanded symbolically. At a fixed
//! regular base point every coefficient function is just a jet, so the whole
//! tree collapses into a finite map `(p, q) -> c_(p,q)` with jet
//! coefficients: compositions are normal-ordered numerically through the
//! Leibniz rule, anticommutators through `{D, f} = D(f g) + f D(g)`. The
//! collapse tracks exactly how many orders of accuracy each intermediate jet
//! must carry, so the result is exact through the requested output order.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::jet::{jet_of_poly, Jet2};
use crate::scalar::{rat_int, Param, ParamAssign, ParamPoly, Rat, Scalar};
use crate::weyl::Poly2;
use crate::{Error, Result};

use super::xy::{harmonic_im, harmonic_re, parse_xy, poly_dx, poly_dy};
use super::{CartCoeff, CartFrac, CartOp, SingularFactor};

type TermMap = BTreeMap<(u32, u32), Jet2>;

/// An operator collapsed at a base point: finitely many jet coefficients
/// `c_(p,q)` such that the operator acts as `sum c_(p,q) d^(p,q)` on any jet
/// based there, exactly through `coeff_order` output orders.
#[derive(Clone, Debug)]
pub struct PreparedCartOp {
    base: (Rat, Rat),
    coeff_order: u32,
    terms: TermMap,
}

impl PreparedCartOp {
    /// The highest derivative order carrying a nonzero coefficient.
    pub fn order(&self) -> u32 {
        self.terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(p, q), _)| p + q)
            .max()
            .unwrap_or(0)
    }

    pub fn base(&self) -> &(Rat, Rat) {
        &self.base
    }

    pub fn coeff_order(&self) -> u32 {
        self.coeff_order
    }

    /// The coefficient jet in front of `d^(p,q)`, when present.
    pub fn coeff(&self, dx: u32, dy: u32) -> Option<&Jet2> {
        self.terms.get(&(dx, dy))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Jet2)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    /// Apply to a jet based at the same point. The input must carry at least
    /// `coeff_order + order()` orders so that the result is exact through
    /// `coeff_order`.
    pub fn apply(&self, f: &Jet2) -> Result<Jet2> {
        if f.base() != &self.base {
            return Err(Error::Invalid(
                "prepared operator applied to a jet based elsewhere".into(),
            ));
        }
        let need = self.coeff_order + self.order();
        if f.order() < need {
            return Err(Error::Invalid(format!(
                "input jet carries order {}, the prepared operator needs {need}",
                f.order()
            )));
        }
        let mut acc = Jet2::zero(self.base.clone(), self.coeff_order);
        for (&(p, q), c) in &self.terms {
            if c.is_zero() {
                continue;
            }
            let mut df = f.clone();
            for _ in 0..p {
                df = df.dx()?;
            }
            for _ in 0..q {
                df = df.dy()?;
            }
            acc = acc.add(&c.mul(&df)?)?;
        }
        Ok(acc)
    }
}

/// Collapse an operator tree at a base point.
pub(crate) fn collapse(
    op: &CartOp,
    assign: &ParamAssign,
    base: &(Rat, Rat),
    coeff_order: u32,
) -> Result<PreparedCartOp> {
    let mut ctx = Collapser::new(assign, base);
    let terms = ctx.collapse(op, coeff_order)?;
    Ok(PreparedCartOp {
        base: base.clone(),
        coeff_order,
        terms,
    })
}

/// Exact jet of a coefficient at a base point (no operator structure).
pub(crate) fn coeff_jet(
    c: &CartCoeff,
    assign: &ParamAssign,
    base: &(Rat, Rat),
    order: u32,
) -> Result<Jet2> {
    Collapser::new(assign, base).coeff_jet(c, order)
}

struct Collapser<'a> {
    assign: &'a ParamAssign,
    base: &'a (Rat, Rat),
    factor_jets: BTreeMap<(String, u32), Jet2>,
    recip_jets: BTreeMap<(String, u32), Jet2>,
}

impl<'a> Collapser<'a> {
    fn new(assign: &'a ParamAssign, base: &'a (Rat, Rat)) -> Self {
        Collapser {
            assign,
            base,
            factor_jets: BTreeMap::new(),
            recip_jets: BTreeMap::new(),
        }
    }

    fn factor_jet(&mut self, f: &SingularFactor, order: u32) -> Result<Jet2> {
        let key = (f.label().to_string(), order);
        if let Some(jet) = self.factor_jets.get(&key) {
            return Ok(jet.clone());
        }
        let jet = jet_of_poly(f.poly(), self.base, order)?;
        if jet.value().is_zero() {
            return Err(Error::SingularPoint {
                x: self.base.0.to_string(),
                y: self.base.1.to_string(),
                factor: f.label().to_string(),
            });
        }
        self.factor_jets.insert(key, jet.clone());
        Ok(jet)
    }

    fn den_recip(&mut self, den: &[(SingularFactor, u32)], order: u32) -> Result<Jet2> {
        let signature = den
            .iter()
            .map(|(f, e)| format!("{}^{e}", f.label()))
            .collect::<Vec<_>>()
            .join(" ");
        let key = (signature, order);
        if let Some(jet) = self.recip_jets.get(&key) {
            return Ok(jet.clone());
        }
        let mut prod = Jet2::one(self.base.clone(), order);
        for (f, e) in den {
            prod = prod.mul(&self.factor_jet(f, order)?.pow(*e)?)?;
        }
        let recip = prod.recip()?;
        self.recip_jets.insert(key, recip.clone());
        Ok(recip)
    }

    fn frac_jet(&mut self, frac: &CartFrac, order: u32) -> Result<Jet2> {
        let num = frac.num().instantiate(self.assign)?;
        let mut jet = jet_of_poly(&num, self.base, order)?;
        if !frac.den().is_empty() && !jet.is_zero() {
            jet = jet.mul(&self.den_recip(frac.den(), order)?)?;
        } else if !frac.den().is_empty() {
            // Still surface a singular point even when the numerator
            // instantiates to zero, so reports do not depend on parameters.
            self.den_recip(frac.den(), order)?;
        }
        Ok(jet)
    }

    fn coeff_jet(&mut self, c: &CartCoeff, order: u32) -> Result<Jet2> {
        let mut acc = Jet2::zero(self.base.clone(), order);
        for frac in c.fracs() {
            acc = acc.add(&self.frac_jet(frac, order)?)?;
        }
        Ok(acc)
    }

    /// Normal-ordered jet coefficients of `op`, exact through `order`.
    fn collapse(&mut self, op: &CartOp, order: u32) -> Result<TermMap> {
        match op {
            CartOp::Deriv { dx, dy } => {
                let mut m = TermMap::new();
                m.insert((*dx, *dy), Jet2::one(self.base.clone(), order));
                Ok(m)
            }
            CartOp::Mul(c) => {
                let mut m = TermMap::new();
                m.insert((0, 0), self.coeff_jet(c, order)?);
                Ok(m)
            }
            CartOp::Anti { dx, dy, coeff } => {
                // {D, f} = D compose f + f compose D; the left factor is
                // normal-ordered through the Leibniz rule, which needs the
                // coefficient jet at `dx + dy` extra orders.
                let f = self.coeff_jet(coeff, order + dx + dy)?;
                let mut m = TermMap::new();
                accumulate(&mut m, (*dx, *dy), f.truncated(order))?;
                leibniz_into(&mut m, *dx, *dy, &f, order)?;
                Ok(m)
            }
            CartOp::Sum(parts) => {
                let mut m = TermMap::new();
                for part in parts {
                    for (key, jet) in self.collapse(part, order)? {
                        accumulate(&mut m, key, jet)?;
                    }
                }
                Ok(m)
            }
            CartOp::Compose(parts) => {
                let refs: Vec<&CartOp> = parts.iter().collect();
                self.collapse_chain(&refs, order)
            }
            CartOp::Pow(base_op, e) => {
                let refs: Vec<&CartOp> = (0..*e).map(|_| &**base_op).collect();
                self.collapse_chain(&refs, order)
            }
        }
    }

    fn collapse_chain(&mut self, parts: &[&CartOp], order: u32) -> Result<TermMap> {
        let Some((first, rest)) = parts.split_first() else {
            let mut m = TermMap::new();
            m.insert((0, 0), Jet2::one(self.base.clone(), order));
            return Ok(m);
        };
        let f = self.collapse(first, order)?;
        if rest.is_empty() {
            return Ok(f);
        }
        // The inner factor feeds its coefficients through the outer
        // derivatives, so it must carry the outer syntactic order extra.
        let g = self.collapse_chain(rest, order + first.order())?;
        compose_maps(&f, &g, order)
    }
}

/// Normal-ordered composition of two collapsed maps:
/// `a d^(p,q) . b d^(r,s)` expands by the Leibniz rule into
/// `sum binom(p,i) binom(q,j) a (d^(i,j) b) d^(p-i+r, q-j+s)`.
fn compose_maps(f: &TermMap, g: &TermMap, order: u32) -> Result<TermMap> {
    let max_p = f.keys().map(|&(p, _)| p).max().unwrap_or(0);
    let max_q = f.keys().map(|&(_, q)| q).max().unwrap_or(0);
    let max_total = f.keys().map(|&(p, q)| p + q).max().unwrap_or(0);
    let mut out = TermMap::new();
    for (&(r, s), b) in g {
        if b.is_zero() {
            continue;
        }
        let grid = derivative_grid(b, max_p, max_q, max_total)?;
        for (&(p, q), a) in f {
            if a.is_zero() {
                continue;
            }
            for i in 0..=p {
                for j in 0..=q {
                    let db = &grid[&(i, j)];
                    if db.is_zero() {
                        continue;
                    }
                    let c = binom(p, i) * binom(q, j);
                    let term = a.mul(db)?.scale(&c);
                    accumulate(&mut out, (p - i + r, q - j + s), term)?;
                }
            }
        }
    }
    Ok(out)
}

/// Derivatives `d^(i,j) b` for `i <= max_i`, `j <= max_j`, `i + j <= cap`.
fn derivative_grid(
    b: &Jet2,
    max_i: u32,
    max_j: u32,
    cap: u32,
) -> Result<BTreeMap<(u32, u32), Jet2>> {
    let mut grid = BTreeMap::new();
    grid.insert((0, 0), b.clone());
    for i in 0..=max_i {
        for j in 0..=max_j {
            if i + j == 0 || i + j > cap {
                continue;
            }
            let prev = if j > 0 {
                grid[&(i, j - 1)].dy()?
            } else {
                grid[&(i - 1, 0)].dx()?
            };
            grid.insert((i, j), prev);
        }
    }
    Ok(grid)
}

/// Left composition `d^(dx,dy) . f` of a derivative monomial with a
/// coefficient jet, accumulated as normal-ordered terms at `order`.
fn leibniz_into(m: &mut TermMap, dx: u32, dy: u32, f: &Jet2, order: u32) -> Result<()> {
    let grid = derivative_grid(f, dx, dy, dx + dy)?;
    for i in 0..=dx {
        for j in 0..=dy {
            let c = binom(dx, i) * binom(dy, j);
            let jet = grid[&(i, j)].truncated(order).scale(&c);
            accumulate(m, (dx - i, dy - j), jet)?;
        }
    }
    Ok(())
}

fn accumulate(m: &mut TermMap, key: (u32, u32), jet: Jet2) -> Result<()> {
    match m.remove(&key) {
        Some(prev) => {
            m.insert(key, prev.add(&jet)?);
        }
        None => {
            m.insert(key, jet);
        }
    }
    Ok(())
}

fn binom(n: u32, k: u32) -> Rat {
    let mut out = Rat::one();
    for step in 0..k {
        out *= rat_int((n - step) as i64);
        out /= rat_int((step + 1) as i64);
    }
    out
}

/// Rewrite an operator as its conjugation by the reference factor: each
/// derivative symbol `d` becomes `d + (d log Psi_0)` with
/// `log Psi_0 = a log P + b log Q - w r^2 / 2 - l r^4 / 4`, `P = Re (x+iy)^k`
/// and `Q = Im (x+iy)^k`. The substituted first-order blocks commute, being
/// conjugates of commuting derivatives, so a derivative monomial becomes
/// their ordered composition and no other node changes shape.
pub(crate) fn conjugate_tree(op: &CartOp, k: u32) -> CartOp {
    match op {
        CartOp::Deriv { dx, dy } => conjugated_deriv(*dx, *dy, k),
        CartOp::Mul(c) => CartOp::Mul(c.clone()),
        CartOp::Anti { dx, dy, coeff } => {
            let d = conjugated_deriv(*dx, *dy, k);
            CartOp::Sum(vec![
                CartOp::Compose(vec![d.clone(), CartOp::Mul(coeff.clone())]),
                CartOp::Compose(vec![CartOp::Mul(coeff.clone()), d]),
            ])
        }
        CartOp::Sum(parts) => CartOp::Sum(parts.iter().map(|p| conjugate_tree(p, k)).collect()),
        CartOp::Compose(parts) => {
            CartOp::Compose(parts.iter().map(|p| conjugate_tree(p, k)).collect())
        }
        CartOp::Pow(base_op, e) => CartOp::Pow(Box::new(conjugate_tree(base_op, k)), *e),
    }
}

fn conjugated_deriv(dx: u32, dy: u32, k: u32) -> CartOp {
    if dx + dy == 0 {
        return CartOp::Deriv { dx: 0, dy: 0 };
    }
    let block_x = || {
        CartOp::Sum(vec![
            CartOp::Deriv { dx: 1, dy: 0 },
            CartOp::Mul(gradient_coeff(k, Axis::X)),
        ])
    };
    let block_y = || {
        CartOp::Sum(vec![
            CartOp::Deriv { dx: 0, dy: 1 },
            CartOp::Mul(gradient_coeff(k, Axis::Y)),
        ])
    };
    let mut parts = Vec::with_capacity((dx + dy) as usize);
    parts.extend((0..dx).map(|_| block_x()));
    parts.extend((0..dy).map(|_| block_y()));
    if parts.len() == 1 {
        parts.pop().expect("one block")
    } else {
        CartOp::Compose(parts)
    }
}

enum Axis {
    X,
    Y,
}

/// One component of `grad log Psi_0` as a symbolic coefficient:
/// `a (dP)/P + b (dQ)/Q - w v - l v (x^2 + y^2)` where `v` is the matching
/// coordinate.
fn gradient_coeff(k: u32, axis: Axis) -> CartCoeff {
    let p = harmonic_re(k);
    let q = harmonic_im(k);
    let (dp, dq, linear, radial) = match axis {
        Axis::X => (
            poly_dx(&p),
            poly_dx(&q),
            parse_xy("x"),
            parse_xy("x^3 + x y^2"),
        ),
        Axis::Y => (
            poly_dy(&p),
            poly_dy(&q),
            parse_xy("y"),
            parse_xy("x^2 y + y^3"),
        ),
    };
    let weighted = |poly: Poly2, v: Param, negate: bool| {
        let coeff = if negate {
            ParamPoly::var(v).neg()
        } else {
            ParamPoly::var(v)
        };
        poly.to_parametric()
            .mul(&Poly2::constant(Scalar::Poly(coeff)))
            .expect("symbolic ring")
    };
    CartCoeff::new(vec![
        CartFrac::new(
            weighted(dp, Param::A, false),
            vec![(SingularFactor::re_part(k), 1)],
        ),
        CartFrac::new(
            weighted(dq, Param::B, false),
            vec![(SingularFactor::im_part(k), 1)],
        ),
        CartFrac::polynomial(weighted(linear.expect("fixed source"), Param::W, true)),
        CartFrac::polynomial(weighted(radial.expect("fixed source"), Param::L, true)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartesian::{cart_apply, conjugated_apply, GaugeFactor};
    use crate::scalar::rat;

    fn no_params() -> ParamAssign {
        ParamAssign::full(Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero())
    }

    fn poly_jet(src: &str, base: (i64, i64), order: u32) -> Jet2 {
        let p = parse_xy(src).unwrap();
        jet_of_poly(&p, &(rat_int(base.0), rat_int(base.1)), order).unwrap()
    }

    #[test]
    fn anticommutator_collapses_to_the_two_sided_rule() {
        // {d/dx, f} = f' + 2 f d/dx, with f = x^2 y at (2, 3):
        // f' = 2xy = 12, 2f = 24.
        let f = CartCoeff::polynomial(parse_xy("x^2 y").unwrap());
        let op = CartOp::anti(1, 0, f);
        let prepared = op
            .prepare(&no_params(), &(rat_int(2), rat_int(3)), 0)
            .unwrap();
        assert_eq!(prepared.coeff(0, 0).unwrap().value(), &rat_int(12));
        assert_eq!(prepared.coeff(1, 0).unwrap().value(), &rat_int(24));
    }

    #[test]
    fn anticommutator_agrees_with_its_defining_action() {
        // {d^(2,0), f} g computed structurally must match D(f g) + f D(g)
        // computed directly on jets, with f = 1/x.
        let f_coeff = CartCoeff::new(vec![CartFrac::new(
            Poly2::constant(Scalar::Rat(Rat::one())),
            vec![(SingularFactor::var_x(), 1)],
        )]);
        let op = CartOp::anti(2, 0, f_coeff.clone());
        let base = (rat_int(2), rat_int(-1));
        let g = poly_jet("x^4 y^2 + x y^5", (2, -1), 8);
        let got = cart_apply(&op, &no_params(), &g).unwrap();

        let f = f_coeff.jet(&no_params(), &base, 8).unwrap();
        let fg = f.mul(&g).unwrap();
        let direct = fg
            .dx()
            .unwrap()
            .dx()
            .unwrap()
            .add(&f.mul(&g.dx().unwrap().dx().unwrap()).unwrap())
            .unwrap();
        assert_eq!(got, direct.truncated(6));
    }

    #[test]
    fn composition_normal_orders_through_the_leibniz_rule() {
        // (d/dx . x^2) h = 2x h + x^2 h'; check on h = x^3 at x = 2:
        // 2*2*8 + 4*12 = 80.
        let op = CartOp::Compose(vec![
            CartOp::deriv(1, 0),
            CartOp::Mul(CartCoeff::polynomial(parse_xy("x^2").unwrap())),
        ]);
        let h = poly_jet("x^3", (2, 5), 3);
        let out = cart_apply(&op, &no_params(), &h).unwrap();
        assert_eq!(out.value(), &rat_int(80));
        // The collapsed coefficients themselves: 2x at d^(0,0), x^2 at d^(1,0).
        let prepared = op.prepare(&no_params(), &(rat_int(2), rat_int(5)), 1).unwrap();
        assert_eq!(prepared.coeff(0, 0).unwrap().value(), &rat_int(4));
        assert_eq!(prepared.coeff(1, 0).unwrap().value(), &rat_int(4));
    }

    #[test]
    fn powers_iterate_composition() {
        let op = CartOp::Pow(Box::new(CartOp::deriv(1, 0)), 3);
        assert_eq!(op.order(), 3);
        let h = poly_jet("x^5", (1, 1), 5);
        let out = cart_apply(&op, &no_params(), &h).unwrap();
        // (x^5)''' = 60 x^2.
        assert_eq!(out.value(), &rat_int(60));
        let zeroth = CartOp::Pow(Box::new(CartOp::deriv(1, 0)), 0);
        let out = cart_apply(&zeroth, &no_params(), &h).unwrap();
        assert_eq!(out.value(), &Rat::one());
    }

    #[test]
    fn conjugated_derivative_adds_the_log_gradient() {
        // Psi^-1 d/dx Psi applied to the constant 1 is the x-component of
        // grad log Psi. For k = 1, a = 1, b = 1, w = 1, l = 0 at (2, 3):
        // a/x - w x = 1/2 - 2 = -3/2.
        let gauge = GaugeFactor::exact(1, Rat::one(), Rat::one(), Rat::one());
        let one = poly_jet("1", (2, 3), 4);
        let out = conjugated_apply(&CartOp::deriv(1, 0), &gauge, &one).unwrap();
        assert_eq!(out.value(), &rat(-3, 2));
        // The quartic tail contributes -l x r^2 = -26 l; with l = 1/2 the
        // value drops by 13.
        let deformed =
            GaugeFactor::deformed(1, Rat::one(), Rat::one(), Rat::one(), rat(1, 2));
        let out = conjugated_apply(&CartOp::deriv(1, 0), &deformed, &one).unwrap();
        assert_eq!(out.value(), &rat(-29, 2));
    }

    #[test]
    fn conjugated_blocks_commute() {
        // Conjugated d/dx and d/dy blocks are conjugates of commuting
        // derivatives, so the two orderings of a mixed second derivative
        // collapse identically.
        let gauge = GaugeFactor::exact(
            3,
            rat(2, 3),
            rat(1, 2),
            rat(5, 4),
        );
        let base = (rat_int(1), rat_int(2));
        let xy_first = conjugate_tree(&CartOp::deriv(1, 1), 3);
        let yx_first = CartOp::Compose(vec![
            conjugate_tree(&CartOp::deriv(0, 1), 3),
            conjugate_tree(&CartOp::deriv(1, 0), 3),
        ]);
        let a = collapse(&xy_first, &gauge.assign(), &base, 3).unwrap();
        let b = collapse(&yx_first, &gauge.assign(), &base, 3).unwrap();
        let probe = poly_jet("x^3 y^2 + x y^4", (1, 2), 5);
        assert_eq!(a.apply(&probe).unwrap(), b.apply(&probe).unwrap());
    }

    #[test]
    fn singular_base_points_name_the_vanishing_factor() {
        let coeff = CartCoeff::new(vec![CartFrac::new(
            Poly2::constant(Scalar::Rat(Rat::one())),
            vec![(SingularFactor::im_part(2), 1)],
        )]);
        let op = CartOp::Mul(coeff);
        // Im (x+iy)^2 = 2xy vanishes on the axes.
        let err = op.prepare(&no_params(), &(rat_int(0), rat_int(3)), 2).unwrap_err();
        match err {
            Error::SingularPoint { factor, .. } => assert_eq!(factor, "Im(x+iy)^2"),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
