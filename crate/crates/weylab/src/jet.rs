//! Exact truncated Taylor expansions at rational base points.
//!
//! A jet stores the Taylor coefficients `(d^(p,q) f)(x0,y0) / (p! q!)` of a
//! function of two variables through total degree `M`, all as exact
//! rationals. Jets are the evaluation vehicle for rational-coefficient
//! operators in the plane: arithmetic is exact through the stored order, and
//! each derivative consumes one order.

use num_traits::{One, Zero};

use crate::scalar::{Param, Rat, Scalar};
use crate::weyl::Poly2;
use crate::{Error, Result};

fn triangle_len(order: u32) -> usize {
    let m = order as usize;
    (m + 1) * (m + 2) / 2
}

pub(crate) fn idx(p: u32, q: u32) -> usize {
    let d = (p + q) as usize;
    d * (d + 1) / 2 + q as usize
}

/// All exponent pairs with total degree at most `order`, in index order.
pub(crate) fn triangle(order: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..=order).flat_map(|d| (0..=d).map(move |q| (d - q, q)))
}

/// Order-`M` truncated Taylor expansion of a function at a rational point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Jet2 {
    base: (Rat, Rat),
    order: u32,
    coeffs: Vec<Rat>,
}

impl Jet2 {
    pub fn zero(base: (Rat, Rat), order: u32) -> Self {
        Jet2 {
            base,
            order,
            coeffs: vec![Rat::zero(); triangle_len(order)],
        }
    }

    pub fn constant(c: Rat, base: (Rat, Rat), order: u32) -> Self {
        let mut jet = Jet2::zero(base, order);
        jet.coeffs[0] = c;
        jet
    }

    pub fn one(base: (Rat, Rat), order: u32) -> Self {
        Jet2::constant(Rat::one(), base, order)
    }

    /// The first coordinate function.
    pub fn var_x(base: (Rat, Rat), order: u32) -> Self {
        let mut jet = Jet2::zero(base.clone(), order);
        jet.coeffs[0] = base.0;
        if order >= 1 {
            jet.coeffs[idx(1, 0)] = Rat::one();
        }
        jet
    }

    /// The second coordinate function.
    pub fn var_y(base: (Rat, Rat), order: u32) -> Self {
        let mut jet = Jet2::zero(base.clone(), order);
        jet.coeffs[0] = base.1;
        if order >= 1 {
            jet.coeffs[idx(0, 1)] = Rat::one();
        }
        jet
    }

    pub fn base(&self) -> &(Rat, Rat) {
        &self.base
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Taylor coefficient of `(x-x0)^p (y-y0)^q`; zero beyond the order.
    pub fn coeff(&self, p: u32, q: u32) -> Rat {
        if p + q > self.order {
            Rat::zero()
        } else {
            self.coeffs[idx(p, q)].clone()
        }
    }

    /// The value of the function at the base point.
    pub fn value(&self) -> &Rat {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    fn common_order(&self, other: &Jet2, context: &'static str) -> Result<u32> {
        if self.base != other.base {
            return Err(Error::Invalid(format!(
                "{context}: jets based at different points"
            )));
        }
        Ok(self.order.min(other.order))
    }

    pub fn add(&self, other: &Jet2) -> Result<Jet2> {
        let order = self.common_order(other, "jet sum")?;
        let mut out = Jet2::zero(self.base.clone(), order);
        for (p, q) in triangle(order) {
            out.coeffs[idx(p, q)] = self.coeff(p, q) + other.coeff(p, q);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Jet2 {
        Jet2 {
            base: self.base.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Jet2) -> Result<Jet2> {
        self.add(&other.neg())
    }

    pub fn scale(&self, f: &Rat) -> Jet2 {
        Jet2 {
            base: self.base.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    /// Product, exact through the smaller of the two orders.
    pub fn mul(&self, other: &Jet2) -> Result<Jet2> {
        let order = self.common_order(other, "jet product")?;
        let mut out = Jet2::zero(self.base.clone(), order);
        for (p1, q1) in triangle(order.min(self.order)) {
            let a = &self.coeffs[idx(p1, q1)];
            if a.is_zero() {
                continue;
            }
            for (p2, q2) in triangle(order - (p1 + q1)) {
                let b = other.coeff(p2, q2);
                if b.is_zero() {
                    continue;
                }
                out.coeffs[idx(p1 + p2, q1 + q2)] += a * b;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Jet2> {
        let mut out = Jet2::one(self.base.clone(), self.order);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Multiplicative inverse, defined only when the value at the base point
    /// is nonzero: `f.recip()? * f = 1` through the order.
    pub fn recip(&self) -> Result<Jet2> {
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroJetValue);
        }
        let lead = Rat::one() / &self.coeffs[0];
        let mut out = Jet2::zero(self.base.clone(), self.order);
        out.coeffs[0] = lead.clone();
        for d in 1..=self.order {
            for q in 0..=d {
                let p = d - q;
                let mut acc = Rat::zero();
                for (p1, q1) in triangle(d) {
                    if p1 + q1 == 0 || p1 > p || q1 > q {
                        continue;
                    }
                    let a = &self.coeffs[idx(p1, q1)];
                    if a.is_zero() {
                        continue;
                    }
                    acc += a * &out.coeffs[idx(p - p1, q - q1)];
                }
                out.coeffs[idx(p, q)] = -acc * &lead;
            }
        }
        Ok(out)
    }

    /// Derivative in the first variable; consumes one order of accuracy.
    pub fn dx(&self) -> Result<Jet2> {
        let order = self
            .order
            .checked_sub(1)
            .ok_or_else(|| Error::Invalid("derivative of an order-zero jet".into()))?;
        let mut out = Jet2::zero(self.base.clone(), order);
        for (p, q) in triangle(order) {
            out.coeffs[idx(p, q)] =
                self.coeffs[idx(p + 1, q)].clone() * Rat::from_integer((p + 1).into());
        }
        Ok(out)
    }

    /// Derivative in the second variable; consumes one order of accuracy.
    pub fn dy(&self) -> Result<Jet2> {
        let order = self
            .order
            .checked_sub(1)
            .ok_or_else(|| Error::Invalid("derivative of an order-zero jet".into()))?;
        let mut out = Jet2::zero(self.base.clone(), order);
        for (p, q) in triangle(order) {
            out.coeffs[idx(p, q)] =
                self.coeffs[idx(p, q + 1)].clone() * Rat::from_integer((q + 1).into());
        }
        Ok(out)
    }

    /// Truncate to a lower order.
    pub fn truncated(&self, order: u32) -> Jet2 {
        let order = order.min(self.order);
        let mut out = Jet2::zero(self.base.clone(), order);
        for (p, q) in triangle(order) {
            out.coeffs[idx(p, q)] = self.coeffs[idx(p, q)].clone();
        }
        out
    }
}

/// Exact jet of a polynomial in the plane (first variable read as `x`,
/// second as `y`); every coefficient must be rational.
///
/// Shifts each monomial directly: the jet coefficient of `x^p y^q` at
/// `(x0, y0)` in slot `(i, j)` is `C(p,i) x0^(p-i) C(q,j) y0^(q-j)`, so no
/// jet multiplications are needed even for high-degree inputs.
pub fn jet_of_poly(poly: &Poly2, base: &(Rat, Rat), order: u32) -> Result<Jet2> {
    let max_x = poly.iter().map(|(&(p, _), _)| p).max().unwrap_or(0);
    let max_y = poly.iter().map(|(&(_, q), _)| q).max().unwrap_or(0);
    let x_pows = power_table(&base.0, max_x);
    let y_pows = power_table(&base.1, max_y);

    let mut out = Jet2::zero(base.clone(), order);
    for (&(px, py), coeff) in poly.iter() {
        let c = match coeff {
            Scalar::Rat(r) => r.clone(),
            Scalar::Poly(p) => {
                let culprit = [Param::A, Param::B, Param::W, Param::L]
                    .into_iter()
                    .find(|&v| p.depends_on(v))
                    .map_or('?', Param::symbol);
                return Err(Error::SymbolicParameter { param: culprit });
            }
        };
        // binom_x = C(px, i), advanced incrementally over i.
        let mut binom_x = Rat::one();
        for i in 0..=px.min(order) {
            let row = &c * &binom_x * &x_pows[(px - i) as usize];
            let mut binom_y = Rat::one();
            for j in 0..=py.min(order - i) {
                out.coeffs[idx(i, j)] += &row * &binom_y * &y_pows[(py - j) as usize];
                binom_y *= Rat::from_integer(((py - j) as i64).into());
                binom_y /= Rat::from_integer(((j + 1) as i64).into());
            }
            binom_x *= Rat::from_integer(((px - i) as i64).into());
            binom_x /= Rat::from_integer(((i + 1) as i64).into());
        }
    }
    Ok(out)
}

fn power_table(v: &Rat, max: u32) -> Vec<Rat> {
    let mut pows = Vec::with_capacity(max as usize + 1);
    pows.push(Rat::one());
    for _ in 0..max {
        pows.push(pows.last().expect("nonempty") * v);
    }
    pows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int, ParamPoly};

    fn pt(x: i64, y: i64) -> (Rat, Rat) {
        (rat_int(x), rat_int(y))
    }

    fn poly(terms: &[(u32, u32, i64)]) -> Poly2 {
        let mut p = Poly2::zero();
        for &(px, py, c) in terms {
            p = p
                .add(&Poly2::mono(px, py, Scalar::Rat(rat_int(c))))
                .unwrap();
        }
        p
    }

    #[test]
    fn taylor_coefficients_of_a_cubic_monomial() {
        // x^2 y at (1,1): (1+h)^2 (1+k) truncated at total degree 2.
        let jet = jet_of_poly(&poly(&[(2, 1, 1)]), &pt(1, 1), 2).unwrap();
        assert_eq!(jet.coeff(0, 0), rat_int(1));
        assert_eq!(jet.coeff(1, 0), rat_int(2));
        assert_eq!(jet.coeff(0, 1), rat_int(1));
        assert_eq!(jet.coeff(2, 0), rat_int(1));
        assert_eq!(jet.coeff(1, 1), rat_int(2));
        assert_eq!(jet.coeff(0, 2), rat_int(0));
    }

    #[test]
    fn taylor_coefficients_of_a_difference_of_squares() {
        let jet = jet_of_poly(&poly(&[(2, 0, 1), (0, 2, -1)]), &pt(2, 1), 2).unwrap();
        assert_eq!(jet.coeff(0, 0), rat_int(3));
        assert_eq!(jet.coeff(1, 0), rat_int(4));
        assert_eq!(jet.coeff(0, 1), rat_int(-2));
        assert_eq!(jet.coeff(2, 0), rat_int(1));
        assert_eq!(jet.coeff(1, 1), rat_int(0));
        assert_eq!(jet.coeff(0, 2), rat_int(-1));
    }

    #[test]
    fn constant_polynomial_jet_is_the_constant() {
        let jet = jet_of_poly(&poly(&[(0, 0, 1)]), &pt(3, -5), 4).unwrap();
        assert_eq!(jet, Jet2::one(pt(3, -5), 4));
    }

    #[test]
    fn ring_laws_hold_through_the_order() {
        let f = jet_of_poly(&poly(&[(1, 0, 1), (0, 1, 2), (2, 1, 1)]), &pt(1, 2), 4).unwrap();
        let g = jet_of_poly(&poly(&[(0, 0, 3), (1, 1, -1)]), &pt(1, 2), 4).unwrap();
        let h = jet_of_poly(&poly(&[(0, 2, 5), (1, 0, 7)]), &pt(1, 2), 4).unwrap();
        assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        assert_eq!(
            f.mul(&g).unwrap().mul(&h).unwrap(),
            f.mul(&g.mul(&h).unwrap()).unwrap()
        );
        assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
    }

    #[test]
    fn reciprocal_inverts_exactly_through_the_order() {
        let f = jet_of_poly(&poly(&[(0, 0, 5), (1, 0, 1), (0, 2, -3)]), &pt(1, 1), 5).unwrap();
        let product = f.recip().unwrap().mul(&f).unwrap();
        assert_eq!(product, Jet2::one(pt(1, 1), 5));

        let vanishing = jet_of_poly(&poly(&[(1, 0, 1)]), &pt(0, 7), 3).unwrap();
        assert!(matches!(vanishing.recip(), Err(Error::ZeroJetValue)));
    }

    #[test]
    fn derivatives_shift_coefficients_and_consume_order() {
        // x^3 at (1,0): second derivative is 6x, value 6.
        let f = jet_of_poly(&poly(&[(3, 0, 1)]), &pt(1, 0), 3).unwrap();
        let second = f.dx().unwrap().dx().unwrap();
        assert_eq!(second.order(), 1);
        assert_eq!(second.value(), &rat_int(6));
        assert_eq!(second.coeff(1, 0), rat_int(6));

        // 4 x y^2 at (2,3): the y-derivative 8xy evaluates to 48.
        let g = jet_of_poly(&poly(&[(1, 2, 4)]), &pt(2, 3), 3).unwrap();
        assert_eq!(g.dy().unwrap().value(), &rat_int(48));
        assert!(Jet2::one(pt(0, 0), 0).dx().is_err());
    }

    #[test]
    fn mixed_base_points_are_rejected_and_orders_truncate() {
        let f = Jet2::one(pt(0, 0), 3);
        let g = Jet2::one(pt(1, 0), 3);
        assert!(f.add(&g).is_err());
        let h = Jet2::var_x(pt(0, 0), 5).mul(&Jet2::var_x(pt(0, 0), 2)).unwrap();
        assert_eq!(h.order(), 2);
        assert_eq!(h.coeff(2, 0), rat_int(1));
    }

    #[test]
    fn symbolic_coefficients_are_rejected_by_name() {
        let mut p = Poly2::zero();
        p = p
            .add(&Poly2::mono(1, 0, Scalar::Poly(ParamPoly::var(Param::B))))
            .unwrap();
        assert!(matches!(
            jet_of_poly(&p, &pt(1, 1), 2),
            Err(Error::SymbolicParameter { param: 'b' })
        ));
    }

    #[test]
    fn fractional_base_points_stay_exact() {
        let f = jet_of_poly(&poly(&[(2, 0, 1)]), &(rat(1, 2), rat(1, 3)), 2).unwrap();
        assert_eq!(f.value(), &rat(1, 4));
        assert_eq!(f.coeff(1, 0), rat_int(1));
        assert_eq!(f.coeff(2, 0), rat_int(1));
    }
}
