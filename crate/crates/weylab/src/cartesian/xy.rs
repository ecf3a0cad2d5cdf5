//! Exact polynomials in the Cartesian variables `x, y`: a parser for printed
//! expressions, harmonic polynomials, exact division, factorization over the
//! singular set, and the pullback of `t, u`-polynomials.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{rat_int, Rat, Scalar};
use crate::weyl::Poly2;
use crate::{Error, Result};

use super::SingularFactor;

/// Parse an integer-coefficient polynomial in `x` and `y`.
///
/// The grammar matches printed formulas: sums of terms, each term a product
/// of juxtaposed factors (an explicit `*` is also accepted), each factor an
/// integer, `x`, `y`, or a parenthesized subexpression, optionally raised to
/// a nonnegative power with `^`. Whitespace is free.
pub fn parse_xy(src: &str) -> Result<Poly2> {
    let mut p = Parser {
        bytes: src.as_bytes(),
        pos: 0,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.fail("trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn fail(&self, msg: &str) -> Error {
        Error::Invalid(format!("polynomial parse error at byte {}: {msg}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly2> {
        let mut out = Poly2::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -Rat::one()
            }
            Some(b'+') => {
                self.pos += 1;
                Rat::one()
            }
            _ => Rat::one(),
        };
        loop {
            let term = self.term()?;
            out = out.add(&term.scale(&sign))?;
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = Rat::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Rat::one();
                }
                _ => return Ok(out),
            }
        }
    }

    fn term(&mut self) -> Result<Poly2> {
        let mut out = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(c) if c.is_ascii_digit() || c == b'x' || c == b'y' || c == b'(' => {}
                _ => return Ok(out),
            }
            out = out.mul(&self.factor()?)?;
        }
    }

    fn factor(&mut self) -> Result<Poly2> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            return atom.pow(e);
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Poly2> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly2::mono(1, 0, Scalar::Rat(Rat::one())))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Poly2::mono(0, 1, Scalar::Rat(Rat::one())))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.fail("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n = BigInt::parse_bytes(digits, 10)
                    .ok_or_else(|| self.fail("unreadable integer"))?;
                Ok(Poly2::constant(Scalar::Rat(Rat::from_integer(n))))
            }
            _ => Err(self.fail("expected a factor")),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.fail("expected an exponent"));
        }
        std::str::from_utf8(digits)
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.fail("exponent out of range"))
    }

    fn digits(&mut self) -> &[u8] {
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        &self.bytes[start..self.pos]
    }
}

/// The harmonic polynomial `Re (x+iy)^k`.
pub fn harmonic_re(k: u32) -> Poly2 {
    harmonic_pair(k).0
}

/// The harmonic polynomial `Im (x+iy)^k`.
pub fn harmonic_im(k: u32) -> Poly2 {
    harmonic_pair(k).1
}

fn harmonic_pair(k: u32) -> (Poly2, Poly2) {
    let x = Poly2::mono(1, 0, Scalar::Rat(Rat::one()));
    let y = Poly2::mono(0, 1, Scalar::Rat(Rat::one()));
    let mut re = Poly2::constant(Scalar::Rat(Rat::one()));
    let mut im = Poly2::zero();
    for _ in 0..k {
        let next_re = re.mul(&x).and_then(|p| p.sub(&im.mul(&y)?));
        let next_im = re.mul(&y).and_then(|p| p.add(&im.mul(&x)?));
        re = next_re.expect("rational ring");
        im = next_im.expect("rational ring");
    }
    (re, im)
}

/// Partial derivative in the first variable of a polynomial read as `p(x, y)`.
pub fn poly_dx(p: &Poly2) -> Poly2 {
    let mut out = Poly2::zero();
    for (&(i, j), c) in p.iter() {
        if i == 0 {
            continue;
        }
        out.add_term((i - 1, j), &c.scale(&rat_int(i as i64)))
            .expect("scaling preserves the ring");
    }
    out
}

/// Partial derivative in the second variable of a polynomial read as `p(x, y)`.
pub fn poly_dy(p: &Poly2) -> Poly2 {
    let mut out = Poly2::zero();
    for (&(i, j), c) in p.iter() {
        if j == 0 {
            continue;
        }
        out.add_term((i, j - 1), &c.scale(&rat_int(j as i64)))
            .expect("scaling preserves the ring");
    }
    out
}

/// Pull a polynomial in the algebraic variables back to the plane through
/// `t = x^2 + y^2`, `u = (Im (x+iy)^k)^2`.
pub fn pullback(p: &Poly2, k: u32) -> Result<Poly2> {
    let mut t = Poly2::mono(2, 0, Scalar::Rat(Rat::one()));
    t.add_term((0, 2), &Scalar::Rat(Rat::one()))?;
    let u = harmonic_im(k).pow(2)?;
    let max_t = p.iter().map(|(&(i, _), _)| i).max().unwrap_or(0);
    let max_u = p.iter().map(|(&(_, j), _)| j).max().unwrap_or(0);
    let t_pows = poly_powers(&t, max_t)?;
    let u_pows = poly_powers(&u, max_u)?;
    let mut out = Poly2::zero();
    for (&(i, j), c) in p.iter() {
        let base = t_pows[i as usize].mul(&u_pows[j as usize])?;
        let term = match c {
            Scalar::Rat(_) => base.mul(&Poly2::constant(c.clone()))?,
            Scalar::Poly(_) => base
                .to_parametric()
                .mul(&Poly2::constant(c.clone()))?,
        };
        out = out.add(&term)?;
    }
    Ok(out)
}

fn poly_powers(p: &Poly2, max: u32) -> Result<Vec<Poly2>> {
    let mut pows = vec![Poly2::constant(Scalar::Rat(Rat::one()))];
    for _ in 0..max {
        pows.push(pows.last().expect("nonempty").mul(p)?);
    }
    Ok(pows)
}

fn grlex_leading(p: &Poly2) -> Option<((u32, u32), Rat)> {
    p.iter()
        .map(|(&m, c)| (m, c))
        .max_by_key(|&((i, j), _)| (i + j, i))
        .and_then(|(m, c)| match c {
            Scalar::Rat(r) => Some((m, r.clone())),
            Scalar::Poly(_) => None,
        })
}

/// Exact polynomial quotient `a / b` over the rationals, or `None` when `b`
/// does not divide `a`. Division peels the graded-lexicographic leading term,
/// which strictly decreases, so the loop terminates.
pub(crate) fn exact_div(a: &Poly2, b: &Poly2) -> Option<Poly2> {
    if a.is_zero() {
        return Some(Poly2::zero());
    }
    let ((pb, qb), cb) = grlex_leading(b)?;
    let mut rem = a.clone();
    let mut quot = Poly2::zero();
    while !rem.is_zero() {
        let ((pr, qr), cr) = grlex_leading(&rem)?;
        if pr < pb || qr < qb {
            return None;
        }
        let m = Poly2::mono(pr - pb, qr - qb, Scalar::Rat(cr / &cb));
        quot = quot.add(&m).ok()?;
        rem = rem.sub(&m.mul(b).ok()?).ok()?;
    }
    Some(quot)
}

/// Rewrite `num / den` with the denominator factored over the given singular
/// atoms. When `den` itself is not a product of atoms, a monomial cofactor
/// `x^i y^j` is sought such that `den * x^i y^j` is, and the numerator is
/// multiplied by the same cofactor. The constant left over from
/// factorization is folded into the numerator.
pub(crate) fn atomize(
    num: &Poly2,
    den: &Poly2,
    atoms: &[SingularFactor],
) -> Result<(Poly2, Vec<(SingularFactor, u32)>)> {
    if den.is_zero() {
        return Err(Error::Invalid("zero denominator".into()));
    }
    for total in 0..=12u32 {
        for i in 0..=total.min(6) {
            let j = total - i;
            if j > 6 {
                continue;
            }
            let cofactor = Poly2::mono(i, j, Scalar::Rat(Rat::one()));
            let candidate = den.mul(&cofactor)?;
            if let Some((pows, constant)) = greedy_factor(&candidate, atoms) {
                let lifted = match num.ring() {
                    Some(crate::scalar::RingTag::Symbolic) => {
                        num.mul(&cofactor.to_parametric())?
                    }
                    _ => num.mul(&cofactor)?,
                };
                let scaled = lifted.scale(&(Rat::one() / constant));
                let factors = atoms
                    .iter()
                    .zip(pows)
                    .filter(|(_, e)| *e > 0)
                    .map(|(f, e)| (f.clone(), e))
                    .collect();
                return Ok((scaled, factors));
            }
        }
    }
    Err(Error::Invalid(
        "denominator does not factor over the singular set".into(),
    ))
}

fn greedy_factor(den: &Poly2, atoms: &[SingularFactor]) -> Option<(Vec<u32>, Rat)> {
    let mut cur = den.clone();
    let mut pows = vec![0u32; atoms.len()];
    for (slot, atom) in atoms.iter().enumerate() {
        while let Some(q) = exact_div(&cur, atom.poly()) {
            cur = q;
            pows[slot] += 1;
            if cur.is_zero() {
                return None;
            }
        }
    }
    match (cur.num_terms(), cur.coeff((0, 0))) {
        (1, Some(Scalar::Rat(c))) => Some((pows, c.clone())),
        _ => None,
    }
}
