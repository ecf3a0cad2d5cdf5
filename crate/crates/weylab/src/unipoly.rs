//! Dense univariate polynomials with exact rational coefficients.
//!
//! The degrees that occur here are tiny (orthogonal polynomials up to degree
//! ten, characteristic polynomials of small sector matrices), so a dense
//! ascending coefficient vector is the simplest exact representation. All
//! arithmetic is over [`Rat`] and never leaves it.

use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::{rat_int, Rat};
use crate::{Error, Result};

/// Polynomial in one variable, coefficients stored ascending by power with no
/// trailing zeros. The zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        UniPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// Build from an ascending coefficient vector, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the convention that the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of `x^i`, zero beyond the stored range.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs.iter().enumerate()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn scale(&self, f: &Rat) -> UniPoly {
        if f.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    /// Substitute an affine argument: the value at `x` becomes the value the
    /// original took at `scale * x + shift`.
    pub fn compose_affine(&self, scale: &Rat, shift: &Rat) -> UniPoly {
        let inner = UniPoly::from_coeffs(vec![shift.clone(), scale.clone()]);
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// Coefficient vector reversed: `x^deg * p(1/x)`.
    pub fn reversed(&self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().rev().cloned().collect())
    }

    /// Scaled so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(lead) => self.scale(&(Rat::one() / lead)),
            None => UniPoly::zero(),
        }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let lead = divisor
            .leading()
            .ok_or_else(|| Error::Invalid("univariate division by zero".into()))?
            .clone();
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd || (dd == 0 && !rem.is_empty()) {
            let top = rem.len() - 1;
            if rem[top].is_zero() {
                rem.pop();
                continue;
            }
            let factor = &rem[top] / &lead;
            let offset = top - dd;
            quot[offset] = factor.clone();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[offset + i] -= c * &factor;
            }
            rem.pop();
        }
        Ok((UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem)))
    }

    /// Monic greatest common divisor; zero when both arguments are zero.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = if c < &Rat::zero() { -c.clone() } else { c.clone() };
            if first {
                if c < &Rat::zero() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c < &Rat::zero() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
                if i > 0 {
                    f.write_str("*")?;
                }
            }
            if i == 1 {
                f.write_str("x")?;
            } else if i > 1 {
                write!(f, "x^{i}")?;
            }
        }
        Ok(())
    }
}
