//! Exact dense linear algebra over the rationals.
//!
//! The matrices here are small (flag-space representations, finite-sector
//! Hamiltonians), so everything is dense and row-major. Determinants use
//! fraction-free Bareiss elimination and characteristic polynomials the
//! division-free Berkowitz recursion, so coefficient growth stays polynomial
//! even though the entries are arbitrary-precision rationals.

use num_traits::{One, Zero};

use crate::scalar::{rat_int, Rat};
use crate::unipoly::UniPoly;
use crate::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Build from explicit rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        Ok(RatMat {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn mul(&self, other: &RatMat) -> Result<RatMat> {
        if self.cols != other.rows {
            return Err(Error::Invalid(format!(
                "matrix product shape mismatch: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        let cur = out.at(r, c) + a * b;
                        out.set(r, c, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &RatMat) -> Result<RatMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Invalid("matrix difference shape mismatch".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(RatMat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

/// Solve `a x = b` by Gaussian elimination with exact pivoting.
pub fn solve(a: &RatMat, b: &[Rat]) -> Result<Vec<Rat>> {
    if a.rows != a.cols || a.rows != b.len() {
        return Err(Error::Invalid(format!(
            "solve needs a square system, got {}x{} with rhs length {}",
            a.rows,
            a.cols,
            b.len()
        )));
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !m.at(r, col).is_zero())
            .ok_or(Error::SingularMatrix {
                context: "exact linear solve",
            })?;
        if pivot_row != col {
            for c in 0..n {
                let hi = m.at(col, c).clone();
                let lo = m.at(pivot_row, c).clone();
                m.set(col, c, lo);
                m.set(pivot_row, c, hi);
            }
            rhs.swap(col, pivot_row);
        }
        let pivot = m.at(col, col).clone();
        for r in (col + 1)..n {
            let factor = m.at(r, col) / &pivot;
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let v = m.at(r, c) - &factor * m.at(col, c);
                m.set(r, c, v);
            }
            rhs[r] = &rhs[r] - &factor * &rhs[col];
        }
    }
    let mut x = vec![Rat::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for c in (row + 1)..n {
            acc -= m.at(row, c) * &x[c];
        }
        x[row] = acc / m.at(row, row);
    }
    Ok(x)
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(a: &RatMat) -> Result<Rat> {
    if a.rows != a.cols {
        return Err(Error::Invalid(format!(
            "determinant of a non-square {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    if n == 0 {
        return Ok(Rat::one());
    }
    let mut m = a.clone();
    let mut sign = Rat::one();
    let mut prev = Rat::one();
    for col in 0..(n - 1) {
        if m.at(col, col).is_zero() {
            let swap = ((col + 1)..n).find(|&r| !m.at(r, col).is_zero());
            let Some(swap) = swap else {
                return Ok(Rat::zero());
            };
            for c in 0..n {
                let hi = m.at(col, c).clone();
                let lo = m.at(swap, c).clone();
                m.set(col, c, lo);
                m.set(swap, c, hi);
            }
            sign = -sign;
        }
        let pivot = m.at(col, col).clone();
        for r in (col + 1)..n {
            for c in (col + 1)..n {
                let v = (&pivot * m.at(r, c) - m.at(r, col) * m.at(col, c)) / &prev;
                m.set(r, c, v);
            }
            m.set(r, col, Rat::zero());
        }
        prev = pivot;
    }
    Ok(sign * m.at(n - 1, n - 1).clone())
}

/// Characteristic polynomial `det(x I - A)` by the division-free Berkowitz
/// recursion; coefficients come out exactly, monic of degree `n`.
pub fn charpoly(a: &RatMat) -> Result<UniPoly> {
    if a.rows != a.cols {
        return Err(Error::Invalid(format!(
            "characteristic polynomial of a non-square {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    // Coefficient vector of det(x I - A_i) for the leading i x i block,
    // descending powers: starts with det(x I) over the empty block = 1.
    let mut coeffs = vec![Rat::one()];
    for i in 1..=n {
        // Toeplitz column for the new row/column: 1, -a_ii, -R C, -R M C, ...
        // where R is the new row, C the new column, M the previous block.
        let mut toeplitz = Vec::with_capacity(i + 1);
        toeplitz.push(Rat::one());
        toeplitz.push(-a.at(i - 1, i - 1).clone());
        let mut vec_c: Vec<Rat> = (0..(i - 1)).map(|r| a.at(r, i - 1).clone()).collect();
        for _ in 0..(i - 1) {
            let dot = (0..(i - 1))
                .map(|c| a.at(i - 1, c) * &vec_c[c])
                .fold(Rat::zero(), |acc, v| acc + v);
            toeplitz.push(-dot);
            let next: Vec<Rat> = (0..(i - 1))
                .map(|r| {
                    (0..(i - 1))
                        .map(|c| a.at(r, c) * &vec_c[c])
                        .fold(Rat::zero(), |acc, v| acc + v)
                })
                .collect();
            vec_c = next;
        }
        let mut next_coeffs = vec![Rat::zero(); i + 1];
        for (shift, t) in toeplitz.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            for (j, c) in coeffs.iter().enumerate() {
                let slot = j + shift;
                if slot <= i {
                    next_coeffs[slot] = &next_coeffs[slot] + t * c;
                }
            }
        }
        coeffs = next_coeffs;
    }
    coeffs.reverse();
    Ok(UniPoly::from_coeffs(coeffs))
}

/// Characteristic polynomial by literal cofactor expansion of `det(x I - A)`
/// over univariate polynomials. Exponential in the dimension; it exists as an
/// independent oracle for cross-checking [`charpoly`] on small matrices.
pub fn charpoly_cofactor(a: &RatMat) -> Result<UniPoly> {
    if a.rows != a.cols {
        return Err(Error::Invalid(format!(
            "characteristic polynomial of a non-square {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    let mut entries = vec![vec![UniPoly::zero(); n]; n];
    for r in 0..n {
        for c in 0..n {
            let mut e = UniPoly::constant(-a.at(r, c).clone());
            if r == c {
                e = e.add(&UniPoly::x());
            }
            entries[r][c] = e;
        }
    }
    Ok(det_cofactor(&entries, &(0..n).collect::<Vec<_>>()))
}

fn det_cofactor(entries: &[Vec<UniPoly>], cols: &[usize]) -> UniPoly {
    let row = entries.len() - cols.len();
    if cols.is_empty() {
        return UniPoly::one();
    }
    let mut acc = UniPoly::zero();
    for (pos, &col) in cols.iter().enumerate() {
        let e = &entries[row][col];
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&c| c != col)
            .collect();
        let minor = det_cofactor(entries, &rest);
        let signed = if pos % 2 == 0 { minor } else { minor.neg() };
        acc = acc.add(&e.mul(&signed));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn m(rows: &[&[i64]]) -> RatMat {
        RatMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn solve_recovers_a_known_solution() {
        let a = m(&[&[2, 1, -1], &[-3, -1, 2], &[-2, 1, 2]]);
        let b = vec![rat_int(8), rat_int(-11), rat_int(-3)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(3), rat_int(-1)]);

        let singular = m(&[&[1, 2], &[2, 4]]);
        assert!(matches!(
            solve(&singular, &[rat_int(1), rat_int(2)]),
            Err(Error::SingularMatrix { .. })
        ));
    }

    #[test]
    fn determinant_agrees_with_hand_values() {
        assert_eq!(determinant(&m(&[&[3]])).unwrap(), rat_int(3));
        assert_eq!(determinant(&m(&[&[1, 2], &[3, 4]])).unwrap(), rat_int(-2));
        assert_eq!(
            determinant(&m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]])).unwrap(),
            rat_int(-5)
        );
        assert_eq!(
            determinant(&m(&[&[1, 2], &[2, 4]])).unwrap(),
            rat_int(0)
        );
        let fractional = RatMat::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 5)],
        ])
        .unwrap();
        assert_eq!(determinant(&fractional).unwrap(), rat(1, 60));
    }

    #[test]
    fn charpoly_matches_the_cofactor_oracle() {
        let samples = [
            m(&[&[2, 0], &[0, 3]]),
            m(&[&[0, 1], &[-1, 0]]),
            m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]),
            m(&[
                &[1, 0, 2, -1],
                &[3, 1, 0, 0],
                &[0, -2, 1, 4],
                &[1, 1, 1, 1],
            ]),
        ];
        for a in &samples {
            assert_eq!(charpoly(a).unwrap(), charpoly_cofactor(a).unwrap());
        }
    }

    #[test]
    fn charpoly_constant_term_is_the_signed_determinant() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        let p = charpoly(&a).unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.coeff(3), rat_int(1));
        assert_eq!(p.coeff(0), -determinant(&a).unwrap());
        assert_eq!(p.coeff(2), rat_int(-16));
    }

    #[test]
    fn empty_and_identity_edge_cases() {
        let empty = RatMat::zeros(0, 0);
        assert_eq!(determinant(&empty).unwrap(), rat_int(1));
        assert_eq!(charpoly(&empty).unwrap(), UniPoly::one());
        let id = RatMat::identity(3);
        let p = charpoly(&id).unwrap();
        let expected = UniPoly::from_coeffs(vec![rat_int(-1), rat_int(3), rat_int(-3), rat_int(1)]);
        assert_eq!(p, expected);
    }
}
