//! Orthogonal-polynomial eigenfunctions and the closed-form spectrum.
//!
//! The Hamiltonian separates: the angular factor is a Jacobi polynomial in
//! the squared angular variable, the radial factor a Laguerre polynomial in
//! the squared radius. Both recurrences run in exact rational arithmetic at
//! rational parameter values only, which keeps the parametric coefficient
//! ring division-free. The reduced one-dimensional operators are applied
//! directly to certify the closed-form eigenvalues, and [`eigenpoly`]
//! assembles full two-variable eigenfunctions of the catalog Hamiltonian.

use num_traits::{One, Zero};

use crate::scalar::{rat, rat_int, Param, ParamPoly, Rat, Scalar};
use crate::unipoly::UniPoly;
use crate::weyl::Poly2;
use crate::{Error, Result};

use super::ModelParams;

fn require(params: &ModelParams, v: Param) -> Result<Rat> {
    params
        .assign
        .get(v)
        .cloned()
        .ok_or(Error::SymbolicParameter { param: v.symbol() })
}

/// Jacobi polynomial with indices `(a - 1/2, b - 1/2)` derived from the model
/// parameters, by the standard three-term recurrence. Errors when a
/// recurrence denominator vanishes at the supplied rational parameters.
pub fn jacobi_poly(n: u32, a: &Rat, b: &Rat) -> Result<UniPoly> {
    let alpha = a - rat(1, 2);
    let beta = b - rat(1, 2);
    let s = &alpha + &beta;
    let mut prev = UniPoly::one();
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = UniPoly::from_coeffs(vec![
        (&alpha - &beta) / rat_int(2),
        (&s + rat_int(2)) / rat_int(2),
    ]);
    for step in 2..=n {
        let m = rat_int(step as i64);
        let two_m_s = rat_int(2) * &m + &s;
        let denom = rat_int(2) * &m * (&m + &s) * (&two_m_s - rat_int(2));
        if denom.is_zero() {
            return Err(Error::DegenerateIndex {
                what: format!(
                    "Jacobi recurrence denominator vanishes at step {step} \
                     for indices ({alpha}, {beta})"
                ),
            });
        }
        let lin = (&two_m_s - rat_int(1)) * &two_m_s * (&two_m_s - rat_int(2));
        let cst = (&two_m_s - rat_int(1)) * (&alpha * &alpha - &beta * &beta);
        let back = rat_int(2) * (&m + &alpha - rat_int(1)) * (&m + &beta - rat_int(1)) * &two_m_s;
        let next = UniPoly::from_coeffs(vec![cst / &denom, lin / &denom])
            .mul(&cur)
            .sub(&prev.scale(&(back / &denom)));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Laguerre polynomial with index `alpha`, by the standard three-term
/// recurrence. The recurrence divides only by `m + 1`, so no rational index
/// is degenerate.
pub fn laguerre_poly(n: u32, alpha: &Rat) -> UniPoly {
    let mut prev = UniPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = UniPoly::from_coeffs(vec![alpha + Rat::one(), -Rat::one()]);
    for m in 1..n {
        let m = rat_int(m as i64);
        let inv = Rat::one() / (&m + Rat::one());
        let lin = UniPoly::from_coeffs(vec![rat_int(2) * &m + Rat::one() + alpha, -Rat::one()]);
        let next = lin.mul(&cur).sub(&prev.scale(&(&m + alpha))).scale(&inv);
        prev = cur;
        cur = next;
    }
    cur
}

/// Apply the angular reduction of the Hamiltonian, written in the squared
/// angular variable `z`, to a univariate polynomial.
pub fn apply_angular(k: u32, a: &Rat, b: &Rat, p: &UniPoly) -> UniPoly {
    let front = rat_int(4 * (k as i64) * (k as i64));
    let z = UniPoly::x();
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let quad = z.mul(&z).sub(&z);
    let lin = UniPoly::from_coeffs(vec![-(b + rat(1, 2)), a + b + Rat::one()]);
    quad.mul(&d2).add(&lin.mul(&d1)).scale(&front)
}

/// Eigenvalue of the angular reduction on the degree-`n` eigenfunction:
/// `4 k^2 n (n + a + b)`.
pub fn angular_eigenvalue(k: u32, n: u32, a: &Rat, b: &Rat) -> Rat {
    rat_int(4 * (k as i64) * (k as i64) * (n as i64)) * (rat_int(n as i64) + a + b)
}

/// Apply the radial reduction, with the angular separation constant already
/// removed by the gauge exponent, to a univariate polynomial in the squared
/// radius.
pub fn apply_radial(k: u32, a: &Rat, b: &Rat, n: u32, w: &Rat, q: &UniPoly) -> UniPoly {
    let c = rat_int(k as i64) * (rat_int(2 * n as i64) + a + b);
    let d1 = q.derivative();
    let d2 = d1.derivative();
    let lin = UniPoly::from_coeffs(vec![-(c + Rat::one()), w.clone()]);
    UniPoly::x()
        .mul(&d2)
        .scale(&rat_int(-4))
        .add(&lin.mul(&d1).scale(&rat_int(4)))
}

/// Eigenvalue of the radial reduction on the level-`n` eigenfunction:
/// `4 w n`.
pub fn radial_eigenvalue(w: &Rat, n: u32) -> Rat {
    rat_int(4 * n as i64) * w
}

/// Exact polynomial part of the eigenfunction with radial level `level` and
/// angular number `angular`: the Laguerre factor in `t` times the angular
/// factor `t^{k n} P(2u/t^k - 1)`, whose prefactor clears all denominators.
/// Needs rational `a`, `b`, `w`.
pub fn eigenpoly(params: &ModelParams, level: u32, angular: u32) -> Result<Poly2> {
    params.check_k()?;
    let k = params.k;
    let a = require(params, Param::A)?;
    let b = require(params, Param::B)?;
    let w = require(params, Param::W)?;

    let pj = jacobi_poly(angular, &a, &b)?;
    let mut angular_part = Poly2::zero();
    let mut shift_pow = Poly2::constant(Scalar::Rat(Rat::one()));
    let shift = {
        let mut s = Poly2::mono(0, 1, Scalar::Rat(rat_int(2)));
        s.add_term((k, 0), &Scalar::Rat(rat_int(-1)))?;
        s
    };
    for j in 0..=angular {
        let cj = pj.coeff(j as usize);
        if !cj.is_zero() {
            let t_pow = Poly2::mono(k * (angular - j), 0, Scalar::Rat(cj));
            angular_part = angular_part.add(&shift_pow.mul(&t_pow)?)?;
        }
        if j < angular {
            shift_pow = shift_pow.mul(&shift)?;
        }
    }

    let alpha = rat_int(k as i64) * (rat_int(2 * angular as i64) + &a + &b);
    let lg = laguerre_poly(level, &alpha).compose_affine(&w, &Rat::zero());
    let mut radial_part = Poly2::zero();
    for (i, c) in lg.iter() {
        radial_part.add_term((i as u32, 0), &Scalar::Rat(c.clone()))?;
    }

    radial_part.mul(&angular_part)
}

/// One closed-form eigenstate of the family Hamiltonian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumRecord {
    /// Radial quantum number.
    pub level: u32,
    /// Angular quantum number.
    pub angular: u32,
    /// Grade `level + k * angular`: the flag level the eigenfunction lives
    /// at, and the quantity degenerate states share.
    pub grade: u32,
    /// Radial gauge exponent `2 k * angular` used in the separation.
    pub gamma: u32,
    /// Closed-form energy of the original (not gauge-rotated) Hamiltonian,
    /// symbolic in `(a, b, w)`.
    pub energy: ParamPoly,
}

/// Closed-form energy `2w[2 level + (2 angular + a + b) k + 1]`.
pub fn energy_poly(k: u32, level: u32, angular: u32) -> ParamPoly {
    let kk = k as i64;
    let mut p = ParamPoly::zero();
    p.add_term([1, 0, 1, 0], &rat_int(2 * kk));
    p.add_term([0, 1, 1, 0], &rat_int(2 * kk));
    p.add_term(
        [0, 0, 1, 0],
        &rat_int(4 * level as i64 + 4 * (angular as i64) * kk + 2),
    );
    p
}

/// All eigenstates with grade at most `d_max`, ordered by grade and angular
/// number. States sharing a grade are degenerate.
pub fn spectrum(params: &ModelParams, d_max: u32) -> Result<Vec<SpectrumRecord>> {
    params.check_k()?;
    let k = params.k;
    let mut out = Vec::new();
    for d in 0..=d_max {
        for n in 0..=(d / k) {
            out.push(SpectrumRecord {
                level: d - k * n,
                angular: n,
                grade: d,
                gamma: 2 * k * n,
                energy: energy_poly(k, d - k * n, n),
            });
        }
    }
    Ok(out)
}

/// Number of eigenstates sharing grade `d` for family index `k`.
pub fn grade_degeneracy(k: u32, d: u32) -> u32 {
    d / k + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_h, build_x, ground_energy};
    use crate::scalar::ParamAssign;
    use crate::weyl::op_apply;

    fn up(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn parameter_pairs() -> Vec<(Rat, Rat)> {
        vec![
            (rat(1, 2), rat(1, 2)),
            (rat_int(1), rat_int(2)),
            (rat(3, 2), rat(1, 3)),
        ]
    }

    #[test]
    fn jacobi_matches_closed_forms() {
        assert_eq!(jacobi_poly(0, &rat(7, 3), &rat_int(2)).unwrap(), UniPoly::one());
        assert_eq!(jacobi_poly(1, &rat(1, 2), &rat(1, 2)).unwrap(), UniPoly::x());
        let legendre2 = UniPoly::from_coeffs(vec![rat(-1, 2), Rat::zero(), rat(3, 2)]);
        assert_eq!(jacobi_poly(2, &rat(1, 2), &rat(1, 2)).unwrap(), legendre2);
        assert!(matches!(
            jacobi_poly(2, &rat_int(0), &rat_int(-1)),
            Err(Error::DegenerateIndex { .. })
        ));
    }

    #[test]
    fn laguerre_matches_closed_forms() {
        assert_eq!(laguerre_poly(0, &rat_int(5)), UniPoly::one());
        assert_eq!(laguerre_poly(1, &rat_int(3)), up(&[4, -1]));
        let l2 = UniPoly::from_coeffs(vec![rat_int(1), rat_int(-2), rat(1, 2)]);
        assert_eq!(laguerre_poly(2, &rat_int(0)), l2);
    }

    #[test]
    fn angular_eigencheck_to_degree_ten() {
        for k in 1..=3 {
            for (a, b) in parameter_pairs() {
                for n in 0..=10 {
                    let phi = jacobi_poly(n, &a, &b)
                        .unwrap()
                        .compose_affine(&rat_int(2), &rat_int(-1));
                    let image = apply_angular(k, &a, &b, &phi);
                    let expected = phi.scale(&angular_eigenvalue(k, n, &a, &b));
                    assert_eq!(image, expected, "k = {k}, n = {n}, a = {a}, b = {b}");
                }
            }
        }
    }

    #[test]
    fn radial_eigencheck_to_level_ten() {
        for k in 1..=3 {
            for (a, b) in parameter_pairs() {
                for n in [0, 2] {
                    for w in [rat_int(1), rat(1, 3)] {
                        for level in 0..=10 {
                            let alpha =
                                rat_int(k as i64) * (rat_int(2 * n as i64) + &a + &b);
                            let q = laguerre_poly(level, &alpha)
                                .compose_affine(&w, &Rat::zero());
                            let image = apply_radial(k, &a, &b, n, &w, &q);
                            let expected = q.scale(&radial_eigenvalue(&w, level));
                            assert_eq!(image, expected, "k = {k}, n = {n}, N = {level}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn eigenpolys_are_eigenfunctions_of_h() {
        for k in 1..=3u32 {
            for (a, b, w) in [
                (rat(1, 2), rat(1, 2), rat_int(1)),
                (rat_int(1), rat_int(2), rat(1, 3)),
            ] {
                let params = ModelParams::rational(k, a, b, w.clone(), Rat::zero());
                let h = build_h(&params).unwrap();
                for d in 0..=4u32 {
                    for n in 0..=(d / k) {
                        let level = d - k * n;
                        let phi = eigenpoly(&params, level, n).unwrap();
                        assert!(!phi.is_zero());
                        let image = op_apply(&h, &phi).unwrap();
                        let expected = phi.scale(&(rat_int(4 * d as i64) * &w));
                        assert_eq!(image, expected, "k = {k}, N = {level}, n = {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn eigenpoly_spot_values() {
        let p1 = ModelParams::rational(1, rat(1, 2), rat(1, 2), rat_int(1), Rat::zero());
        let phi = eigenpoly(&p1, 0, 1).unwrap();
        let mut expected = Poly2::mono(0, 1, Scalar::Rat(rat_int(2)));
        expected.add_term((1, 0), &Scalar::Rat(rat_int(-1))).unwrap();
        assert_eq!(phi, expected);

        let p2 = ModelParams::rational(2, rat(1, 2), rat(1, 2), rat_int(1), Rat::zero());
        let phi = eigenpoly(&p2, 1, 0).unwrap();
        let mut expected = Poly2::constant(Scalar::Rat(rat_int(3)));
        expected.add_term((1, 0), &Scalar::Rat(rat_int(-1))).unwrap();
        assert_eq!(phi, expected);

        let symbolic = ModelParams::symbolic(1);
        assert!(matches!(
            eigenpoly(&symbolic, 0, 0),
            Err(Error::SymbolicParameter { .. })
        ));
    }

    #[test]
    fn separation_integral_acts_diagonally_on_the_angular_tower() {
        for k in 1..=2u32 {
            for (a, b) in [(rat(1, 2), rat(1, 2)), (rat_int(1), rat_int(2))] {
                let params =
                    ModelParams::rational(k, a.clone(), b.clone(), rat_int(1), Rat::zero());
                let x = build_x(&params).unwrap();
                for n in 0..=4u32 {
                    let phi = eigenpoly(&params, 0, n).unwrap();
                    let image = op_apply(&x, &phi).unwrap();
                    let expected = phi.scale(&angular_eigenvalue(k, n, &a, &b));
                    assert_eq!(image, expected, "k = {k}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn spectrum_grades_degeneracies_and_energies() {
        let params = ModelParams::symbolic(2);
        let records = spectrum(&params, 4).unwrap();
        let at_top: Vec<_> = records.iter().filter(|r| r.grade == 4).collect();
        assert_eq!(at_top.len(), 3);
        assert_eq!(at_top.len() as u32, grade_degeneracy(2, 4));
        let pairs: Vec<(u32, u32)> = at_top.iter().map(|r| (r.level, r.angular)).collect();
        assert_eq!(pairs, vec![(4, 0), (2, 1), (0, 2)]);
        for r in &records {
            assert_eq!(r.grade, r.level + 2 * r.angular);
            assert_eq!(r.gamma, 4 * r.angular);
        }

        assert_eq!(energy_poly(3, 0, 0), ground_energy(3));

        let assign = ParamAssign::full(rat_int(1), rat_int(1), rat_int(1), Rat::zero());
        assert_eq!(energy_poly(1, 1, 1).eval(&assign).unwrap(), rat_int(14));
    }
}
