//! Recovery of unreadable operator coefficients from a commutation
//! constraint.
//!
//! A transcribed operator sometimes arrives with a handful of coefficients
//! that cannot be read.  When the operator is known to commute with a fixed
//! operator `h`, those coefficients are recoverable: writing the operator as
//! `known + sum_i X_i mono_i`, the commutator is linear in the unknowns, so
//!
//! ```text
//! [h, known] + sum_i X_i [h, mono_i] = 0
//! ```
//!
//! is an overdetermined linear system for the `X_i` over the coefficient
//! ring.  [`solve_commuting_coefficients`] eliminates unknowns through output
//! monomials whose equations involve a single unsolved unknown (the pivot
//! polynomial must divide the right-hand side exactly, so the coefficient
//! ring never leaves the polynomials), or a pair of unknowns jointly through
//! an invertible rational 2 x 2 block.  It then certifies the result by
//! checking that the residual vanishes identically.  The final check makes
//! the elimination order irrelevant: any sequence of forced pivot steps that
//! ends in a zero residual has produced the unique solution of the system
//! restricted to the hole monomials.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::scalar::{ParamExps, ParamPoly, Rat, Scalar};
use crate::weyl::{op_add, op_commutator, DiffMono, DiffOp};
use crate::{Error, Result};

/// Solve `[h, known + sum_i X_i holes_i] = 0` for the scalar polynomials
/// `X_i`.
///
/// Returns one `(monomial, coefficient)` pair per hole, in the order the
/// holes were given.  Fails if some unknowns are never isolated by output
/// monomials carrying an invertible constant-coefficient block, or if the
/// solved system leaves a nonzero residual; the latter means the readable
/// part of the transcription is itself inconsistent with commutation.
pub fn solve_commuting_coefficients(
    h: &DiffOp,
    known: &DiffOp,
    holes: &[DiffMono],
) -> Result<Vec<(DiffMono, ParamPoly)>> {
    let h = h.to_parametric();
    let images = holes
        .iter()
        .map(|&mono| op_commutator(&h, &DiffOp::from_mono(mono, Scalar::Poly(ParamPoly::one()))))
        .collect::<Result<Vec<_>>>()?;
    let mut residual = op_commutator(&h, &known.to_parametric())?;
    let mut solved: Vec<Option<ParamPoly>> = vec![None; holes.len()];

    while let Some(step) = next_step(&images, &solved, &residual) {
        let assignments = match step {
            Step::Single { idx, value } => vec![(idx, value)],
            Step::Pair { indices, values } => {
                indices.into_iter().zip(values).collect()
            }
        };
        for (idx, value) in assignments {
            if !value.is_zero() {
                let shift = images[idx].mul_scalar(&Scalar::Poly(value.clone()))?;
                residual = op_add(&residual, &shift)?;
            }
            solved[idx] = Some(value);
        }
    }

    let unsolved: Vec<DiffMono> = solved
        .iter()
        .zip(holes)
        .filter_map(|(s, m)| s.is_none().then_some(*m))
        .collect();
    if !unsolved.is_empty() {
        return Err(Error::Invalid(format!(
            "no constant-coefficient pivot block isolates the unknowns at {unsolved:?}"
        )));
    }
    if !residual.is_zero() {
        let sample: Vec<String> = residual
            .iter()
            .take(8)
            .map(|(m, _)| {
                format!("t^{} u^{} dt^{} du^{}", m.t_pow, m.u_pow, m.dt_pow, m.du_pow)
            })
            .collect();
        return Err(Error::Invalid(format!(
            "commutation residual does not vanish after solving: {} terms remain, \
             starting at {}",
            residual.num_terms(),
            sample.join(", ")
        )));
    }
    Ok(holes
        .iter()
        .copied()
        .zip(solved.into_iter().map(|s| s.expect("all unknowns solved")))
        .collect())
}

/// One forced elimination step, with the solved coefficient values already
/// computed from the current residual.
enum Step {
    Single { idx: usize, value: ParamPoly },
    Pair { indices: [usize; 2], values: [ParamPoly; 2] },
}

/// The current residual coefficient at an output monomial, promoted to a
/// parameter polynomial.
fn residual_entry(residual: &DiffOp, mono: &DiffMono) -> ParamPoly {
    match residual.coeff(mono) {
        Some(Scalar::Poly(p)) => p.clone(),
        Some(Scalar::Rat(r)) => ParamPoly::constant(r.clone()),
        None => ParamPoly::zero(),
    }
}

/// Promote a stored scalar to a parameter polynomial.
fn scalar_poly(coeff: &Scalar) -> ParamPoly {
    match coeff {
        Scalar::Rat(r) => ParamPoly::constant(r.clone()),
        Scalar::Poly(p) => p.clone(),
    }
}

/// Leading term of a nonzero polynomial in the lexicographic exponent
/// order.  Lexicographic order respects multiplication, which is what the
/// division loop below needs.
fn lead_term(p: &ParamPoly) -> (ParamExps, Rat) {
    let (exps, coeff) = p.iter().last().expect("nonzero polynomial");
    (*exps, coeff.clone())
}

/// Exact multivariate division: returns `p / d` when the quotient is a
/// polynomial, `None` otherwise.  When `p = q * d`, the leading term of
/// every partial remainder stays divisible by the leading term of `d`, so
/// peeling leading terms either produces the exact quotient or certifies
/// that none exists.
fn exact_div(p: &ParamPoly, d: &ParamPoly) -> Option<ParamPoly> {
    let (d_exps, d_coeff) = lead_term(d);
    let mut rem = p.clone();
    let mut quotient = ParamPoly::zero();
    while !rem.is_zero() {
        let (r_exps, r_coeff) = lead_term(&rem);
        let mut shift = [0u32; 4];
        for v in 0..4 {
            shift[v] = r_exps[v].checked_sub(d_exps[v])?;
        }
        let factor = r_coeff / &d_coeff;
        quotient.add_term(shift, &factor);
        for (exps, coeff) in d.iter() {
            let mut e = [0u32; 4];
            for v in 0..4 {
                e[v] = exps[v] + shift[v];
            }
            rem.add_term(e, &(-&factor * coeff));
        }
    }
    Some(quotient)
}

/// The rational constant with which an unknown's commutator image hits an
/// output monomial, `0` when the monomial is absent, `None` when the entry
/// is a genuine parameter polynomial and the equation cannot join a
/// constant-coefficient block.
fn constant_entry(image: &DiffOp, mono: &DiffMono) -> Option<Rat> {
    match image.coeff(mono) {
        None => Some(Rat::zero()),
        Some(Scalar::Rat(r)) => Some(r.clone()),
        Some(Scalar::Poly(p)) => p.as_constant(),
    }
}

fn touched_outside(
    images: &[DiffOp],
    solved: &[Option<ParamPoly>],
    members: &[usize],
    mono: &DiffMono,
) -> bool {
    images.iter().enumerate().any(|(other, image)| {
        solved[other].is_none() && !members.contains(&other) && image.coeff(mono).is_some()
    })
}

/// Find the next forced elimination step, scanning in a fixed order so the
/// sequence is deterministic.  Single unknowns isolated by an exactly
/// dividing pivot are preferred; when none exists, pairs of unknowns whose
/// images overlap are resolved jointly through two monomials carrying a
/// nonsingular rational 2 x 2 block.
fn next_step(images: &[DiffOp], solved: &[Option<ParamPoly>], residual: &DiffOp) -> Option<Step> {
    let unsolved: Vec<usize> = (0..images.len()).filter(|&i| solved[i].is_none()).collect();
    for &idx in &unsolved {
        'mono: for (mono, coeff) in images[idx].iter() {
            let pivot = scalar_poly(coeff);
            if pivot.is_zero() || touched_outside(images, solved, &[idx], mono) {
                continue 'mono;
            }
            let rhs = residual_entry(residual, mono);
            let value = if rhs.is_zero() {
                ParamPoly::zero()
            } else {
                match exact_div(&rhs, &pivot) {
                    Some(q) => q.scale(&(-Rat::one())),
                    None => continue 'mono,
                }
            };
            return Some(Step::Single { idx, value });
        }
    }
    for (pos, &i) in unsolved.iter().enumerate() {
        for &j in &unsolved[pos + 1..] {
            let support: BTreeSet<DiffMono> = images[i]
                .iter()
                .chain(images[j].iter())
                .map(|(mono, _)| *mono)
                .collect();
            let mut rows: Vec<(DiffMono, Rat, Rat)> = Vec::new();
            for mono in support {
                if touched_outside(images, solved, &[i, j], &mono) {
                    continue;
                }
                let (Some(ci), Some(cj)) =
                    (constant_entry(&images[i], &mono), constant_entry(&images[j], &mono))
                else {
                    continue;
                };
                if ci.is_zero() && cj.is_zero() {
                    continue;
                }
                rows.push((mono, ci, cj));
            }
            for (r, first) in rows.iter().enumerate() {
                for second in &rows[r + 1..] {
                    let det = &first.1 * &second.2 - &second.1 * &first.2;
                    if det.is_zero() {
                        continue;
                    }
                    let r0 = residual_entry(residual, &first.0);
                    let r1 = residual_entry(residual, &second.0);
                    let x0 = r0.scale(&(-&second.2 / &det)) + r1.scale(&(&first.2 / &det));
                    let x1 = r0.scale(&(&second.1 / &det)) + r1.scale(&(-&first.1 / &det));
                    return Some(Step::Pair { indices: [i, j], values: [x0, x1] });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::super::y8::{y8_known_part, y8_recovered, y8_repair_slots, y8_template};
    use super::super::{h_template, y2_template, y_template};
    use super::*;

    #[test]
    fn solver_recovers_deleted_coefficients_of_a_clean_integral() {
        let h = h_template(1);
        let y = y2_template();
        let holes: Vec<DiffMono> = y.iter().map(|(m, _)| *m).take(2).collect();
        let known = DiffOp::from_terms(
            y.iter()
                .filter(|(m, _)| !holes.contains(m))
                .map(|(m, c)| (*m, c.clone())),
        )
        .unwrap();
        let solved = solve_commuting_coefficients(&h, &known, &holes).unwrap();
        assert_eq!(solved.len(), holes.len());
        for (mono, poly) in solved {
            assert_eq!(Some(&Scalar::Poly(poly)), y.coeff(&mono), "slot {mono:?}");
        }
    }

    #[test]
    fn solver_rejects_an_inconsistent_readable_part() {
        let h = h_template(1);
        let y = y2_template();
        let mut terms: Vec<(DiffMono, Scalar)> = y.iter().map(|(m, c)| (*m, c.clone())).collect();
        terms[0].1 = terms[0]
            .1
            .checked_add(&Scalar::Poly(ParamPoly::one()), "test perturbation")
            .unwrap();
        let corrupted = DiffOp::from_terms(terms).unwrap();
        let err = solve_commuting_coefficients(&h, &corrupted, &[]).unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }

    #[test]
    fn order8_recovery_matches_the_frozen_values() {
        let h = h_template(4);
        let solved =
            solve_commuting_coefficients(&h, &y8_known_part(), &y8_repair_slots()).unwrap();
        let frozen: BTreeMap<DiffMono, ParamPoly> = y8_recovered().into_iter().collect();
        for (mono, poly) in solved {
            let expected = frozen.get(&mono).cloned().unwrap_or_else(ParamPoly::zero);
            assert_eq!(poly, expected, "slot {mono:?}");
        }
    }

    #[test]
    fn repaired_order8_integral_commutes_with_its_hamiltonian() {
        let bracket = op_commutator(&h_template(4), &y8_template()).unwrap();
        assert!(bracket.is_zero(), "{} residual terms", bracket.num_terms());
    }

    #[test]
    fn order6_integral_commutes_with_its_hamiltonian() {
        let y6 = y_template(3).unwrap();
        let bracket = op_commutator(&h_template(3), &y6).unwrap();
        assert!(bracket.is_zero(), "{} residual terms", bracket.num_terms());
    }

    /// The order-4 coefficients where the operator's two printings disagree,
    /// plus the one slot both printings get wrong together; commutation
    /// adjudicates every one of them.
    fn y4_disputed_slots() -> Vec<DiffMono> {
        [
            (0, 0, 1, 0),
            (0, 0, 2, 0),
            (0, 1, 0, 2),
            (0, 1, 1, 1),
            (0, 1, 2, 0),
            (0, 1, 2, 1),
            (0, 2, 0, 3),
            (1, 0, 1, 0),
            (1, 0, 1, 1),
            (1, 0, 2, 0),
            (1, 0, 3, 0),
            (1, 1, 1, 2),
            (2, 0, 1, 1),
            (2, 0, 2, 0),
            (2, 1, 0, 3),
        ]
        .iter()
        .map(|&(i, j, m, n)| DiffMono::new(i, j, m, n))
        .collect()
    }

    /// Runs the elimination loop on an arbitrary system and prints the
    /// solved values together with whatever residual survives.
    fn print_solve_diagnostics(h: &DiffOp, known: &DiffOp, holes: &[DiffMono]) {
        let h = h.to_parametric();
        let images: Vec<DiffOp> = holes
            .iter()
            .map(|&mono| {
                op_commutator(&h, &DiffOp::from_mono(mono, Scalar::Poly(ParamPoly::one())))
                    .unwrap()
            })
            .collect();
        let mut residual = op_commutator(&h, &known.to_parametric()).unwrap();
        let mut solved: Vec<Option<ParamPoly>> = vec![None; holes.len()];
        while let Some(step) = next_step(&images, &solved, &residual) {
            let assignments = match step {
                Step::Single { idx, value } => vec![(idx, value)],
                Step::Pair { indices, values } => indices.into_iter().zip(values).collect(),
            };
            for (idx, value) in assignments {
                if !value.is_zero() {
                    let shift = images[idx].mul_scalar(&Scalar::Poly(value.clone())).unwrap();
                    residual = op_add(&residual, &shift).unwrap();
                }
                solved[idx] = Some(value);
            }
        }
        for (idx, value) in solved.iter().enumerate() {
            match value {
                Some(v) => println!("hole {:?} -> {}", holes[idx], v),
                None => println!("hole {:?} UNSOLVED", holes[idx]),
            }
        }
        println!("residual terms: {}", residual.num_terms());
        for (mono, coeff) in residual.iter() {
            println!("  {mono} : {coeff}");
        }
    }

    /// Prints the post-elimination residual of the order-4 system, for
    /// localizing defects shared by both printings.
    #[test]
    #[ignore]
    fn print_order4_inconsistency() {
        let h = h_template(2);
        let y4 = y_template(2).unwrap();
        let holes = y4_disputed_slots();
        let known = DiffOp::from_terms(
            y4.iter().filter(|(m, _)| !holes.contains(m)).map(|(m, c)| (*m, c.clone())),
        )
        .unwrap();
        print_solve_diagnostics(&h, &known, &holes);
    }

    /// Re-derives the disputed order-4 coefficients from commutation and
    /// checks that the stored template already carries the adjudicated
    /// values.
    #[test]
    fn order4_disputed_coefficients_match_commutation() {
        let h = h_template(2);
        let y4 = y_template(2).unwrap();
        let holes = y4_disputed_slots();
        let known = DiffOp::from_terms(
            y4.iter().filter(|(m, _)| !holes.contains(m)).map(|(m, c)| (*m, c.clone())),
        )
        .unwrap();
        let solved = solve_commuting_coefficients(&h, &known, &holes).unwrap();
        for (mono, poly) in solved {
            let stored = match y4.coeff(&mono) {
                Some(Scalar::Poly(p)) => p.clone(),
                Some(Scalar::Rat(r)) => ParamPoly::constant(r.clone()),
                None => ParamPoly::zero(),
            };
            assert_eq!(poly, stored, "slot {mono:?}");
        }
    }

    /// Emits the adjudicated order-4 coefficients.  Run manually when the
    /// transcription changes:
    /// `cargo test -p weylab print_order4_recovery -- --ignored --nocapture`.
    #[test]
    #[ignore]
    fn print_order4_recovery() {
        let h = h_template(2);
        let y4 = y_template(2).unwrap();
        let holes = y4_disputed_slots();
        let known = DiffOp::from_terms(
            y4.iter().filter(|(m, _)| !holes.contains(m)).map(|(m, c)| (*m, c.clone())),
        )
        .unwrap();
        let solved = solve_commuting_coefficients(&h, &known, &holes).unwrap();
        for (mono, poly) in solved {
            let stored = match y4.coeff(&mono) {
                Some(Scalar::Poly(p)) => p.clone(),
                Some(Scalar::Rat(r)) => ParamPoly::constant(r.clone()),
                None => ParamPoly::zero(),
            };
            let verdict = if poly == stored { "matches" } else { "DIFFERS" };
            println!("({}, {}, {}, {}) {verdict}", mono.t_pow, mono.u_pow, mono.dt_pow, mono.du_pow);
            if poly != stored {
                println!("  stored: {stored}");
                println!("  solved: {poly}");
            }
        }
    }

    /// Prints the residual left after eliminating every hole, for localizing
    /// defects in the readable part of the order-8 transcription.
    #[test]
    #[ignore]
    fn print_order8_inconsistency() {
        print_solve_diagnostics(&h_template(4), &y8_known_part(), &y8_repair_slots());
    }

    /// Emits the recovered coefficient table in the source form used by
    /// `y8_recovered`.  Run manually when the transcription changes:
    /// `cargo test -p weylab print_order8_recovery -- --ignored --nocapture`.
    #[test]
    #[ignore]
    fn print_order8_recovery() {
        let h = h_template(4);
        let solved =
            solve_commuting_coefficients(&h, &y8_known_part(), &y8_repair_slots()).unwrap();
        for (mono, poly) in solved {
            if poly.is_zero() {
                println!(
                    "// ({}, {}, {}, {}) solved to zero",
                    mono.t_pow, mono.u_pow, mono.dt_pow, mono.du_pow
                );
                continue;
            }
            let rows: Vec<String> = poly
                .iter()
                .map(|(exps, c)| format!("({}, {}, {}, \"{}\")", exps[0], exps[1], exps[2], c))
                .collect();
            println!(
                "({}, {}, {}, {}, &[{}]),",
                mono.t_pow,
                mono.u_pow,
                mono.dt_pow,
                mono.du_pow,
                rows.join(", ")
            );
        }
    }
}
