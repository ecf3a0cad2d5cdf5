//! Deterministic parameter-grid certification of operator identities.
//!
//! A commutator of two parametric operators has coefficients that are
//! polynomials in the four parameters, with degrees bounded by the sums of
//! the factors' degrees. Vanishing at more distinct values per parameter
//! than that bound certifies the identity exactly, so a symbolic proof that
//! would exceed the term budget can fall back to finitely many rational
//! instantiations. Points are checked independently and may fan out over
//! rayon; the verdict does not depend on evaluation order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::scalar::{rat, rat_int, Param, ParamAssign, Rat};
use crate::textfmt::emit_rational;
use crate::weyl::{op_commutator_with_budget, scalar_instantiate, DiffOp, DEFAULT_TERM_BUDGET};
use crate::{Error, Result};

/// The fixed evaluation grid: eighteen distinct rationals, so coefficient
/// degrees up to seventeen per parameter are certified by vanishing.
pub fn grid_values() -> Vec<Rat> {
    let mut out = vec![rat_int(0)];
    for n in 1..=5 {
        out.push(rat_int(n));
        out.push(rat_int(-n));
    }
    for d in 2..=4 {
        out.push(rat(1, d));
        out.push(rat(-1, d));
    }
    out.push(rat(1, 5));
    out
}

/// One grid point where the commutator failed to vanish.
#[derive(Clone, Debug)]
pub struct GridFailure {
    pub assign: ParamAssign,
    pub residual_terms: usize,
}

/// Outcome of a grid certification run.
#[derive(Clone, Debug)]
pub struct GridReport {
    /// Degree bound used for each parameter, from the two factors.
    pub bounds: Vec<(Param, u32)>,
    /// Parameters that actually vary across the grid.
    pub varied: Vec<Param>,
    pub points_checked: usize,
    pub failures: Vec<GridFailure>,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn point_assignment(varied: &[Param], values: &[Rat], digits: &[usize]) -> ParamAssign {
    let mut assign = ParamAssign::full(rat_int(1), rat_int(1), rat_int(1), rat_int(1));
    for (v, &digit) in varied.iter().zip(digits) {
        assign = assign.with(*v, values[digit].clone());
    }
    assign
}

fn check_point(a: &DiffOp, b: &DiffOp, assign: &ParamAssign) -> Result<Option<GridFailure>> {
    let a_inst = scalar_instantiate(a, assign)?;
    let b_inst = scalar_instantiate(b, assign)?;
    let residual = op_commutator_with_budget(&a_inst, &b_inst, DEFAULT_TERM_BUDGET)?;
    if residual.is_zero() {
        Ok(None)
    } else {
        Ok(Some(GridFailure {
            assign: assign.clone(),
            residual_terms: residual.num_terms(),
        }))
    }
}

/// Certify `[a, b] = 0` by exhaustive evaluation on the rational grid.
///
/// Parameters that neither factor depends on are pinned to one; the rest
/// range over the full grid. The per-parameter degree bound of the
/// commutator (sum of the factors' degrees) must stay below the grid size,
/// otherwise vanishing on the grid would prove nothing and the run is
/// refused.
pub fn certify_commutator_on_grid(a: &DiffOp, b: &DiffOp) -> Result<GridReport> {
    let values = grid_values();
    let mut bounds = Vec::new();
    let mut varied = Vec::new();
    for v in [Param::A, Param::B, Param::W, Param::L] {
        let bound = a.coeff_degree_in(v) + b.coeff_degree_in(v);
        if bound as usize >= values.len() {
            return Err(Error::Invalid(format!(
                "parameter {} can reach degree {} in the commutator, beyond what {} grid values certify",
                v.symbol(),
                bound,
                values.len()
            )));
        }
        if bound > 0 {
            varied.push(v);
        }
        bounds.push((v, bound));
    }
    let points: usize = values.len().pow(varied.len() as u32);
    let assignment_of = |index: usize| {
        let mut digits = vec![0usize; varied.len()];
        let mut rest = index;
        for d in digits.iter_mut() {
            *d = rest % values.len();
            rest /= values.len();
        }
        point_assignment(&varied, &values, &digits)
    };

    #[cfg(feature = "parallel")]
    let outcomes = (0..points)
        .into_par_iter()
        .map(|i| check_point(a, b, &assignment_of(i)))
        .collect::<Result<Vec<_>>>()?;
    #[cfg(not(feature = "parallel"))]
    let outcomes = (0..points)
        .map(|i| check_point(a, b, &assignment_of(i)))
        .collect::<Result<Vec<_>>>()?;

    Ok(GridReport {
        bounds,
        varied,
        points_checked: points,
        failures: outcomes.into_iter().flatten().collect(),
    })
}

/// Human-readable rendering of a failing assignment.
pub fn describe_assignment(assign: &ParamAssign) -> String {
    [Param::A, Param::B, Param::W, Param::L]
        .into_iter()
        .filter_map(|v| {
            assign
                .get(v)
                .map(|r| format!("{}={}", v.symbol(), emit_rational(r)))
        })
        .collect::<Vec<_>>()
        .join(" ")
}
