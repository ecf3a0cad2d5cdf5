//! The operator catalog: a family of planar quantum Hamiltonians indexed by
//! an integer `k >= 1`, their integrals of motion, and a finite-sector
//! deformation.
//!
//! All operators are given in the variables `(t, u)` in which they act on
//! polynomials. The family members built here:
//!
//! * `h` ([`build_h`]): the gauge-rotated Hamiltonian, second order, with the
//!   ground state shifted to zero.
//! * `x` ([`build_x`]): the second-order integral coming from separation of
//!   variables; commutes with `h` for every `k`.
//! * `y` ([`build_y`]): the higher integral of order `2k`, available in
//!   closed form for `k = 1..=4`; for larger `k` its existence is conjectured
//!   and [`build_y`] refuses.
//! * `hqes` ([`build_hqes`]): the finite-sector deformation of `h` with
//!   strength `l`; for a sector size `N` it keeps a finite polynomial space
//!   invariant instead of a whole flag.
//!
//! Coefficients are validated against the grading in which every catalog
//! operator is homogeneous; see [`validate_g_homogeneous`]. This catches
//! transcription slips in any single term mechanically.

pub mod lie;
pub mod orthopoly;
pub mod repair;
mod y6;
mod y8;

use num_traits::One;

use crate::scalar::{rat_int, Param, ParamAssign, ParamPoly, Rat, Scalar};
use crate::weyl::{scalar_instantiate, DiffMono, DiffOp};
use crate::{Error, Result};

/// Model selector: the family index `k`, rational values for any subset of
/// the parameters `(a, b, w, l)` (unassigned ones stay symbolic), and the
/// sector size for the finite-sector Hamiltonian.
#[derive(Clone, Debug)]
pub struct ModelParams {
    pub k: u32,
    pub assign: ParamAssign,
    pub sector: Option<u32>,
}

impl ModelParams {
    /// Fully symbolic model for the given family index.
    pub fn symbolic(k: u32) -> Self {
        ModelParams {
            k,
            assign: ParamAssign::new(),
            sector: None,
        }
    }

    /// Fully rational model.
    pub fn rational(k: u32, a: Rat, b: Rat, w: Rat, l: Rat) -> Self {
        ModelParams {
            k,
            assign: ParamAssign::full(a, b, w, l),
            sector: None,
        }
    }

    pub fn with_assign(k: u32, assign: ParamAssign) -> Self {
        ModelParams {
            k,
            assign,
            sector: None,
        }
    }

    pub fn with_sector(mut self, sector: u32) -> Self {
        self.sector = Some(sector);
        self
    }

    fn check_k(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Invalid("family index k must be positive".into()));
        }
        Ok(())
    }
}

/// Shorthands for building parametric coefficients.
pub(crate) fn pa() -> ParamPoly {
    ParamPoly::var(Param::A)
}
pub(crate) fn pb() -> ParamPoly {
    ParamPoly::var(Param::B)
}
pub(crate) fn pw() -> ParamPoly {
    ParamPoly::var(Param::W)
}
pub(crate) fn pl() -> ParamPoly {
    ParamPoly::var(Param::L)
}
pub(crate) fn pc(n: i64) -> ParamPoly {
    ParamPoly::constant(rat_int(n))
}

/// Polynomial in `(a, b)` from `(a_exp, b_exp, coeff)` triples.
pub(crate) fn ab(terms: &[(u32, u32, i64)]) -> ParamPoly {
    let mut p = ParamPoly::zero();
    for &(ae, be, c) in terms {
        p.add_term([ae, be, 0, 0], &rat_int(c));
    }
    p
}

/// Push one parametric term onto a template under construction.
pub(crate) fn push_term(
    terms: &mut Vec<(DiffMono, Scalar)>,
    t_pow: u32,
    u_pow: u32,
    dt_pow: u32,
    du_pow: u32,
    coeff: ParamPoly,
) {
    if !coeff.is_zero() {
        terms.push((
            DiffMono::new(t_pow, u_pow, dt_pow, du_pow),
            Scalar::Poly(coeff),
        ));
    }
}

/// Substitute the rational entries of the assignment; land in the rational
/// ring when every occurring parameter is covered, else stay parametric.
pub(crate) fn finalize(template: &DiffOp, assign: &ParamAssign) -> DiffOp {
    match scalar_instantiate(template, assign) {
        Ok(op) => op,
        Err(_) => template.substitute(assign),
    }
}

/// Grading degree of one term: `t, u` count `+1, +k`, the derivatives count
/// `-1, -k`, the frequency parameter counts `-1` and the sector strength
/// `-2`. Every catalog operator is homogeneous in this degree.
pub fn g_degree(k: u32, mono: &DiffMono, w_pow: u32, l_pow: u32) -> i64 {
    let k = k as i64;
    (mono.t_pow as i64 + k * mono.u_pow as i64)
        - (mono.dt_pow as i64 + k * mono.du_pow as i64)
        - w_pow as i64
        - 2 * l_pow as i64
}

/// Check that every term of a parametric operator sits at one grading
/// degree. Transcribed operators are validated at construction; a violation
/// means a corrupted coefficient.
pub fn validate_g_homogeneous(op: &DiffOp, k: u32, expected: i64) -> Result<()> {
    for (mono, coeff) in op.iter() {
        match coeff {
            Scalar::Rat(_) => {
                let d = g_degree(k, mono, 0, 0);
                if d != expected {
                    return Err(Error::Invalid(format!(
                        "term '{mono}' has grading degree {d}, expected {expected}"
                    )));
                }
            }
            Scalar::Poly(p) => {
                for (exps, _) in p.iter() {
                    let d = g_degree(k, mono, exps[Param::W.index()], exps[Param::L.index()]);
                    if d != expected {
                        return Err(Error::Invalid(format!(
                            "term '{mono}' with parameter exponents {exps:?} has grading \
                             degree {d}, expected {expected}"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Parametric template of the Hamiltonian `h` for family index `k`.
pub(crate) fn h_template(k: u32) -> DiffOp {
    let kk = k as i64;
    let mut terms = Vec::new();
    push_term(&mut terms, 1, 0, 2, 0, pc(-4));
    push_term(&mut terms, 0, 1, 1, 1, pc(-8 * kk));
    push_term(&mut terms, k - 1, 1, 0, 2, pc(-4 * kk * kk));
    push_term(&mut terms, 1, 0, 1, 0, 4 * pw());
    push_term(&mut terms, 0, 0, 1, 0, -4 * kk * (pa() + pb()) - pc(4));
    push_term(&mut terms, 0, 1, 0, 1, 4 * kk * pw());
    push_term(&mut terms, k - 1, 0, 0, 1, -2 * kk * kk * (2 * pb() + pc(1)));
    DiffOp::from_terms(terms).expect("parametric template")
}

/// Gauge-rotated Hamiltonian with ground energy removed: second order,
/// preserves the graded polynomial flag for its family index.
pub fn build_h(p: &ModelParams) -> Result<DiffOp> {
    p.check_k()?;
    let template = h_template(p.k);
    validate_g_homogeneous(&template, p.k, -1)?;
    Ok(finalize(&template, &p.assign))
}

/// Parametric template of the separation integral `x`.
pub(crate) fn x_template(k: u32) -> DiffOp {
    let kk = k as i64;
    let k2 = kk * kk;
    let mut terms = Vec::new();
    push_term(&mut terms, k, 1, 0, 2, pc(-4 * k2));
    push_term(&mut terms, 0, 2, 0, 2, pc(4 * k2));
    push_term(&mut terms, k, 0, 0, 1, -2 * k2 * (2 * pb() + pc(1)));
    push_term(&mut terms, 0, 1, 0, 1, 4 * k2 * (pa() + pb() + pc(1)));
    DiffOp::from_terms(terms).expect("parametric template")
}

/// Second-order integral from angular separation; commutes with `h` for
/// every family index.
pub fn build_x(p: &ModelParams) -> Result<DiffOp> {
    p.check_k()?;
    let template = x_template(p.k);
    validate_g_homogeneous(&template, p.k, 0)?;
    Ok(finalize(&template, &p.assign))
}

/// Shift subtracted from the angular integral before the gauge rotation:
/// `k^2 (a + b)^2`, its lowest eigenvalue.
pub fn x_constant(k: u32) -> ParamPoly {
    let k2 = (k as i64) * (k as i64);
    k2 * (pa() + pb()).pow(2)
}

fn y2_template() -> DiffOp {
    let mut terms = Vec::new();
    push_term(&mut terms, 1, 0, 2, 0, pc(4));
    push_term(&mut terms, 0, 1, 2, 0, pc(-4));
    push_term(&mut terms, 1, 0, 1, 0, -4 * pw());
    push_term(&mut terms, 0, 1, 1, 0, 4 * pw());
    push_term(&mut terms, 0, 0, 1, 0, 4 * pa() + pc(2));
    DiffOp::from_terms(terms).expect("parametric template")
}

fn y4_template() -> DiffOp {
    let a2p1 = 2 * pa() + pc(1);
    let b2p1 = 2 * pb() + pc(1);
    let b2p3 = 2 * pb() + pc(3);
    let abp1 = pa() + pb() + pc(1);
    let abp2 = pa() + pb() + pc(2);
    let a2ab1 = 2 * pa() + 2 * pb() + pc(1);
    let mut terms = Vec::new();
    // Order 4.
    push_term(&mut terms, 2, 0, 4, 0, pc(16));
    push_term(&mut terms, 0, 1, 4, 0, pc(-16));
    push_term(&mut terms, 2, 1, 2, 2, pc(-128));
    push_term(&mut terms, 0, 2, 2, 2, pc(128));
    push_term(&mut terms, 2, 2, 0, 4, pc(256));
    push_term(&mut terms, 0, 3, 0, 4, pc(-256));
    // Order 3.
    push_term(&mut terms, 2, 0, 3, 0, -32 * pw());
    push_term(&mut terms, 1, 0, 3, 0, 32 * a2p1.clone());
    push_term(&mut terms, 0, 1, 3, 0, 32 * pw());
    push_term(&mut terms, 2, 0, 2, 1, -64 * b2p1.clone());
    push_term(&mut terms, 0, 1, 2, 1, 128 * abp1.clone());
    push_term(&mut terms, 2, 1, 1, 2, 128 * pw());
    push_term(&mut terms, 1, 1, 1, 2, -128 * a2p1.clone());
    push_term(&mut terms, 0, 2, 1, 2, -128 * pw());
    push_term(&mut terms, 2, 1, 0, 3, 256 * b2p3.clone());
    push_term(&mut terms, 0, 2, 0, 3, -512 * abp2);
    // Order 2.  Both transcription sources print the four t-derivative
    // rows of this block sixteen times too large and the three mixed
    // t,u-derivative rows with the opposite sign; the values below are the
    // unique ones that let the operator commute with its Hamiltonian (the
    // solve lives in catalog::repair, frozen by its order-4 tests).
    push_term(&mut terms, 2, 0, 2, 0, 16 * pw().pow(2));
    push_term(&mut terms, 1, 0, 2, 0, -48 * a2p1.clone() * pw());
    push_term(&mut terms, 0, 1, 2, 0, -16 * pw().pow(2));
    push_term(&mut terms, 0, 0, 2, 0, 16 * a2p1.clone() * a2ab1.clone());
    push_term(&mut terms, 2, 0, 1, 1, 64 * b2p1.clone() * pw());
    push_term(&mut terms, 1, 0, 1, 1, -64 * a2p1.clone() * b2p1.clone());
    push_term(&mut terms, 0, 1, 1, 1, -128 * abp1 * pw());
    push_term(&mut terms, 2, 0, 0, 2, 64 * b2p1.clone() * b2p3);
    push_term(&mut terms, 1, 1, 0, 2, 64 * a2p1.clone() * pw());
    push_term(
        &mut terms,
        0,
        1,
        0,
        2,
        -128
            * (2 * pa().pow(2) + 6 * pa() * pb() + 2 * pb().pow(2) + 8 * pa() + 7 * pb() + pc(5)),
    );
    // Order 1.
    push_term(&mut terms, 1, 0, 1, 0, 16 * a2p1.clone() * pw().pow(2));
    push_term(&mut terms, 0, 0, 1, 0, -16 * a2p1.clone() * a2ab1.clone() * pw());
    push_term(&mut terms, 1, 0, 0, 1, 32 * a2p1.clone() * b2p1.clone() * pw());
    push_term(&mut terms, 0, 0, 0, 1, -32 * a2p1 * b2p1 * a2ab1);
    DiffOp::from_terms(terms).expect("parametric template")
}

/// Parametric template of the order-`2k` integral `y`, for `k = 1..=4`.
pub(crate) fn y_template(k: u32) -> Result<DiffOp> {
    let template = match k {
        1 => y2_template(),
        2 => y4_template(),
        3 => y6::y6_template(),
        4 => y8::y8_template(),
        _ => {
            return Err(Error::Unsupported {
                what: format!(
                    "the order-{} integral for k = {k} is conjectured but has no closed form here",
                    2 * k
                ),
            })
        }
    };
    validate_g_homogeneous(&template, k, -(k as i64))?;
    Ok(template)
}

/// Higher integral of order `2k` in closed form (`k = 1..=4`). For `k >= 5`
/// only conjectured, and refused.
pub fn build_y(p: &ModelParams) -> Result<DiffOp> {
    p.check_k()?;
    let template = y_template(p.k)?;
    Ok(finalize(&template, &p.assign))
}

/// Factor relating the stored integral `y` to its printed normalization:
/// the stored operator equals `scale` times the printed one.
pub fn y_scale(k: u32) -> Result<Rat> {
    match k {
        1 => Ok(rat_int(4)),
        2 => Ok(rat_int(16)),
        3 | 4 => Ok(Rat::one()),
        _ => Err(Error::Unsupported {
            what: format!("no closed-form integral for k = {k}"),
        }),
    }
}

/// Shift subtracted from the higher integral before the gauge rotation: its
/// lowest eigenvalue.
pub fn y_constant(k: u32) -> Result<ParamPoly> {
    match k {
        1 => Ok(-(pw() * (2 * pa() + pc(1)))),
        2 => Ok(4 * pw().pow(2) * (2 * pa() * (pa() + pc(1)) - pb() * (pb() - pc(1)))),
        3 => Ok(4 * pw().pow(3)
            * (3 * pa() + 3 * pb() + pc(1))
            * (5 * pa().pow(2) + 36 * pa() * pb() - 27 * pb().pow(2) + pa() + 45 * pb() + pc(4))),
        4 => Ok(4 * pw().pow(4)
            * (3200 * pa().pow(4)
                + 512 * pa().pow(3) * (31 * pb() + pc(10))
                + 16 * pa().pow(2) * (206 * pb() + pc(159)) * (2 * pb() - pc(3))
                + 16 * pa() * (310 * pb().pow(3) - 187 * pb().pow(2) - 443 * pb() + pc(105))
                + 1133 * pb().pow(4) + 150 * pb().pow(3) - 176 * pb().pow(2)
                + 493 * pb()
                + pc(4))),
        _ => Err(Error::Unsupported {
            what: format!("no closed-form integral for k = {k}"),
        }),
    }
}

/// Ground energy of the original Hamiltonian: `2 w [(a + b) k + 1]`.
pub fn ground_energy(k: u32) -> ParamPoly {
    2 * pw() * ((k as i64) * (pa() + pb()) + pc(1))
}

/// Parametric template of the finite-sector Hamiltonian at sector size `n`.
pub(crate) fn hqes_template(k: u32, sector: u32) -> DiffOp {
    let kk = k as i64;
    let nn = sector as i64;
    let mut terms = Vec::new();
    push_term(&mut terms, 1, 0, 2, 0, pc(4));
    push_term(&mut terms, 0, 1, 1, 1, pc(8 * kk));
    push_term(&mut terms, k - 1, 1, 0, 2, pc(4 * kk * kk));
    push_term(&mut terms, 2, 0, 1, 0, 4 * pl());
    push_term(&mut terms, 1, 0, 1, 0, -4 * pw());
    push_term(&mut terms, 0, 0, 1, 0, 4 * kk * (pa() + pb()) + pc(4));
    push_term(&mut terms, 1, 1, 0, 1, 4 * kk * pl());
    push_term(&mut terms, 0, 1, 0, 1, -4 * kk * pw());
    push_term(&mut terms, k - 1, 0, 0, 1, 2 * kk * kk * (2 * pb() + pc(1)));
    push_term(&mut terms, 1, 0, 0, 0, -4 * nn * pl());
    DiffOp::from_terms(terms).expect("parametric template")
}

/// Finite-sector Hamiltonian: keeps one finite polynomial space invariant
/// (the flag level matching its sector size) rather than a whole flag. At
/// `l = 0` it equals `-h`.
pub fn build_hqes(p: &ModelParams) -> Result<DiffOp> {
    p.check_k()?;
    let sector = p
        .sector
        .ok_or_else(|| Error::Invalid("finite-sector Hamiltonian needs a sector size".into()))?;
    let template = hqes_template(p.k, sector);
    validate_g_homogeneous(&template, p.k, -1)?;
    Ok(finalize(&template, &p.assign))
}

/// Rational `a` with `a (a - 1)` equal to the given strength, if one exists.
/// Picks the branch `a >= 1/2`.
pub fn a_from_alpha(alpha: &Rat) -> Result<Rat> {
    use num_bigint::BigInt;
    use num_traits::Signed;
    // a = (1 + sqrt(1 + 4 alpha)) / 2; rational iff 1 + 4 alpha is a square.
    let disc = Rat::one() + alpha * rat_int(4);
    if disc.is_negative() {
        return Err(Error::Invalid(format!(
            "strength {alpha} admits no real parameter"
        )));
    }
    let num = disc.numer().clone();
    let den = disc.denom().clone();
    let sq = |v: &BigInt| {
        let root = v.sqrt();
        (&root * &root == *v).then_some(root)
    };
    match (sq(&num), sq(&den)) {
        (Some(ns), Some(ds)) => Ok((Rat::one() + Rat::new(ns, ds)) / rat_int(2)),
        _ => Err(Error::Invalid(format!(
            "strength {alpha} needs an irrational parameter; 1 + 4 alpha is not a rational square"
        ))),
    }
}

/// One catalog row as listed by the operator manifest.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    /// Operator name accepted by the emitters: `h`, `x`, `y`, `hqes`.
    pub name: &'static str,
    pub k: u32,
    /// Stored-to-printed normalization factor, for operators that have one.
    pub scale: Option<Rat>,
    /// Lowest eigenvalue subtracted in the gauge rotation, if any.
    pub constant: Option<ParamPoly>,
    /// Total differential order of the operator.
    pub order: u32,
}

/// Manifest of the catalog operators available at family index `k`.
pub fn catalog_manifest(k: u32) -> Vec<CatalogEntry> {
    let mut rows = vec![
        CatalogEntry {
            name: "h",
            k,
            scale: None,
            constant: None,
            order: 2,
        },
        CatalogEntry {
            name: "x",
            k,
            scale: None,
            constant: Some(x_constant(k)),
            order: 2,
        },
    ];
    if (1..=4).contains(&k) {
        rows.push(CatalogEntry {
            name: "y",
            k,
            scale: Some(y_scale(k).expect("k in closed-form range")),
            constant: Some(y_constant(k).expect("k in closed-form range")),
            order: 2 * k,
        });
    }
    rows.push(CatalogEntry {
        name: "hqes",
        k,
        scale: None,
        constant: None,
        order: 2,
    });
    rows
}

/// Monomials of the order-8 integral whose coefficients are corrupt in the
/// transcription source and were re-derived from exact commutation with its
/// Hamiltonian. Reports cite this list when the operator is emitted.
pub fn order8_repaired_monomials() -> Vec<DiffMono> {
    y8::y8_repair_slots()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::textfmt::{emit_diffop, parse_assign};
    use crate::weyl::{op_commutator, DiffMono};

    fn sym(k: u32) -> ModelParams {
        ModelParams::symbolic(k)
    }

    #[test]
    fn h1_matches_known_instantiations() {
        // At a = b = 1/2 with w symbolic, the first-order u-part reads 4w u - 4.
        let p = ModelParams::with_assign(
            1,
            ParamAssign::new()
                .with(Param::A, rat(1, 2))
                .with(Param::B, rat(1, 2)),
        );
        let h = build_h(&p).unwrap();
        let du_u = h.coeff(&DiffMono::new(0, 1, 0, 1)).unwrap();
        let du_1 = h.coeff(&DiffMono::new(0, 0, 0, 1)).unwrap();
        assert_eq!(du_u, &Scalar::Poly(4 * pw()));
        assert_eq!(du_1, &Scalar::Poly(pc(-4)));
        // Fully rational point with the frequency off.
        let p = ModelParams::rational(1, rat_int(0), rat_int(0), rat_int(0), rat_int(0));
        let h = build_h(&p).unwrap();
        let expected = crate::textfmt::parse_diffop(
            "-4 t dt^2\n-8 u dt du\n-4 u du^2\n-4 dt\n-2 du\n",
        )
        .unwrap();
        assert_eq!(h, expected);
    }

    #[test]
    fn templates_are_grading_homogeneous() {
        for k in 1..=6 {
            validate_g_homogeneous(&h_template(k), k, -1).unwrap();
            validate_g_homogeneous(&x_template(k), k, 0).unwrap();
            validate_g_homogeneous(&hqes_template(k, 3), k, -1).unwrap();
        }
        for k in 1..=2 {
            validate_g_homogeneous(&y_template(k).unwrap(), k, -(k as i64)).unwrap();
        }
    }

    #[test]
    fn h_commutes_with_x_symbolically() {
        for k in 1..=6 {
            let h = build_h(&sym(k)).unwrap();
            let x = build_x(&sym(k)).unwrap();
            let c = op_commutator(&h, &x).unwrap();
            assert!(c.is_zero(), "k = {k}: residual {}", emit_diffop(&c));
        }
    }

    #[test]
    fn h_commutes_with_y2_symbolically() {
        let h = build_h(&sym(1)).unwrap();
        let y = build_y(&sym(1)).unwrap();
        let c = op_commutator(&h, &y).unwrap();
        assert!(c.is_zero(), "residual {}", emit_diffop(&c));
    }

    #[test]
    fn h_commutes_with_y4_symbolically() {
        let h = build_h(&sym(2)).unwrap();
        let y = build_y(&sym(2)).unwrap();
        let c = op_commutator(&h, &y).unwrap();
        assert!(c.is_zero(), "residual {}", emit_diffop(&c));
    }

    #[test]
    fn emission_line_counts() {
        let h1 = build_h(&sym(1)).unwrap();
        let h2 = build_h(&sym(2)).unwrap();
        assert_eq!(emit_diffop(&h1).lines().count(), 7);
        assert_eq!(emit_diffop(&h2).lines().count(), 7);
    }

    #[test]
    fn hqes_degenerates_to_minus_h_without_deformation() {
        for k in 1..=4 {
            let assign = parse_assign("l=0").unwrap();
            let hqes = finalize(&hqes_template(k, 5), &assign);
            let h = h_template(k);
            let sum = crate::weyl::op_add(&hqes, &h).unwrap();
            assert!(sum.is_zero(), "k = {k}: {}", emit_diffop(&sum));
        }
    }

    #[test]
    fn strength_conversion() {
        // a = 3/2 gives strength 3/4.
        assert_eq!(a_from_alpha(&rat(3, 4)).unwrap(), rat(3, 2));
        assert_eq!(a_from_alpha(&rat_int(0)).unwrap(), rat_int(1));
        assert!(a_from_alpha(&rat_int(1)).is_err());
        assert!(a_from_alpha(&rat_int(-1)).is_err());
    }

    #[test]
    fn x_constant_and_ground_energy_shapes() {
        let c = x_constant(3);
        assert_eq!(c.degree_in(Param::A), 2);
        let e = ground_energy(2);
        let v = e
            .eval(&ParamAssign::full(rat_int(1), rat_int(1), rat_int(1), rat_int(0)))
            .unwrap();
        assert_eq!(v, rat_int(10));
    }

    #[test]
    fn instantiated_h_spot_value() {
        // h_1 coefficient of du at a = b = 0, w = 0 is -2.
        let p = ModelParams::rational(1, rat_int(0), rat_int(0), rat_int(0), rat_int(0));
        let h = build_h(&p).unwrap();
        let c = h.coeff(&DiffMono::new(0, 0, 0, 1)).unwrap();
        assert_eq!(c.as_rational().unwrap(), &rat_int(-2));
    }
}
