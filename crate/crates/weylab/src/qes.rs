//! Finite-sector diagonalization: the deformed Hamiltonian restricted to its
//! invariant polynomial space, the exact characteristic polynomial of that
//! restriction, and isolated real-root intervals.
//!
//! Everything up to the final root brackets is exact rational arithmetic.
//! Roots are reported as isolating intervals with rational endpoints
//! (Descartes counting with bisection), collapsed to a point when a root is
//! recognized as an exact rational, with multiplicities from a squarefree
//! decomposition of the characteristic polynomial.

use num_traits::{One, Signed, Zero};

use crate::catalog::{build_hqes, ModelParams};
use crate::flag::{represent, FlagSpec};
use crate::linalg::{charpoly, RatMat};
use crate::scalar::{rat, rat_int, Param, Rat};
use crate::unipoly::UniPoly;
use crate::{Error, Result};

/// Default isolation width, `10^-12`.
pub fn default_root_width() -> Rat {
    rat(1, 1_000_000_000_000)
}

/// An isolating bracket for one real root: the root lies in `[lo, hi]`,
/// no other root does, and `lo == hi` means the root is that exact rational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub multiplicity: u32,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// The deformed Hamiltonian restricted to the finite space it preserves.
#[derive(Clone, Debug)]
pub struct QesSector {
    params: ModelParams,
    space: FlagSpec,
    matrix: RatMat,
    charpoly: UniPoly,
    roots: Vec<RootInterval>,
}

impl QesSector {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn space(&self) -> &FlagSpec {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RatMat {
        &self.matrix
    }

    pub fn charpoly(&self) -> &UniPoly {
        &self.charpoly
    }

    pub fn roots(&self) -> &[RootInterval] {
        &self.roots
    }
}

/// Build the sector at the default root-isolation width.
pub fn qes_sector(params: &ModelParams) -> Result<QesSector> {
    qes_sector_with_width(params, &default_root_width())
}

/// Build the sector, isolating real eigenvalue brackets to the given width.
pub fn qes_sector_with_width(params: &ModelParams, width: &Rat) -> Result<QesSector> {
    if width <= &Rat::zero() {
        return Err(Error::Invalid("root isolation width must be positive".into()));
    }
    let sector = params
        .sector
        .ok_or_else(|| Error::Invalid("sector diagonalization needs a sector size".into()))?;
    for p in [Param::A, Param::B, Param::W, Param::L] {
        if params.assign.get(p).is_none() {
            return Err(Error::MissingAssignment { param: p.symbol() });
        }
    }
    let op = build_hqes(params)?;
    let space = FlagSpec::new(sector, params.k)?;
    let rep = represent(&op, &space)?;
    if let Some((source, image, _)) = rep.escapes().first() {
        return Err(Error::Invalid(format!(
            "sector Hamiltonian escapes its space: image of t^{} u^{} reaches t^{} u^{}",
            source.0, source.1, image.0, image.1
        )));
    }
    let n = rep.dim();
    let mut matrix = RatMat::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let entry = rep.entry(r, c).as_rational().ok_or_else(|| {
                Error::Invalid("sector matrix entry failed to instantiate".into())
            })?;
            matrix.set(r, c, entry.clone());
        }
    }
    let cp = charpoly(&matrix)?;
    let roots = isolate_roots(&cp, width)?;
    Ok(QesSector {
        params: params.clone(),
        space,
        matrix,
        charpoly: cp,
        roots,
    })
}

/// Isolate all real roots of a nonzero polynomial into disjoint brackets of
/// at most the given width, with multiplicities.
pub fn isolate_roots(p: &UniPoly, width: &Rat) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::Invalid("cannot isolate roots of the zero polynomial".into()));
    }
    let factors = squarefree_decomposition(p)?;
    let mut items: Vec<(RootInterval, usize)> = Vec::new();
    for (idx, (factor, multiplicity)) in factors.iter().enumerate() {
        for mut interval in isolate_squarefree(factor)? {
            refine(factor, &mut interval, width);
            interval.multiplicity = *multiplicity;
            items.push((interval, idx));
        }
    }
    items.sort_by(|a, b| (&a.0.lo, &a.0.hi).cmp(&(&b.0.lo, &b.0.hi)));
    let mut guard = 0u32;
    loop {
        let mut overlapped = false;
        for i in 1..items.len() {
            if items[i - 1].0.hi > items[i].0.lo {
                overlapped = true;
                let (left, right) = items.split_at_mut(i);
                let (a, ai) = &mut left[i - 1];
                let (b, bi) = &mut right[0];
                bisect_step(&factors[*ai].0, a);
                bisect_step(&factors[*bi].0, b);
            }
        }
        if !overlapped {
            break;
        }
        items.sort_by(|a, b| (&a.0.lo, &a.0.hi).cmp(&(&b.0.lo, &b.0.hi)));
        guard += 1;
        if guard > 4096 {
            return Err(Error::Invalid(
                "root brackets from different squarefree factors did not separate".into(),
            ));
        }
    }
    Ok(items.into_iter().map(|(interval, _)| interval).collect())
}

/// Yun decomposition: returns pairwise-coprime monic squarefree factors with
/// their multiplicities, so the input is the product of `factor^multiplicity`
/// up to a constant.
pub fn squarefree_decomposition(p: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::Invalid("squarefree decomposition of zero".into()));
    }
    let f = p.monic();
    if f.degree() == 0 {
        return Ok(Vec::new());
    }
    let deriv = f.derivative();
    let g = f.gcd(&deriv);
    if g.degree() == 0 {
        return Ok(vec![(f, 1)]);
    }
    let mut out = Vec::new();
    let mut b = exact_quot(&f, &g)?;
    let mut d = exact_quot(&deriv, &g)?.sub(&b.derivative());
    let mut i = 1u32;
    while b.degree() >= 1 {
        let a = b.gcd(&d);
        if a.degree() >= 1 {
            out.push((a.clone(), i));
        }
        b = exact_quot(&b, &a)?;
        d = exact_quot(&d, &a)?.sub(&b.derivative());
        i += 1;
    }
    Ok(out)
}

fn exact_quot(num: &UniPoly, den: &UniPoly) -> Result<UniPoly> {
    let (q, r) = num.div_rem(den)?;
    if !r.is_zero() {
        return Err(Error::Invalid("inexact division in squarefree decomposition".into()));
    }
    Ok(q)
}

/// Upper bound strictly above the magnitude of every root of a monic
/// polynomial.
fn root_bound(q: &UniPoly) -> Rat {
    let lead = q.leading().expect("nonzero polynomial").clone();
    let mut max = Rat::zero();
    for (i, c) in q.iter() {
        if i == q.degree() {
            continue;
        }
        let ratio = (c / &lead).abs();
        if ratio > max {
            max = ratio;
        }
    }
    Rat::one() + max
}

fn sign_variations(q: &UniPoly) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for (_, c) in q.iter() {
        if c.is_zero() {
            continue;
        }
        let sgn: i8 = if c.is_positive() { 1 } else { -1 };
        if last != 0 && sgn != last {
            count += 1;
        }
        last = sgn;
    }
    count
}

/// Descartes bound on the number of roots of `q` strictly between `lo` and
/// `hi`: zero means none, one means exactly one.
fn descartes_count(q: &UniPoly, lo: &Rat, hi: &Rat) -> usize {
    let mapped = q.compose_affine(&(hi - lo), lo);
    let tested = mapped.reversed().compose_affine(&Rat::one(), &Rat::one());
    sign_variations(&tested)
}

enum Pass {
    Done(Vec<(Rat, Rat)>),
    ExactHit(Rat),
}

/// One attempt to isolate all roots of a squarefree `q` in `(0, bound)`.
/// Stops early when a subdivision point happens to be a root, so the caller
/// can deflate it out and retry.
fn positive_root_pass(q: &UniPoly, bound: &Rat) -> Pass {
    let mut out = Vec::new();
    let mut stack = vec![(Rat::zero(), bound.clone())];
    while let Some((lo, hi)) = stack.pop() {
        match descartes_count(q, &lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / rat_int(2);
                if q.eval(&mid).is_zero() {
                    return Pass::ExactHit(mid);
                }
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    Pass::Done(out)
}

/// Isolate all real roots of a squarefree polynomial; multiplicities are
/// filled in by the caller.
fn isolate_squarefree(q: &UniPoly) -> Result<Vec<RootInterval>> {
    let mut q = q.monic();
    let mut out = Vec::new();
    if q.coeff(0).is_zero() {
        out.push(exact_interval(Rat::zero()));
        q = exact_quot(&q, &UniPoly::x())?;
    }
    while q.degree() >= 1 {
        if q.degree() == 1 {
            let root = -(q.coeff(0) / q.coeff(1));
            out.push(exact_interval(root));
            break;
        }
        let bound = root_bound(&q);
        let negated = q.compose_affine(&rat_int(-1), &Rat::zero());
        match positive_root_pass(&q, &bound) {
            Pass::ExactHit(r) => {
                out.push(exact_interval(r.clone()));
                q = deflate(&q, &r)?;
                continue;
            }
            Pass::Done(pos) => match positive_root_pass(&negated, &bound) {
                Pass::ExactHit(r) => {
                    out.push(exact_interval(-r.clone()));
                    q = deflate(&q, &-r)?;
                    continue;
                }
                Pass::Done(neg) => {
                    out.extend(pos.into_iter().map(|(lo, hi)| RootInterval {
                        lo,
                        hi,
                        multiplicity: 1,
                    }));
                    out.extend(neg.into_iter().map(|(lo, hi)| RootInterval {
                        lo: -hi,
                        hi: -lo,
                        multiplicity: 1,
                    }));
                    break;
                }
            },
        }
    }
    Ok(out)
}

fn exact_interval(r: Rat) -> RootInterval {
    RootInterval {
        lo: r.clone(),
        hi: r,
        multiplicity: 1,
    }
}

fn deflate(q: &UniPoly, root: &Rat) -> Result<UniPoly> {
    let linear = UniPoly::from_coeffs(vec![-root.clone(), Rat::one()]);
    exact_quot(q, &linear)
}

/// One bisection step on a bracket known to contain exactly one simple root
/// of `q` strictly inside, with `q` nonzero at both endpoints.
fn bisect_step(q: &UniPoly, interval: &mut RootInterval) {
    if interval.is_exact() {
        return;
    }
    let mid = (&interval.lo + &interval.hi) / rat_int(2);
    let value = q.eval(&mid);
    if value.is_zero() {
        interval.lo = mid.clone();
        interval.hi = mid;
        return;
    }
    if value.is_positive() == q.eval(&interval.lo).is_positive() {
        interval.lo = mid;
    } else {
        interval.hi = mid;
    }
}

fn refine(q: &UniPoly, interval: &mut RootInterval, width: &Rat) {
    while !interval.is_exact() && &interval.width() > width {
        bisect_step(q, interval);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::orthopoly::grade_degeneracy;
    use crate::catalog::{build_x, ModelParams};
    use crate::linalg::charpoly_cofactor;
    use crate::textfmt::emit_diffop;
    use crate::weyl::op_commutator;

    fn rational_params(k: u32, sector: u32, a: i64, b: i64, w: i64, l: i64) -> ModelParams {
        ModelParams::rational(k, rat_int(a), rat_int(b), rat_int(w), rat_int(l))
            .with_sector(sector)
    }

    #[test]
    fn trivial_sector_is_one_by_one_with_eigenvalue_zero() {
        let sector = qes_sector(&rational_params(1, 0, 1, 1, 1, 1)).unwrap();
        assert_eq!(sector.dim(), 1);
        assert_eq!(sector.charpoly(), &UniPoly::x());
        assert_eq!(sector.roots(), &[exact_interval(rat_int(0))]);
    }

    #[test]
    fn sector_dimension_counts_the_lattice_points() {
        let sector = qes_sector(&rational_params(2, 6, 1, 1, 1, 1)).unwrap();
        assert_eq!(sector.dim(), 16);
        assert_eq!(sector.charpoly().degree(), 16);
    }

    #[test]
    fn smallest_nontrivial_sector_matches_the_hand_matrix() {
        // On the basis {1, t, u} the deformed Hamiltonian acts by the 3x3
        // matrix worked out by hand from its ten terms; its characteristic
        // polynomial factors as (x + 4w)(x^2 + 4w x + 16 l (a+b+1)).
        for (a, b, w, l) in [(1, 1, 1, 1), (2, 3, 1, -1), (0, 1, 2, 5)] {
            let sector = qes_sector(&rational_params(1, 1, a, b, w, l)).unwrap();
            assert_eq!(sector.dim(), 3);
            let linear = UniPoly::from_coeffs(vec![rat_int(4 * w), rat_int(1)]);
            let quadratic = UniPoly::from_coeffs(vec![
                rat_int(16 * l * (a + b + 1)),
                rat_int(4 * w),
                rat_int(1),
            ]);
            assert_eq!(sector.charpoly(), &linear.mul(&quadratic), "a={a} b={b} w={w} l={l}");
        }
    }

    #[test]
    fn charpoly_agrees_with_the_cofactor_oracle() {
        let sector = qes_sector(&rational_params(1, 2, 1, 2, 1, 1)).unwrap();
        assert_eq!(sector.dim(), 6);
        assert_eq!(
            sector.charpoly(),
            &charpoly_cofactor(sector.matrix()).unwrap()
        );
    }

    #[test]
    fn zero_deformation_reproduces_the_triangular_spectrum() {
        for k in [1u32, 2] {
            let level = 4;
            let sector = qes_sector(&rational_params(k, level, 1, 1, 1, 0)).unwrap();
            let mut expected = UniPoly::one();
            for d in 0..=level {
                let linear =
                    UniPoly::from_coeffs(vec![rat_int(4 * i64::from(d)), rat_int(1)]);
                for _ in 0..grade_degeneracy(k, d) {
                    expected = expected.mul(&linear);
                }
            }
            assert_eq!(sector.charpoly(), &expected, "k = {k}");
            let roots = sector.roots();
            assert_eq!(roots.len(), usize::try_from(level).unwrap() + 1, "k = {k}");
            for (slot, d) in roots.iter().zip((0..=level).rev()) {
                assert!(
                    slot.contains(&rat_int(-4 * i64::from(d))),
                    "k = {k}: bracket {:?} misses {}",
                    slot,
                    -4 * i64::from(d)
                );
                assert_eq!(slot.multiplicity, grade_degeneracy(k, d), "k = {k}, d = {d}");
                assert!(slot.width() <= default_root_width());
            }
        }
    }

    #[test]
    fn root_isolation_brackets_irrational_roots_exactly() {
        // (x - 1/3)^2 (x^2 - 2): a double rational root and a simple pair at
        // +-sqrt(2), certified by squaring the bracket endpoints.
        let third = UniPoly::from_coeffs(vec![rat(-1, 3), rat_int(1)]);
        let quad = UniPoly::from_coeffs(vec![rat_int(-2), rat_int(0), rat_int(1)]);
        let p = third.mul(&third).mul(&quad);
        let roots = isolate_roots(&p, &default_root_width()).unwrap();
        assert_eq!(roots.len(), 3);
        let neg = &roots[0];
        assert_eq!(neg.multiplicity, 1);
        assert!(neg.hi < Rat::zero());
        assert!(&neg.hi * &neg.hi < rat_int(2) && rat_int(2) < &neg.lo * &neg.lo);
        assert_eq!(roots[1], RootInterval { lo: rat(1, 3), hi: rat(1, 3), multiplicity: 2 });
        let pos = &roots[2];
        assert_eq!(pos.multiplicity, 1);
        assert!(&pos.lo * &pos.lo < rat_int(2) && rat_int(2) < &pos.hi * &pos.hi);
        assert!(pos.width() <= default_root_width());
        assert!(neg.width() <= default_root_width());
    }

    #[test]
    fn sector_spectrum_can_be_partly_complex() {
        // At a = b = w = l = 1 the cubic charpoly has one real eigenvalue -4
        // and a complex pair; flipping the deformation sign makes all three
        // real, with the outer pair at -2 +- sqrt(52).
        let sector = qes_sector(&rational_params(1, 1, 1, 1, 1, 1)).unwrap();
        assert_eq!(sector.roots().len(), 1);
        assert!(sector.roots()[0].contains(&rat_int(-4)));

        let sector = qes_sector(&rational_params(1, 1, 1, 1, 1, -1)).unwrap();
        let roots = sector.roots();
        assert_eq!(roots.len(), 3);
        assert!(roots[1].contains(&rat_int(-4)));
        let shift = |x: &Rat| x + rat_int(2);
        assert!(shift(&roots[0].lo) * shift(&roots[0].lo) > rat_int(52));
        assert!(shift(&roots[0].hi) * shift(&roots[0].hi) < rat_int(52));
        assert!(shift(&roots[2].lo) * shift(&roots[2].lo) < rat_int(52));
        assert!(shift(&roots[2].hi) * shift(&roots[2].hi) > rat_int(52));
    }

    #[test]
    fn sector_hamiltonian_commutes_with_the_first_integral() {
        for k in 1..=4u32 {
            let params = ModelParams::symbolic(k).with_sector(2);
            let hqes = build_hqes(&params).unwrap();
            let x = build_x(&params).unwrap();
            let c = op_commutator(&hqes, &x).unwrap();
            assert!(c.is_zero(), "k = {k}: residual {}", emit_diffop(&c));
        }
    }

    #[test]
    fn missing_inputs_are_rejected() {
        let no_sector = ModelParams::rational(1, rat_int(1), rat_int(1), rat_int(1), rat_int(1));
        assert!(qes_sector(&no_sector).is_err());
        let symbolic = ModelParams::symbolic(1).with_sector(2);
        assert!(matches!(
            qes_sector(&symbolic),
            Err(Error::MissingAssignment { .. })
        ));
        let params = rational_params(1, 1, 1, 1, 1, 1);
        assert!(qes_sector_with_width(&params, &Rat::zero()).is_err());
    }
}
