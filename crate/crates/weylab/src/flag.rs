//! Finite-dimensional polynomial spaces preserved by the operator family,
//! their exact matrix representations, and graded spectral extraction.
//!
//! The space of weight `s` and level `N` is spanned by the monomials
//! `t^p u^q` with `p + s q <= N`, optionally capped in the `u`-degree. The
//! basis is ordered by the grade `p + s q` first and by `q` second, which
//! makes grade-triangularity of an operator visible as lower-triangularity
//! of its matrix, with no hidden permutation.

use std::fmt::Write as _;

use crate::catalog::lie::{build_generator, GeneratorKind, GeneratorSpec};
use crate::scalar::{RingTag, Scalar};
use crate::textfmt::emit_scalar;
use crate::weyl::{op_apply, Mono2, Poly2};
use crate::weyl::DiffOp;
use crate::{Error, Result};

/// A finite polynomial space `span{t^p u^q : p + s q <= N}`, optionally
/// restricted to `q <= u_cap`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlagSpec {
    level: u32,
    weight: u32,
    u_cap: Option<u32>,
}

impl FlagSpec {
    pub fn new(level: u32, weight: u32) -> Result<Self> {
        if weight == 0 {
            return Err(Error::Invalid("flag weight must be at least 1".into()));
        }
        Ok(FlagSpec {
            level,
            weight,
            u_cap: None,
        })
    }

    /// Same space with the `u`-degree additionally capped.
    pub fn with_u_cap(mut self, cap: u32) -> Self {
        self.u_cap = Some(cap);
        self
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Grade of a monomial in this space's grading.
    pub fn grade(&self, mono: Mono2) -> u32 {
        mono.0 + self.weight * mono.1
    }

    pub fn contains(&self, mono: Mono2) -> bool {
        self.grade(mono) <= self.level && self.u_cap.is_none_or(|cap| mono.1 <= cap)
    }

    /// The ordered basis: ascending by (grade, u-degree).
    pub fn basis(&self) -> Vec<Mono2> {
        let mut out = Vec::new();
        for grade in 0..=self.level {
            let q_max = (grade / self.weight).min(self.u_cap.unwrap_or(u32::MAX));
            for q in 0..=q_max {
                out.push((grade - self.weight * q, q));
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.basis().len()
    }
}

fn mono_name(mono: Mono2) -> String {
    let (p, q) = mono;
    let mut s = String::new();
    if p == 1 {
        s.push('t');
    } else if p > 1 {
        let _ = write!(s, "t^{p}");
    }
    if q >= 1 {
        if !s.is_empty() {
            s.push(' ');
        }
        if q == 1 {
            s.push('u');
        } else {
            let _ = write!(s, "u^{q}");
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// An image monomial that left the space: `(source basis monomial, escaped
/// monomial, its coefficient)`.
pub type Escape = (Mono2, Mono2, Scalar);

/// Exact matrix of an operator on a [`FlagSpec`] basis; column `j` holds the
/// coordinates of the image of basis monomial `j`. Image terms outside the
/// space do not fit a matrix; they are recorded as escapes and flag the
/// matrix as not closed.
#[derive(Clone, PartialEq, Debug)]
pub struct OpMatrix {
    space: FlagSpec,
    basis: Vec<Mono2>,
    ring: RingTag,
    entries: Vec<Scalar>,
    escapes: Vec<Escape>,
}

impl OpMatrix {
    pub fn space(&self) -> &FlagSpec {
        &self.space
    }

    pub fn basis(&self) -> &[Mono2] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn is_closed(&self) -> bool {
        self.escapes.is_empty()
    }

    pub fn escapes(&self) -> &[Escape] {
        &self.escapes
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.basis.len() + col]
    }

    /// Matrix product over the common scalar ring.
    pub fn mul(&self, other: &OpMatrix) -> Result<OpMatrix> {
        if self.space != other.space {
            return Err(Error::Invalid(
                "matrix product across different flag spaces".into(),
            ));
        }
        let n = self.dim();
        let mut entries = vec![Scalar::zero(self.ring); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.entry(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.entry(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.checked_mul(b, "flag matrix product")?;
                    entries[r * n + c] =
                        entries[r * n + c].checked_add(&prod, "flag matrix product")?;
                }
            }
        }
        Ok(OpMatrix {
            space: self.space.clone(),
            basis: self.basis.clone(),
            ring: self.ring,
            entries,
            escapes: Vec::new(),
        })
    }

    pub fn sub(&self, other: &OpMatrix) -> Result<OpMatrix> {
        if self.space != other.space {
            return Err(Error::Invalid(
                "matrix difference across different flag spaces".into(),
            ));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(&b.neg(), "flag matrix difference"))
            .collect::<Result<Vec<_>>>()?;
        Ok(OpMatrix {
            space: self.space.clone(),
            basis: self.basis.clone(),
            ring: self.ring,
            entries,
            escapes: Vec::new(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// CSV rendering: header row of basis monomials, then one row per basis
    /// monomial with exact entries.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.basis.iter().map(|&m| mono_name(m)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        let n = self.dim();
        for r in 0..n {
            let row: Vec<String> = (0..n).map(|c| emit_scalar(self.entry(r, c))).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Represent an operator on the given space. Escaping image terms are data,
/// not errors; the matrix simply reports itself as not closed.
pub fn represent(op: &DiffOp, spec: &FlagSpec) -> Result<OpMatrix> {
    let ring = op.ring().unwrap_or(RingTag::Rational);
    let basis = spec.basis();
    let n = basis.len();
    let index_of = |mono: Mono2| basis.iter().position(|&b| b == mono);
    let mut entries = vec![Scalar::zero(ring); n * n];
    let mut escapes = Vec::new();
    for (col, &mono) in basis.iter().enumerate() {
        let image = op_apply(op, &Poly2::mono(mono.0, mono.1, Scalar::one(ring)))?;
        for (&out_mono, coeff) in image.iter() {
            match index_of(out_mono) {
                Some(row) => entries[row * n + col] = coeff.clone(),
                None => escapes.push((mono, out_mono, coeff.clone())),
            }
        }
    }
    Ok(OpMatrix {
        space: spec.clone(),
        basis,
        ring,
        entries,
        escapes,
    })
}

/// Whether the operator maps the space into itself.
pub fn preserves(op: &DiffOp, spec: &FlagSpec) -> Result<bool> {
    Ok(represent(op, spec)?.is_closed())
}

/// One diagonal entry of a grade-triangular operator matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct GradedEigenvalue {
    pub grade: u32,
    pub mono: Mono2,
    pub value: Scalar,
}

/// Read the spectrum of a grade-triangular operator off its diagonal.
///
/// The operator must be closed on the space and must not move any monomial
/// up in grade, nor sideways within a grade: the only grade-preserving action
/// allowed is the diagonal itself. Either failure is reported with the
/// offending matrix entry.
pub fn graded_spectrum(op: &DiffOp, spec: &FlagSpec) -> Result<Vec<GradedEigenvalue>> {
    let matrix = represent(op, spec)?;
    if let Some((source, image, coeff)) = matrix.escapes().first() {
        return Err(Error::Invalid(format!(
            "operator does not close on the space: image of {} reaches {} with coefficient {}",
            mono_name(*source),
            mono_name(*image),
            emit_scalar(coeff)
        )));
    }
    let n = matrix.dim();
    for col in 0..n {
        let col_mono = matrix.basis()[col];
        for row in 0..n {
            if row == col {
                continue;
            }
            let entry = matrix.entry(row, col);
            if entry.is_zero() {
                continue;
            }
            let row_mono = matrix.basis()[row];
            if spec.grade(row_mono) >= spec.grade(col_mono) {
                return Err(Error::TriangularityViolation {
                    col_mono: mono_name(col_mono),
                    row_mono: mono_name(row_mono),
                    coeff: emit_scalar(entry),
                });
            }
        }
    }
    Ok(matrix
        .basis()
        .iter()
        .enumerate()
        .map(|(i, &mono)| GradedEigenvalue {
            grade: spec.grade(mono),
            mono,
            value: matrix.entry(i, i).clone(),
        })
        .collect())
}

/// Closure verdict for one hidden-algebra generator on a space.
#[derive(Clone, PartialEq, Debug)]
pub struct GeneratorClosure {
    pub name: String,
    pub closed: bool,
    pub escape: Option<Escape>,
}

/// Check that every generator of the weight-`s` algebra at level `N` maps
/// the level-`N` space of the same weight into itself.
pub fn generator_closure_check(weight: u32, level: u32) -> Result<Vec<GeneratorClosure>> {
    let spec = FlagSpec::new(level, weight)?;
    let mut kinds = vec![
        ("lower".to_string(), GeneratorKind::Lower),
        ("grade-t".to_string(), GeneratorKind::GradeT),
        ("grade-u".to_string(), GeneratorKind::GradeU),
        ("raise".to_string(), GeneratorKind::Raise),
    ];
    for i in 0..=weight {
        kinds.push((format!("shift-{i}"), GeneratorKind::Shift(i)));
    }
    kinds.push(("shift-inv".to_string(), GeneratorKind::ShiftInv));
    let mut out = Vec::with_capacity(kinds.len());
    for (name, kind) in kinds {
        let op = build_generator(&GeneratorSpec {
            kind,
            s: weight,
            n: level,
        })?;
        let matrix = represent(&op, &spec)?;
        out.push(GeneratorClosure {
            name,
            closed: matrix.is_closed(),
            escape: matrix.escapes().first().cloned(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::orthopoly::grade_degeneracy;
    use crate::catalog::{build_h, build_x, ModelParams};
    use crate::scalar::{rat_int, Param, ParamPoly};
    use crate::weyl::{op_mul, DiffMono};

    fn sym(k: u32) -> ModelParams {
        ModelParams::symbolic(k)
    }

    #[test]
    fn basis_enumeration_and_order() {
        let spec = FlagSpec::new(2, 1).unwrap();
        assert_eq!(
            spec.basis(),
            vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
        );
        assert_eq!(spec.dim(), 6);

        let spec = FlagSpec::new(4, 2).unwrap();
        assert_eq!(spec.dim(), 9);
        for pair in spec.basis().windows(2) {
            let key = |m: Mono2| (spec.grade(m), m.1);
            assert!(key(pair[0]) < key(pair[1]));
        }

        assert_eq!(FlagSpec::new(0, 3).unwrap().basis(), vec![(0, 0)]);
        assert!(FlagSpec::new(2, 0).is_err());

        let capped = FlagSpec::new(4, 2).unwrap().with_u_cap(0);
        assert!(capped.basis().iter().all(|&(_, q)| q == 0));
        assert_eq!(capped.dim(), 5);
    }

    #[test]
    fn identity_representation_is_the_identity_matrix() {
        let spec = FlagSpec::new(3, 2).unwrap();
        let id = DiffOp::from_mono(DiffMono::IDENTITY, Scalar::Rat(rat_int(1)));
        let m = represent(&id, &spec).unwrap();
        assert!(m.is_closed());
        for r in 0..m.dim() {
            for c in 0..m.dim() {
                assert_eq!(m.entry(r, c).is_zero(), r != c);
            }
        }
    }

    #[test]
    fn closure_depends_on_the_weight_exactly_as_stated() {
        let h2 = build_h(&sym(2)).unwrap();
        assert!(preserves(&h2, &FlagSpec::new(4, 1).unwrap()).unwrap());
        assert!(preserves(&h2, &FlagSpec::new(4, 2).unwrap()).unwrap());
        let x2 = build_x(&sym(2)).unwrap();
        assert!(!preserves(&x2, &FlagSpec::new(4, 1).unwrap()).unwrap());
        assert!(preserves(&x2, &FlagSpec::new(4, 2).unwrap()).unwrap());

        let h3 = build_h(&sym(3)).unwrap();
        assert!(preserves(&h3, &FlagSpec::new(6, 2).unwrap()).unwrap());
        let x3 = build_x(&sym(3)).unwrap();
        assert!(!preserves(&x3, &FlagSpec::new(6, 2).unwrap()).unwrap());

        let capped = FlagSpec::new(6, 2).unwrap().with_u_cap(0);
        assert!(preserves(&h2, &capped).unwrap());
    }

    #[test]
    fn graded_spectrum_reads_the_harmonic_diagonal() {
        for k in 1..=4u32 {
            let h = build_h(&sym(k)).unwrap();
            let spec = FlagSpec::new(6, k).unwrap();
            let eigen = graded_spectrum(&h, &spec).unwrap();
            assert_eq!(eigen.len(), spec.dim());
            for e in &eigen {
                let expected = ParamPoly::var(Param::W).scale(&rat_int(4 * i64::from(e.grade)));
                assert_eq!(e.value, Scalar::Poly(expected), "k = {k}, mono {:?}", e.mono);
            }
            for d in 0..=6u32 {
                let count = eigen.iter().filter(|e| e.grade == d).count();
                assert_eq!(count as u32, grade_degeneracy(k, d), "k = {k}, grade {d}");
            }
        }
    }

    #[test]
    fn grade_raising_operator_is_rejected_with_the_offending_entry() {
        let spec = FlagSpec::new(3, 1).unwrap();
        let raise = build_generator(&GeneratorSpec {
            kind: GeneratorKind::Raise,
            s: 1,
            n: 3,
        })
        .unwrap();
        let err = graded_spectrum(&raise, &spec).unwrap_err();
        assert!(matches!(err, Error::TriangularityViolation { .. }));
    }

    #[test]
    fn representation_is_a_functor_on_closed_operators() {
        for k in 1..=2u32 {
            let spec = FlagSpec::new(5, k).unwrap();
            let h = build_h(&sym(k)).unwrap();
            let x = build_x(&sym(k)).unwrap();
            let product = represent(&op_mul(&h, &x).unwrap(), &spec).unwrap();
            let factored = represent(&h, &spec)
                .unwrap()
                .mul(&represent(&x, &spec).unwrap())
                .unwrap();
            assert!(product.is_closed());
            assert!(product.sub(&factored).unwrap().is_zero(), "k = {k}");
        }
    }

    #[test]
    fn matrices_of_commuting_operators_commute() {
        for k in 1..=2u32 {
            let spec = FlagSpec::new(6, k).unwrap();
            let hm = represent(&build_h(&sym(k)).unwrap(), &spec).unwrap();
            let xm = represent(&build_x(&sym(k)).unwrap(), &spec).unwrap();
            let lhs = hm.mul(&xm).unwrap();
            let rhs = xm.mul(&hm).unwrap();
            assert!(lhs.sub(&rhs).unwrap().is_zero(), "k = {k}");
        }
    }

    #[test]
    fn all_generators_close_on_their_space() {
        for weight in 1..=3u32 {
            for level in [0u32, 1, 4] {
                let report = generator_closure_check(weight, level).unwrap();
                assert_eq!(report.len(), 5 + weight as usize + 1);
                for item in &report {
                    assert!(
                        item.closed,
                        "weight {weight}, level {level}, generator {} escaped: {:?}",
                        item.name, item.escape
                    );
                }
            }
        }
    }

    #[test]
    fn csv_export_has_header_and_exact_entries() {
        let spec = FlagSpec::new(2, 1).unwrap();
        let h = build_h(&ModelParams::rational(
            1,
            rat_int(1),
            rat_int(1),
            rat_int(1),
            rat_int(0),
        ))
        .unwrap();
        let csv = represent(&h, &spec).unwrap().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "1,t,u,t^2,t u,u^2");
        assert_eq!(csv.lines().count(), 7);
    }
}
