//! `Z2^n`-graded Lie superalgebras presented by structure constants.
//!
//! A spec stores the bracket table only for index pairs `a <= b`; the
//! remaining entries are derived through graded skew-symmetry, so the table
//! can never hold inconsistent duplicates.

use crate::grade::Grade;
use crate::scalar::{sign_pow, Q};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("generator index {0} out of range (dimension {1})")]
    GeneratorIndex(usize, usize),
    #[error("unknown generator name {0:?}")]
    UnknownGenerator(String),
    #[error("grade rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("bracket [{left}, {right}] violates the grading: target {target} has grade {target_grade}, expected {expected}")]
    GradingViolation {
        left: String,
        right: String,
        target: String,
        target_grade: Grade,
        expected: Grade,
    },
    #[error("bracket [{0}, {0}] of an even-pairing generator must vanish")]
    EvenDiagonal(String),
    #[error("conflicting entries for bracket [{0}, {1}]")]
    DuplicateBracket(String, String),
    #[error("{0}")]
    Other(String),
}

/// A named basis generator with its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub grade: Grade,
}

/// A `Z2^n`-graded Lie superalgebra given by structure constants over `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpec {
    pub name: String,
    pub rank: usize,
    generators: Vec<Generator>,
    /// Bracket table for `a <= b` only: `(a, b) -> [(c, f^{ab}_c)]`.
    table: BTreeMap<(usize, usize), Vec<(usize, Q)>>,
    /// Index of the distinguished grading generator (`R` for the builtins),
    /// whose adjoint action must be diagonal for the affine weight argument.
    pub grading_generator: Option<usize>,
    /// When a spec was loaded from a file and re-sorted into standard grade
    /// order, `permutation[new] = original position`.
    pub input_permutation: Option<Vec<usize>>,
}

impl AlgebraSpec {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn grade(&self, idx: usize) -> &Grade {
        &self.generators[idx].grade
    }

    pub fn gen_name(&self, idx: usize) -> &str {
        &self.generators[idx].name
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn check_index(&self, idx: usize) -> Result<(), AlgebraError> {
        if idx >= self.dim() {
            Err(AlgebraError::GeneratorIndex(idx, self.dim()))
        } else {
            Ok(())
        }
    }

    /// Raw stored entries (`a <= b` pairs only).
    pub fn stored_brackets(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<(usize, Q)>)> {
        self.table.iter()
    }

    /// Structure constants of `[[X^a, X^b]]` for arbitrary index order,
    /// applying graded skew-symmetry for `a > b`.
    pub fn bracket_basis(&self, a: usize, b: usize) -> Vec<(usize, Q)> {
        if a <= b {
            self.table.get(&(a, b)).cloned().unwrap_or_default()
        } else {
            let sign = -sign_pow(self.grade(a).inner(self.grade(b)));
            self.table
                .get(&(b, a))
                .map(|entries| {
                    entries
                        .iter()
                        .map(|(c, q)| (*c, q * &sign))
                        .collect()
                })
                .unwrap_or_default()
        }
    }

    /// Single structure constant `f^{ab}_c`.
    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> Q {
        self.bracket_basis(a, b)
            .into_iter()
            .find(|(i, _)| *i == c)
            .map(|(_, q)| q)
            .unwrap_or_else(Q::zero)
    }

    /// Eigenvalues of the adjoint action of the grading generator, if that
    /// action is diagonal on the basis. Returns `None` otherwise.
    pub fn grading_weights(&self) -> Option<Vec<Q>> {
        let r = self.grading_generator?;
        let mut weights = vec![Q::zero(); self.dim()];
        for j in 0..self.dim() {
            for (c, q) in self.bracket_basis(r, j) {
                if c == j {
                    weights[j] = q.clone();
                } else if !q.is_zero() {
                    return None;
                }
            }
        }
        Some(weights)
    }
}

/// Builder that normalizes arbitrary-order bracket entries into the `a <= b`
/// table and rejects inconsistencies up front.
pub struct AlgebraBuilder {
    name: String,
    rank: usize,
    generators: Vec<Generator>,
    table: BTreeMap<(usize, usize), Vec<(usize, Q)>>,
    seen: BTreeMap<(usize, usize), bool>,
    grading_generator: Option<usize>,
}

impl AlgebraBuilder {
    pub fn new(name: &str, rank: usize) -> Self {
        AlgebraBuilder {
            name: name.to_string(),
            rank,
            generators: Vec::new(),
            table: BTreeMap::new(),
            seen: BTreeMap::new(),
            grading_generator: None,
        }
    }

    pub fn generator(&mut self, name: &str, grade: Grade) -> Result<usize, AlgebraError> {
        if grade.rank() != self.rank {
            return Err(AlgebraError::RankMismatch {
                expected: self.rank,
                got: grade.rank(),
            });
        }
        if self.generators.iter().any(|g| g.name == name) {
            return Err(AlgebraError::Other(format!("duplicate generator name {name:?}")));
        }
        self.generators.push(Generator {
            name: name.to_string(),
            grade,
        });
        Ok(self.generators.len() - 1)
    }

    pub fn grading_generator(&mut self, name: &str) -> Result<(), AlgebraError> {
        let idx = self
            .generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))?;
        self.grading_generator = Some(idx);
        Ok(())
    }

    /// Records `[[X^left, X^right]] = sum coeff * X^target`, normalizing to the
    /// `a <= b` storage convention via skew-symmetry when needed.
    pub fn bracket(
        &mut self,
        left: &str,
        right: &str,
        result: &[(&str, Q)],
    ) -> Result<(), AlgebraError> {
        let a = self
            .generators
            .iter()
            .position(|g| g.name == left)
            .ok_or_else(|| AlgebraError::UnknownGenerator(left.to_string()))?;
        let b = self
            .generators
            .iter()
            .position(|g| g.name == right)
            .ok_or_else(|| AlgebraError::UnknownGenerator(right.to_string()))?;
        let mut targets = Vec::with_capacity(result.len());
        for (tname, coeff) in result {
            let c = self
                .generators
                .iter()
                .position(|g| g.name == *tname)
                .ok_or_else(|| AlgebraError::UnknownGenerator(tname.to_string()))?;
            targets.push((c, coeff.clone()));
        }
        self.bracket_indices(a, b, targets)
    }

    pub fn bracket_indices(
        &mut self,
        a: usize,
        b: usize,
        mut targets: Vec<(usize, Q)>,
    ) -> Result<(), AlgebraError> {
        let ga = self.generators[a].grade;
        let gb = self.generators[b].grade;
        let expected = ga.add(&gb);
        targets.retain(|(_, q)| !q.is_zero());
        for (c, _) in &targets {
            let gc = self.generators[*c].grade;
            if gc != expected {
                return Err(AlgebraError::GradingViolation {
                    left: self.generators[a].name.clone(),
                    right: self.generators[b].name.clone(),
                    target: self.generators[*c].name.clone(),
                    target_grade: gc,
                    expected,
                });
            }
        }
        if a == b && !ga.self_odd() && !targets.is_empty() {
            return Err(AlgebraError::EvenDiagonal(self.generators[a].name.clone()));
        }
        let (key, entries) = if a <= b {
            ((a, b), targets)
        } else {
            let sign = -sign_pow(ga.inner(&gb));
            (
                (b, a),
                targets.into_iter().map(|(c, q)| (c, q * &sign)).collect(),
            )
        };
        if self.seen.insert(key, true).is_some() {
            return Err(AlgebraError::DuplicateBracket(
                self.generators[key.0].name.clone(),
                self.generators[key.1].name.clone(),
            ));
        }
        if !entries.is_empty() {
            let mut entries = entries;
            entries.sort_by_key(|(c, _)| *c);
            self.table.insert(key, entries);
        }
        Ok(())
    }

    /// Finishes the build, re-sorting generators into standard grade order
    /// when necessary and rewriting the table through the permutation.
    pub fn build(self) -> AlgebraSpec {
        let mut order: Vec<usize> = (0..self.generators.len()).collect();
        order.sort_by_key(|&i| (self.generators[i].grade.standard_order_key(), i));
        let sorted = order.iter().enumerate().all(|(new, &old)| new == old);
        if sorted {
            return AlgebraSpec {
                name: self.name,
                rank: self.rank,
                generators: self.generators,
                table: self.table,
                grading_generator: self.grading_generator,
                input_permutation: None,
            };
        }
        let mut new_of_old = vec![0usize; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old] = new;
        }
        let generators: Vec<Generator> = order.iter().map(|&i| self.generators[i].clone()).collect();
        let mut table: BTreeMap<(usize, usize), Vec<(usize, Q)>> = BTreeMap::new();
        for ((a, b), entries) in self.table {
            let (mut na, mut nb) = (new_of_old[a], new_of_old[b]);
            let mut entries: Vec<(usize, Q)> =
                entries.into_iter().map(|(c, q)| (new_of_old[c], q)).collect();
            if na > nb {
                let sign = -sign_pow(generators[na].grade.inner(&generators[nb].grade));
                std::mem::swap(&mut na, &mut nb);
                for (_, q) in &mut entries {
                    *q = &*q * &sign;
                }
            }
            entries.sort_by_key(|(c, _)| *c);
            table.insert((na, nb), entries);
        }
        AlgebraSpec {
            name: self.name,
            rank: self.rank,
            generators,
            table,
            grading_generator: self.grading_generator.map(|i| new_of_old[i]),
            input_permutation: Some(order),
        }
    }
}

/// A sparse element of the algebra: generator index -> coefficient.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    coeffs: BTreeMap<usize, Q>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn generator(idx: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(idx, Q::one());
        AlgebraElement { coeffs }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut el = AlgebraElement::zero();
        for (i, q) in pairs {
            el.add_term(i, q);
        }
        el
    }

    pub fn add_term(&mut self, idx: usize, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(idx).or_insert_with(Q::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.coeffs.iter().map(|(i, q)| (*i, q))
    }

    pub fn coeff(&self, idx: usize) -> Q {
        self.coeffs.get(&idx).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, s: &Q) -> AlgebraElement {
        if s.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            coeffs: self.coeffs.iter().map(|(i, q)| (*i, q * s)).collect(),
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (i, q) in other.terms() {
            out.add_term(i, q.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&-Q::one()))
    }

    /// The common grade of all supported generators, if the element is
    /// homogeneous (the zero element reports `None`).
    pub fn homogeneous_grade(&self, spec: &AlgebraSpec) -> Option<Grade> {
        let mut grades = self.coeffs.keys().map(|&i| *spec.grade(i));
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }

    pub fn display<'a>(&'a self, spec: &'a AlgebraSpec) -> ElementDisplay<'a> {
        ElementDisplay { el: self, spec }
    }
}

pub struct ElementDisplay<'a> {
    el: &'a AlgebraElement,
    spec: &'a AlgebraSpec,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.el.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, q) in self.el.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if q == &Q::one() {
                write!(f, "{}", self.spec.gen_name(i))?;
            } else {
                write!(f, "{}*{}", q, self.spec.gen_name(i))?;
            }
        }
        Ok(())
    }
}

/// Bilinear extension of the structure table to sparse elements.
pub fn bracket(
    spec: &AlgebraSpec,
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<AlgebraElement, AlgebraError> {
    for (i, _) in x.terms() {
        spec.check_index(i)?;
    }
    for (i, _) in y.terms() {
        spec.check_index(i)?;
    }
    let mut out = AlgebraElement::zero();
    for (a, qa) in x.terms() {
        for (b, qb) in y.terms() {
            let scale = qa * qb;
            for (c, f) in spec.bracket_basis(a, b) {
                out.add_term(c, &f * &scale);
            }
        }
    }
    Ok(out)
}

/// A violated axiom, with enough context to reproduce it.
#[derive(Clone, Debug, PartialEq)]
pub enum AxiomViolation {
    /// Stored `f^{ab}_c` lands outside the grade `a + b` component.
    Grading { a: usize, b: usize, c: usize },
    /// `f^{ab}_c != -(-1)^{a.b} f^{ba}_c` for some `c`.
    Skew { a: usize, b: usize },
    /// The graded Jacobi sum over the triple does not vanish.
    Jacobi {
        a: usize,
        b: usize,
        c: usize,
        residual: AlgebraElement,
    },
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
    pub triples_checked: usize,
}

impl AxiomReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Graded Jacobi sum over one ordered triple of basis generators:
/// `(-1)^{a.c} [[X^a,[[X^b,X^c]]]] + (-1)^{b.a} [[X^b,[[X^c,X^a]]]] + (-1)^{c.b} [[X^c,[[X^a,X^b]]]]`.
pub fn jacobi_residual(spec: &AlgebraSpec, a: usize, b: usize, c: usize) -> AlgebraElement {
    let cyclic = [(a, b, c), (b, c, a), (c, a, b)];
    let mut sum = AlgebraElement::zero();
    for (x, y, z) in cyclic {
        let sign = sign_pow(spec.grade(x).inner(spec.grade(z)));
        for (m, f_yz) in spec.bracket_basis(y, z) {
            for (t, f_xm) in spec.bracket_basis(x, m) {
                sum.add_term(t, &sign * &f_yz * &f_xm);
            }
        }
    }
    sum
}

/// Validates the defining axioms: grading of every stored entry, graded
/// skew-symmetry, and the graded Jacobi identity exhaustively over all
/// ordered triples of basis generators. Violations are report content.
pub fn check_axioms(spec: &AlgebraSpec) -> AxiomReport {
    let mut report = AxiomReport::default();
    let r = spec.dim();
    for (&(a, b), entries) in spec.stored_brackets() {
        let expected = spec.grade(a).add(spec.grade(b));
        for (c, q) in entries {
            if !q.is_zero() && *spec.grade(*c) != expected {
                report.violations.push(AxiomViolation::Grading { a, b, c: *c });
            }
        }
    }
    for a in 0..r {
        for b in 0..r {
            let sign = -sign_pow(spec.grade(a).inner(spec.grade(b)));
            let ab = spec.bracket_basis(a, b);
            let ba = spec.bracket_basis(b, a);
            let mut flipped = AlgebraElement::from_pairs(ba);
            flipped = flipped.scale(&sign);
            let direct = AlgebraElement::from_pairs(ab);
            if direct != flipped {
                report.violations.push(AxiomViolation::Skew { a, b });
            }
        }
    }
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                report.triples_checked += 1;
                let residual = jacobi_residual(spec, a, b, c);
                if !residual.is_zero() {
                    report.violations.push(AxiomViolation::Jacobi { a, b, c, residual });
                }
            }
        }
    }
    report
}
