//! A PBW-ordered rewriter for the universal enveloping algebra, sufficient
//! to multiply quadratic elements and certify Casimir centrality.
//!
//! Words are reduced through `X^a X^b = (-1)^{a.b} X^b X^a + [[X^a, X^b]]`
//! until the letters are non-decreasing in the basis order. A square of a
//! generator whose grade pairs oddly with itself rewrites to half its
//! self-bracket; squares of even-pairing generators (including the `(1,1)`
//! sector) are genuine PBW monomials.

use crate::algebra::{AlgebraError, AlgebraSpec};
use crate::grade::Grade;
use crate::scalar::{sign_pow, Q};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Maximum word length the rewriter accepts. Quadratic Casimir checks need
/// products of a generator with a quadratic element; four letters leaves
/// room for associativity tests on cubics.
pub const MAX_WORD_LEN: usize = 4;

#[derive(Debug, Error)]
pub enum UeaError {
    #[error("word of length {0} exceeds the supported maximum {MAX_WORD_LEN}")]
    WordTooLong(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A PBW monomial: a non-decreasing sequence of generator indices. The empty
/// word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PBWMonomial(pub Vec<usize>);

impl PBWMonomial {
    pub fn unit() -> Self {
        PBWMonomial(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn grade(&self, spec: &AlgebraSpec) -> Grade {
        let mut g = Grade::zero(spec.rank);
        for &i in &self.0 {
            g = g.add(spec.grade(i));
        }
        g
    }
}

/// A sparse element of the enveloping algebra in PBW normal form.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UEAElement {
    terms: BTreeMap<PBWMonomial, Q>,
}

impl UEAElement {
    pub fn zero() -> Self {
        UEAElement::default()
    }

    pub fn unit() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(PBWMonomial::unit(), Q::one());
        UEAElement { terms }
    }

    pub fn generator(idx: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(PBWMonomial(vec![idx]), Q::one());
        UEAElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &PBWMonomial) -> Q {
        self.terms.get(mono).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, mono: PBWMonomial, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(Q::zero);
        *entry += coeff;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &UEAElement) -> UEAElement {
        let mut out = self.clone();
        for (m, q) in other.terms() {
            out.add_term(m.clone(), q.clone());
        }
        out
    }

    pub fn sub(&self, other: &UEAElement) -> UEAElement {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> UEAElement {
        if s.is_zero() {
            return UEAElement::zero();
        }
        UEAElement {
            terms: self.terms.iter().map(|(m, q)| (m.clone(), q * s)).collect(),
        }
    }

    /// The common grade of all monomials, when homogeneous.
    pub fn degree(&self, spec: &AlgebraSpec) -> Option<Grade> {
        let mut grades = self.terms.keys().map(|m| m.grade(spec));
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }

    pub fn display<'a>(&'a self, spec: &'a AlgebraSpec) -> UeaDisplay<'a> {
        UeaDisplay { el: self, spec }
    }
}

pub struct UeaDisplay<'a> {
    el: &'a UEAElement,
    spec: &'a AlgebraSpec,
}

impl fmt::Display for UeaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.el.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, q) in self.el.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let word = if m.is_empty() {
                "1".to_string()
            } else {
                m.0.iter()
                    .map(|&i| self.spec.gen_name(i).to_string())
                    .collect::<Vec<_>>()
                    .join("*")
            };
            if q == &Q::one() && !m.is_empty() {
                write!(f, "{word}")?;
            } else {
                write!(f, "({q})*{word}")?;
            }
        }
        Ok(())
    }
}

/// Rewrites an arbitrary word into PBW normal form. Each swap strictly
/// reduces the number of inversions and each bracket substitution shortens
/// the word, so the loop terminates.
fn reduce_word(spec: &AlgebraSpec, word: Vec<usize>, coeff: Q, out: &mut UEAElement) {
    // Find the first position that breaks PBW normal form.
    let bad = word.windows(2).position(|w| {
        w[0] > w[1] || (w[0] == w[1] && spec.grade(w[0]).self_odd())
    });
    let Some(pos) = bad else {
        out.add_term(PBWMonomial(word), coeff);
        return;
    };
    let (a, b) = (word[pos], word[pos + 1]);
    if a == b {
        // X^a X^a = 1/2 [[X^a, X^a]] for odd self-pairing grades.
        let half = Q::new(1.into(), 2.into());
        for (c, f) in spec.bracket_basis(a, a) {
            let mut shorter = Vec::with_capacity(word.len() - 1);
            shorter.extend_from_slice(&word[..pos]);
            shorter.push(c);
            shorter.extend_from_slice(&word[pos + 2..]);
            reduce_word(spec, shorter, &coeff * &f * &half, out);
        }
        return;
    }
    // X^a X^b = (-1)^{a.b} X^b X^a + [[X^a, X^b]].
    let sign = sign_pow(spec.grade(a).inner(spec.grade(b)));
    let mut swapped = word.clone();
    swapped.swap(pos, pos + 1);
    reduce_word(spec, swapped, &coeff * &sign, out);
    for (c, f) in spec.bracket_basis(a, b) {
        let mut shorter = Vec::with_capacity(word.len() - 1);
        shorter.extend_from_slice(&word[..pos]);
        shorter.push(c);
        shorter.extend_from_slice(&word[pos + 2..]);
        reduce_word(spec, shorter, &coeff * &f, out);
    }
}

/// Associative product in the enveloping algebra, PBW-reduced.
pub fn uea_multiply(
    spec: &AlgebraSpec,
    u: &UEAElement,
    v: &UEAElement,
) -> Result<UEAElement, UeaError> {
    let mut out = UEAElement::zero();
    for (mu, qu) in u.terms() {
        for (mv, qv) in v.terms() {
            let total = mu.len() + mv.len();
            if total > MAX_WORD_LEN {
                return Err(UeaError::WordTooLong(total));
            }
            for &i in mu.0.iter().chain(mv.0.iter()) {
                spec.check_index(i).map_err(UeaError::Algebra)?;
            }
            let mut word = Vec::with_capacity(total);
            word.extend_from_slice(&mu.0);
            word.extend_from_slice(&mv.0);
            reduce_word(spec, word, qu * qv, &mut out);
        }
    }
    Ok(out)
}

/// General Lie bracket of a basis generator with an enveloping-algebra
/// element: `x u - (-1)^{x.u} u x`, taken monomial by monomial so the sign
/// always sees a homogeneous right factor.
pub fn uea_bracket(
    spec: &AlgebraSpec,
    x: usize,
    u: &UEAElement,
) -> Result<UEAElement, UeaError> {
    spec.check_index(x).map_err(UeaError::Algebra)?;
    let gx = *spec.grade(x);
    let xe = UEAElement::generator(x);
    let mut out = UEAElement::zero();
    for (mono, q) in u.terms() {
        let mut single = UEAElement::zero();
        single.add_term(mono.clone(), q.clone());
        let left = uea_multiply(spec, &xe, &single)?;
        let right = uea_multiply(spec, &single, &xe)?;
        let sign = sign_pow(gx.inner(&mono.grade(spec)));
        out = out.add(&left.sub(&right.scale(&sign)));
    }
    Ok(out)
}

/// A generator whose bracket with the candidate Casimir fails to vanish.
#[derive(Clone, Debug)]
pub struct CentralityViolation {
    pub generator: usize,
    pub residual: UEAElement,
}

/// Computes `[[X^a, c]]` for every generator; empty iff `c` is central.
pub fn check_casimir_central(
    spec: &AlgebraSpec,
    c: &UEAElement,
) -> Result<Vec<CentralityViolation>, UeaError> {
    let mut violations = Vec::new();
    for a in 0..spec.dim() {
        let residual = uea_bracket(spec, a, c)?;
        if !residual.is_zero() {
            violations.push(CentralityViolation { generator: a, residual });
        }
    }
    Ok(violations)
}
