//! Canonical field expressions.
//!
//! A word is either the unit field, a derivative of a generator current, or
//! a right-nested normal product whose left factor is always a derivative of
//! a generator. Canonical words keep their atoms sorted by `(generator,
//! derivative order)`; a square of an atom whose grade pairs oddly with
//! itself never appears (it rewrites through the self-bracket).

use crate::algebra::AlgebraSpec;
use crate::grade::Grade;
use crate::scalar::Q;
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Marker index for the symbolic `(1,1)`-graded central element. It must
/// stay a formal field through the calculus: its grade enters the sign
/// rules, so evaluating it to a scalar mid-computation would silently break
/// the grading. It sorts after every generator, so canonical words carry
/// their central factors at the tail.
pub const CENTRAL_SYMBOL: usize = usize::MAX;

/// `d`-th derivative of the current of generator `gen`, or the symbolic
/// central element when `gen == CENTRAL_SYMBOL`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub gen: usize,
    pub deriv: u32,
}

impl Atom {
    pub fn new(gen: usize) -> Self {
        Atom { gen, deriv: 0 }
    }

    pub fn central() -> Self {
        Atom {
            gen: CENTRAL_SYMBOL,
            deriv: 0,
        }
    }

    pub fn is_central(&self) -> bool {
        self.gen == CENTRAL_SYMBOL
    }

    /// Conformal weight; the central symbol is a multiple of the vacuum and
    /// carries none.
    pub fn weight(&self) -> u32 {
        if self.is_central() {
            0
        } else {
            1 + self.deriv
        }
    }
}

/// A canonical word of the vertex algebra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Word {
    One,
    Atom(Atom),
    /// Right-nested normal product `:A tail:` with `A` an atom.
    Prod(Atom, Box<Word>),
}

impl Word {
    pub fn gen(g: usize) -> Self {
        Word::Atom(Atom::new(g))
    }

    pub fn head(&self) -> Option<Atom> {
        match self {
            Word::One => None,
            Word::Atom(a) => Some(*a),
            Word::Prod(a, _) => Some(*a),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Word::One => 0,
            Word::Atom(_) => 1,
            Word::Prod(_, tail) => 1 + tail.len(),
        }
    }

    pub fn atoms(&self) -> Vec<Atom> {
        match self {
            Word::One => Vec::new(),
            Word::Atom(a) => vec![*a],
            Word::Prod(a, tail) => {
                let mut v = vec![*a];
                v.extend(tail.atoms());
                v
            }
        }
    }

    pub fn grade(&self, spec: &AlgebraSpec) -> Grade {
        let twist = Grade::new(&vec![1; spec.rank]).expect("twist grade");
        let mut g = Grade::zero(spec.rank);
        for a in self.atoms() {
            if a.is_central() {
                g = g.add(&twist);
            } else {
                g = g.add(spec.grade(a.gen));
            }
        }
        g
    }

    /// Conformal weight: each current atom contributes `1 + derivative
    /// order`; central factors contribute nothing.
    pub fn weight(&self) -> u32 {
        self.atoms().iter().map(Atom::weight).sum()
    }

    /// Number of central factors in the word.
    pub fn central_power(&self) -> u32 {
        self.atoms().iter().filter(|a| a.is_central()).count() as u32
    }

    /// Removes the central factors. Central atoms sort last, so stripping
    /// them preserves canonical form.
    pub fn strip_central(&self) -> Word {
        match self {
            Word::One => Word::One,
            Word::Atom(a) if a.is_central() => Word::One,
            Word::Atom(a) => Word::Atom(*a),
            Word::Prod(a, tail) => {
                if a.is_central() {
                    return Word::One;
                }
                match tail.strip_central() {
                    Word::One => Word::Atom(*a),
                    rest => Word::Prod(*a, Box::new(rest)),
                }
            }
        }
    }

    pub fn display<'a>(&'a self, spec: &'a AlgebraSpec) -> WordDisplay<'a> {
        WordDisplay { word: self, spec }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    spec: &'a AlgebraSpec,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn atom(f: &mut fmt::Formatter<'_>, a: &Atom, spec: &AlgebraSpec) -> fmt::Result {
            if a.is_central() {
                return write!(f, "w11");
            }
            match a.deriv {
                0 => write!(f, "{}", spec.gen_name(a.gen)),
                1 => write!(f, "D{}", spec.gen_name(a.gen)),
                d => write!(f, "D^{}{}", d, spec.gen_name(a.gen)),
            }
        }
        match self.word {
            Word::One => write!(f, "1"),
            Word::Atom(a) => atom(f, a, self.spec),
            Word::Prod(a, tail) => {
                write!(f, ":")?;
                atom(f, a, self.spec)?;
                let mut cur: &Word = tail;
                loop {
                    match cur {
                        Word::Prod(b, rest) => {
                            write!(f, " ")?;
                            atom(f, b, self.spec)?;
                            cur = rest;
                        }
                        Word::Atom(b) => {
                            write!(f, " ")?;
                            atom(f, b, self.spec)?;
                            break;
                        }
                        Word::One => break,
                    }
                }
                write!(f, ":")
            }
        }
    }
}

/// A rational-linear combination of canonical words. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FieldExpr {
    terms: BTreeMap<Word, Q>,
}

impl FieldExpr {
    pub fn zero() -> Self {
        FieldExpr::default()
    }

    pub fn unit() -> Self {
        FieldExpr::from_word(Word::One)
    }

    pub fn generator(g: usize) -> Self {
        FieldExpr::from_word(Word::gen(g))
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Q::one());
        FieldExpr { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, w: Word, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(Q::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &FieldExpr) -> FieldExpr {
        let mut out = self.clone();
        for (w, q) in other.terms() {
            out.add_term(w.clone(), q.clone());
        }
        out
    }

    pub fn sub(&self, other: &FieldExpr) -> FieldExpr {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> FieldExpr {
        if s.is_zero() {
            return FieldExpr::zero();
        }
        FieldExpr {
            terms: self.terms.iter().map(|(w, q)| (w.clone(), q * s)).collect(),
        }
    }

    /// The common grade of all words, when homogeneous.
    pub fn homogeneous_grade(&self, spec: &AlgebraSpec) -> Option<Grade> {
        let mut grades = self.terms.keys().map(|w| w.grade(spec));
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }

    /// The common conformal weight of all words, when uniform.
    pub fn uniform_weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(Word::weight);
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    /// Evaluates the symbolic central element to a scalar.
    ///
    /// The element carries grade `(1,1)` and graded-commutes, so it
    /// anticommutes with the odd sectors; replacing it by a number forces a
    /// convention for where its factors stand first. Factors are committed
    /// to the left of each word: canonical words keep them at the tail, so
    /// each factor picks up the crossing sign `(-1)^{(1,1).g}` against the
    /// rest of the word (of grade `g`) before becoming the scalar `value`.
    pub fn evaluate_central(&self, spec: &AlgebraSpec, value: &Q) -> FieldExpr {
        let twist = Grade::new(&vec![1; spec.rank]).expect("twist grade");
        let mut out = FieldExpr::zero();
        for (w, q) in self.terms() {
            let p = w.central_power();
            let stripped = w.strip_central();
            let mut coeff = q.clone();
            if p % 2 == 1 && stripped.grade(spec).inner(&twist) == 1 {
                coeff = -coeff;
            }
            for _ in 0..p {
                coeff *= value;
            }
            out.add_term(stripped, coeff);
        }
        out
    }

    /// Largest number of central factors in any word.
    pub fn max_central_power(&self) -> u32 {
        self.terms.keys().map(Word::central_power).max().unwrap_or(0)
    }

    pub fn display<'a>(&'a self, spec: &'a AlgebraSpec) -> FieldDisplay<'a> {
        FieldDisplay { expr: self, spec }
    }
}

pub struct FieldDisplay<'a> {
    expr: &'a FieldExpr,
    spec: &'a AlgebraSpec,
}

impl fmt::Display for FieldDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.expr.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, q) in self.expr.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if q == &Q::one() && *w != Word::One {
                write!(f, "{}", w.display(self.spec))?;
            } else {
                write!(f, "({})*{}", q, w.display(self.spec))?;
            }
        }
        Ok(())
    }
}
