//! Conversion of lambda brackets to mode brackets, symbolically in two mode
//! variables `m` and `n`:
//!
//! ```text
//! [a_(p), b_(q)] = sum_{j >= 0} C(p, j) (a_(j) b)_(p+q-j)
//! ```
//!
//! with `p = m + wt(a) - 1`, `q = n + wt(b) - 1` (a weight-`w` field has
//! modes `a_n = a_(n + w - 1)`; weight-2 fields carry the familiar shifted
//! indexing). Unit-field contributions become `delta_{m+n, c}` constraints,
//! and derivative atoms are reduced through `(D x)_(s) = -s x_(s-1)`.

use super::field::{Atom, FieldExpr, Word};
use super::lambda::LambdaPoly;
use crate::scalar::{factorial, sign_pow, Q};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial in the symbolic mode variables `m`, `n`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModePoly {
    /// (degree in m, degree in n) -> coefficient.
    coeffs: BTreeMap<(u32, u32), Q>,
}

impl ModePoly {
    pub fn zero() -> Self {
        ModePoly::default()
    }

    pub fn constant(q: Q) -> Self {
        let mut p = ModePoly::zero();
        p.add_term(0, 0, q);
        p
    }

    pub fn one() -> Self {
        ModePoly::constant(Q::one())
    }

    pub fn var_m() -> Self {
        let mut p = ModePoly::zero();
        p.add_term(1, 0, Q::one());
        p
    }

    pub fn var_n() -> Self {
        let mut p = ModePoly::zero();
        p.add_term(0, 1, Q::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, dm: u32, dn: u32, q: Q) {
        if q.is_zero() {
            return;
        }
        let e = self.coeffs.entry((dm, dn)).or_insert_with(Q::zero);
        *e += q;
        if e.is_zero() {
            self.coeffs.remove(&(dm, dn));
        }
    }

    pub fn add(&self, other: &ModePoly) -> ModePoly {
        let mut out = self.clone();
        for (&(dm, dn), q) in &other.coeffs {
            out.add_term(dm, dn, q.clone());
        }
        out
    }

    pub fn sub(&self, other: &ModePoly) -> ModePoly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> ModePoly {
        if s.is_zero() {
            return ModePoly::zero();
        }
        ModePoly {
            coeffs: self.coeffs.iter().map(|(k, q)| (*k, q * s)).collect(),
        }
    }

    pub fn mul(&self, other: &ModePoly) -> ModePoly {
        let mut out = ModePoly::zero();
        for (&(am, an), aq) in &self.coeffs {
            for (&(bm, bn), bq) in &other.coeffs {
                out.add_term(am + bm, an + bn, aq * bq);
            }
        }
        out
    }

    /// Substitutes `n = c - m`, collapsing to a polynomial in `m` alone.
    pub fn substitute_n(&self, c: i64) -> ModePoly {
        let mut out = ModePoly::zero();
        for (&(dm, dn), q) in &self.coeffs {
            // (c - m)^dn expanded binomially.
            for i in 0..=dn {
                let coeff = crate::scalar::binomial(dn as i64, i)
                    * Q::from_integer(c.into()).pow_or_one(dn - i)
                    * sign_pow(i);
                out.add_term(dm + i, 0, q * coeff);
            }
        }
        out
    }

    pub fn eval(&self, m: i64, n: i64) -> Q {
        let mut acc = Q::zero();
        for (&(dm, dn), q) in &self.coeffs {
            let mut term = q.clone();
            for _ in 0..dm {
                term *= Q::from_integer(m.into());
            }
            for _ in 0..dn {
                term *= Q::from_integer(n.into());
            }
            acc += term;
        }
        acc
    }
}

trait PowOrOne {
    fn pow_or_one(&self, e: u32) -> Q;
}

impl PowOrOne for Q {
    fn pow_or_one(&self, e: u32) -> Q {
        let mut acc = Q::one();
        for _ in 0..e {
            acc *= self;
        }
        acc
    }
}

impl fmt::Display for ModePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(dm, dn), q) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({q})")?;
            if dm == 1 {
                write!(f, "*m")?;
            } else if dm > 1 {
                write!(f, "*m^{dm}")?;
            }
            if dn == 1 {
                write!(f, "*n")?;
            } else if dn > 1 {
                write!(f, "*n^{dn}")?;
            }
        }
        Ok(())
    }
}

/// `C(m + shift, j)` as a polynomial in `m`.
fn binomial_poly(shift: i64, j: u32) -> ModePoly {
    let mut acc = ModePoly::one();
    for t in 0..j as i64 {
        let mut factor = ModePoly::var_m();
        factor.add_term(0, 0, Q::from_integer((shift - t).into()));
        acc = acc.mul(&factor);
    }
    acc.scale(&(Q::one() / factorial(j)))
}

/// `(m + n + offset)(m + n + offset - 1) ... `, `d` factors.
fn falling_poly(offset: i64, d: u32) -> ModePoly {
    let mut acc = ModePoly::one();
    for t in 0..d as i64 {
        let mut factor = ModePoly::var_m().add(&ModePoly::var_n());
        factor.add_term(0, 0, Q::from_integer((offset - t).into()));
        acc = acc.mul(&factor);
    }
    acc
}

/// A mode bracket `[a_m, b_n]` in closed form: field terms indexed at raw
/// modes `m + n + offset`, plus unit contributions supported on
/// `m + n = delta` with coefficients polynomial in `m`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ModeBracket {
    /// (underived word, raw mode offset relative to m+n) -> coefficient.
    pub field_terms: BTreeMap<(Word, i64), ModePoly>,
    /// delta constraint value of m+n -> coefficient polynomial in m alone.
    pub central_terms: BTreeMap<i64, ModePoly>,
}

impl ModeBracket {
    pub fn is_zero(&self) -> bool {
        self.field_terms.is_empty() && self.central_terms.is_empty()
    }

    fn add_field(&mut self, w: Word, offset: i64, p: ModePoly) {
        if p.is_zero() {
            return;
        }
        let e = self
            .field_terms
            .entry((w, offset))
            .or_insert_with(ModePoly::zero);
        *e = e.add(&p);
        if e.is_zero() {
            let key = self
                .field_terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.field_terms.remove(&k);
            }
        }
    }

    fn add_central(&mut self, delta: i64, p: ModePoly) {
        if p.is_zero() {
            return;
        }
        let e = self.central_terms.entry(delta).or_insert_with(ModePoly::zero);
        *e = e.add(&p);
        if e.is_zero() {
            self.central_terms.remove(&delta);
        }
    }

    pub fn add(&self, other: &ModeBracket) -> ModeBracket {
        let mut out = self.clone();
        for ((w, off), p) in &other.field_terms {
            out.add_field(w.clone(), *off, p.clone());
        }
        for (&d, p) in &other.central_terms {
            out.add_central(d, p.clone());
        }
        out
    }

    /// Adds a unit contribution supported on `m + n = delta`.
    pub fn push_central(&mut self, delta: i64, p: ModePoly) {
        self.add_central(delta, p);
    }

    /// Adds a field contribution at raw mode `m + n + offset`.
    pub fn push_field(&mut self, w: Word, offset: i64, p: ModePoly) {
        self.add_field(w, offset, p);
    }
}

/// Places one word with a coefficient polynomial at raw symbolic mode
/// `m + n + offset`, reducing derivative atoms to plain generator modes.
/// Accepts only evaluated words: the symbolic central element must have
/// been substituted first.
pub fn place_word(out: &mut ModeBracket, w: &Word, coeff: ModePoly, offset: i64) {
    assert_eq!(
        w.central_power(),
        0,
        "mode conversion expects the central element to be evaluated"
    );
    match w {
        Word::One => {
            // unit_(s) is the identity only at s = -1: constrain m+n.
            let delta = -1 - offset;
            out.add_central(delta, coeff.substitute_n(delta));
        }
        Word::Atom(a) if a.deriv > 0 => {
            let d = a.deriv;
            let factor = falling_poly(offset, d).scale(&sign_pow(d));
            place_word(
                out,
                &Word::Atom(Atom { gen: a.gen, deriv: 0 }),
                coeff.mul(&factor),
                offset - d as i64,
            );
        }
        _ => out.add_field(w.clone(), offset, coeff),
    }
}

/// Converts a lambda bracket of fields of weights `wa`, `wb` into the mode
/// bracket `[a_m, b_n]`, symbolically in `m` and `n`.
pub fn mode_convert(p: &LambdaPoly, wa: u32, wb: u32) -> ModeBracket {
    let mut out = ModeBracket::default();
    let shift = wa as i64 - 1;
    for (&j, f) in p.powers() {
        // C(m + wa - 1, j) * (a_(j) b) placed at p + q - j.
        let c = binomial_poly(shift, j).scale(&factorial(j));
        let offset = wa as i64 + wb as i64 - 2 - j as i64;
        for (w, q) in f.terms() {
            place_word(&mut out, w, c.scale(q), offset);
        }
    }
    out
}

/// Mode bracket of two fields of given conformal weights, with the central
/// element evaluated at the algebra's level.
pub fn mode_bracket(
    ctx: &super::sugawara::CurrentAlgebra,
    a: &FieldExpr,
    wa: u32,
    b: &FieldExpr,
    wb: u32,
) -> ModeBracket {
    mode_convert(&ctx.lambda_bracket(a, b), wa, wb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::builtin;
    use crate::scalar::{qi, qr};

    #[test]
    fn binomial_poly_values() {
        // C(m+1, 3) at m = 2 is C(3,3) = 1; at m = 4 is C(5,3) = 10.
        let p = binomial_poly(1, 3);
        assert_eq!(p.eval(2, 0), qi(1));
        assert_eq!(p.eval(4, 0), qi(10));
    }

    #[test]
    fn substitute_n_collapses() {
        // (m - n) with n = -m gives 2m.
        let p = ModePoly::var_m().sub(&ModePoly::var_n());
        let s = p.substitute_n(0);
        assert_eq!(s.eval(5, 0), qi(10));
    }

    #[test]
    fn generator_mode_bracket_matches_affine_relations() {
        use crate::conformal::field::FieldExpr;
        use crate::conformal::sugawara::{CurrentAlgebra, Level};

        let g8 = builtin("g8").unwrap();
        let level = qr(1, 2);
        let ctx = CurrentAlgebra::new(&g8, Level::new(level.clone(), None).unwrap()).unwrap();
        // [a+_m, a-_n] = 2 R_{m+n} + 8 k m delta_{m+n,0}.
        let mb = mode_bracket(&ctx, &FieldExpr::generator(4), 1, &FieldExpr::generator(5), 1);
        let mut expected = ModeBracket::default();
        expected.add_field(Word::gen(1), 0, ModePoly::constant(qi(2)));
        expected.add_central(0, ModePoly::var_m().scale(&(qi(8) * &level)));
        assert_eq!(mb, expected);
    }
}
