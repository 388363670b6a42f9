//! The graded lambda-bracket calculus over a centrally extended current
//! algebra, with central elements evaluated to rational level scalars.
//!
//! The defining data is the bracket of two generator currents,
//!
//! ```text
//! [X^a _l X^b] = sum_c f^{ab}_c X^c + l * kappa^{ab} * unit
//! ```
//!
//! extended to derivatives by sesquilinearity, to right factors that are
//! normal products by the graded non-commutative Wick formula, and to left
//! factors that are normal products by the companion formula with the
//! `e^{D d/dl}` shift. Normal products are canonicalized through
//! quasi-commutativity and quasi-associativity, whose correction terms are
//! integrals of lambda-brackets; the whole calculus closes on canonical
//! words.

use super::field::{Atom, FieldExpr, Word};
use crate::algebra::AlgebraSpec;
use crate::grade::Grade;
use crate::linalg::QMatrix;
use crate::scalar::{binomial, factorial, sign_pow, Q};
use num::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

/// A polynomial in the formal variable lambda with field coefficients.
/// `coeffs[j]` is the raw coefficient of `lambda^j`; the `j`-th product
/// `a_(j) b` is `j!` times that.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LambdaPoly {
    coeffs: BTreeMap<u32, FieldExpr>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant(f: FieldExpr) -> Self {
        let mut p = LambdaPoly::zero();
        p.add_term(0, f);
        p
    }

    pub fn add_term(&mut self, power: u32, f: FieldExpr) {
        if f.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(power).or_insert_with(FieldExpr::zero);
        *entry = entry.add(&f);
        if entry.is_zero() {
            self.coeffs.remove(&power);
        }
    }

    pub fn coeff(&self, power: u32) -> FieldExpr {
        self.coeffs.get(&power).cloned().unwrap_or_else(FieldExpr::zero)
    }

    /// The `j`-th product `a_(j) b = j! *` (coefficient of `lambda^j`).
    pub fn nth_product(&self, j: u32) -> FieldExpr {
        self.coeff(j).scale(&factorial(j))
    }

    pub fn max_power(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn powers(&self) -> impl Iterator<Item = (&u32, &FieldExpr)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        for (&p, f) in other.powers() {
            out.add_term(p, f.clone());
        }
        out
    }

    pub fn sub(&self, other: &LambdaPoly) -> LambdaPoly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> LambdaPoly {
        if s.is_zero() {
            return LambdaPoly::zero();
        }
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|(p, f)| (*p, f.scale(s))).collect(),
        }
    }

    /// Multiplies by `lambda^k`.
    pub fn shift(&self, k: u32) -> LambdaPoly {
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|(p, f)| (p + k, f.clone())).collect(),
        }
    }
}

/// A current algebra over a fixed spec. The central coefficient of a
/// generator pair has a numeric part (the non-graded central element
/// evaluated at its level, which is safe because that element has grade
/// zero) and a part proportional to the symbolic `(1,1)`-graded central
/// field, which must stay formal so the graded sign rules remain exact.
pub struct VertexAlgebra<'a> {
    pub spec: &'a AlgebraSpec,
    pub kappa_scalar: QMatrix,
    pub kappa_central: QMatrix,
    lb_cache: Mutex<HashMap<(Word, Word), LambdaPoly>>,
    np_cache: Mutex<HashMap<(Word, Word), FieldExpr>>,
}

impl<'a> VertexAlgebra<'a> {
    pub fn new(spec: &'a AlgebraSpec, kappa_scalar: QMatrix, kappa_central: QMatrix) -> Self {
        assert_eq!(kappa_scalar.rows(), spec.dim());
        assert_eq!(kappa_scalar.cols(), spec.dim());
        assert_eq!(kappa_central.rows(), spec.dim());
        assert_eq!(kappa_central.cols(), spec.dim());
        VertexAlgebra {
            spec,
            kappa_scalar,
            kappa_central,
            lb_cache: Mutex::new(HashMap::new()),
            np_cache: Mutex::new(HashMap::new()),
        }
    }

    /// A current algebra with a purely numeric central coefficient.
    pub fn with_scalar_center(spec: &'a AlgebraSpec, kappa: QMatrix) -> Self {
        let r = spec.dim();
        VertexAlgebra::new(spec, kappa, QMatrix::zero(r, r))
    }

    /// A current algebra with no central term.
    pub fn without_center(spec: &'a AlgebraSpec) -> Self {
        let r = spec.dim();
        VertexAlgebra::new(spec, QMatrix::zero(r, r), QMatrix::zero(r, r))
    }

    fn grade_of(&self, w: &Word) -> Grade {
        w.grade(self.spec)
    }

    fn atom_grade(&self, a: &Atom) -> Grade {
        if a.is_central() {
            Grade::new(&vec![1; self.spec.rank]).expect("twist grade")
        } else {
            *self.spec.grade(a.gen)
        }
    }

    /// Derivative of a field expression; a derivation of normal products.
    pub fn partial(&self, f: &FieldExpr) -> FieldExpr {
        let mut out = FieldExpr::zero();
        for (w, q) in f.terms() {
            out = out.add(&self.partial_word(w).scale(q));
        }
        out
    }

    pub fn partial_n(&self, f: &FieldExpr, n: u32) -> FieldExpr {
        let mut out = f.clone();
        for _ in 0..n {
            out = self.partial(&out);
        }
        out
    }

    fn partial_word(&self, w: &Word) -> FieldExpr {
        match w {
            Word::One => FieldExpr::zero(),
            Word::Atom(a) if a.is_central() => FieldExpr::zero(),
            Word::Atom(a) => FieldExpr::from_word(Word::Atom(Atom {
                gen: a.gen,
                deriv: a.deriv + 1,
            })),
            Word::Prod(head, tail) => {
                let left = if head.is_central() {
                    FieldExpr::zero()
                } else {
                    let dh = Word::Atom(Atom {
                        gen: head.gen,
                        deriv: head.deriv + 1,
                    });
                    self.np_words(&dh, tail, 0)
                };
                let right = self.np(
                    &FieldExpr::from_word(Word::Atom(*head)),
                    &self.partial_word(tail),
                );
                left.add(&right)
            }
        }
    }

    /// Normal ordered product, bilinear over canonical inputs; the result is
    /// canonical.
    pub fn np(&self, a: &FieldExpr, b: &FieldExpr) -> FieldExpr {
        let mut out = FieldExpr::zero();
        for (wa, qa) in a.terms() {
            for (wb, qb) in b.terms() {
                out = out.add(&self.np_words(wa, wb, 0).scale(&(qa * qb)));
            }
        }
        out
    }

    /// Lambda bracket, bilinear over canonical inputs.
    pub fn lb(&self, a: &FieldExpr, b: &FieldExpr) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (wa, qa) in a.terms() {
            for (wb, qb) in b.terms() {
                out = out.add(&self.lb_words(wa, wb, 0).scale(&(qa * qb)));
            }
        }
        out
    }

    /// `: A P(l) :` with the normal product applied coefficient-wise.
    fn np_poly(&self, a: &FieldExpr, p: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (&j, f) in p.powers() {
            out.add_term(j, self.np(a, f));
        }
        out
    }

    fn np_poly_right(&self, p: &LambdaPoly, b: &FieldExpr) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (&j, f) in p.powers() {
            out.add_term(j, self.np(f, b));
        }
        out
    }

    /// `int_{-D}^0 P(l) dl = sum_j (-1)^j D^{j+1}(p_j) / (j+1)`.
    fn integral_minus_d_to_zero(&self, p: &LambdaPoly) -> FieldExpr {
        let mut out = FieldExpr::zero();
        for (&j, f) in p.powers() {
            let coeff = sign_pow(j) / Q::from_integer((j as i64 + 1).into());
            out = out.add(&self.partial_n(f, j + 1).scale(&coeff));
        }
        out
    }

    /// `:(int_0^D dl A) P(l): = sum_j (1/(j+1)) :(D^{j+1} A) p_j:`
    fn np_integral_left(&self, a: &FieldExpr, p: &LambdaPoly) -> FieldExpr {
        let mut out = FieldExpr::zero();
        for (&j, f) in p.powers() {
            let coeff = Q::one() / Q::from_integer((j as i64 + 1).into());
            out = out.add(&self.np(&self.partial_n(a, j + 1), f).scale(&coeff));
        }
        out
    }

    /// `:(e^{D d/dl} A) P(l): = sum_{i <= j} C(j,i) l^{j-i} :(D^i A) p_j:`
    fn np_shifted_left(&self, a: &FieldExpr, p: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (&j, f) in p.powers() {
            for i in 0..=j {
                let c = binomial(j as i64, i);
                out.add_term(j - i, self.np(&self.partial_n(a, i), f).scale(&c));
            }
        }
        out
    }

    /// `int_0^l [ B _mu [ A _{l-mu} C ] ] dmu`: with `[A _nu C] = sum_j nu^j r_j`
    /// and `[B _mu r_j] = sum_i mu^i s_{ij}`, the value is
    /// `sum_{ij} i! j! / (i+j+1)! l^{i+j+1} s_{ij}`.
    fn integral_nested(&self, b: &FieldExpr, a_with_c: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (&j, r) in a_with_c.powers() {
            let inner = self.lb(b, r);
            for (&i, s) in inner.powers() {
                let coeff = factorial(i) * factorial(j) / factorial(i + j + 1);
                out.add_term(i + j + 1, s.scale(&coeff));
            }
        }
        out
    }

    /// Substitutes `l -> -l - D` into a lambda polynomial (the skew
    /// substitution), with `D` acting on the coefficients.
    pub fn skew_substitute(&self, p: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (&j, f) in p.powers() {
            for i in 0..=j {
                let c = binomial(j as i64, i) * sign_pow(j);
                out.add_term(j - i, self.partial_n(f, i).scale(&c));
            }
        }
        out
    }

    /// Skew image `-(-1)^{a.b} [a _{-l-D} b]` of a bracket, used by the
    /// engine's consistency checks against the directly computed `[b _l a]`.
    pub fn skew_of(&self, p: &LambdaPoly, ga: &Grade, gb: &Grade) -> LambdaPoly {
        self.skew_substitute(p).scale(&-sign_pow(ga.inner(gb)))
    }

    fn lb_words(&self, u: &Word, v: &Word, depth: usize) -> LambdaPoly {
        assert!(depth < 200, "lambda bracket recursion too deep");
        if matches!(u, Word::One) || matches!(v, Word::One) {
            return LambdaPoly::zero();
        }
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.lb_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let result = match (u, v) {
            (Word::Atom(x), Word::Atom(y)) => self.lb_atoms(x, y),
            (Word::Atom(_), Word::Prod(h, t)) => {
                // Non-commutative Wick formula:
                // [u _l :h t:] = :[u _l h] t: + (-1)^{u.h} :h [u _l t]:
                //               + int_0^l [[u _l h] _mu t] dmu
                let h_word = Word::Atom(*h);
                let uh = self.lb_words(u, &h_word, depth + 1);
                let ut = self.lb_words(u, t, depth + 1);
                let sign = sign_pow(self.grade_of(u).inner(&self.atom_grade(h)));
                let t_field = FieldExpr::from_word((**t).clone());
                let h_field = FieldExpr::from_word(h_word);
                let term1 = self.np_poly_right(&uh, &t_field);
                let term2 = self.np_poly(&h_field, &ut).scale(&sign);
                let term3 = {
                    // [[u _l h] _mu t], integrated.
                    let mut out = LambdaPoly::zero();
                    for (&j, p_j) in uh.powers() {
                        let inner = self.lb(p_j, &t_field);
                        for (&i, s) in inner.powers() {
                            let coeff = Q::one() / Q::from_integer((i as i64 + 1).into());
                            out.add_term(j + i + 1, s.scale(&coeff));
                        }
                    }
                    out
                };
                term1.add(&term2).add(&term3)
            }
            (Word::Prod(h, t), _) => {
                // Companion formula for a normal product on the left:
                // [:h t: _l v] = :(e^{D d/dl} h)[t _l v]: + (-1)^{h.t} :(e^{D d/dl} t)[h _l v]:
                //               + (-1)^{h.t} int_0^l [t _mu [h _{l-mu} v]] dmu
                let h_word = Word::Atom(*h);
                let h_field = FieldExpr::from_word(h_word.clone());
                let t_field = FieldExpr::from_word((**t).clone());
                let sign = sign_pow(self.atom_grade(h).inner(&self.grade_of(t)));
                let tv = self.lb_words(t, v, depth + 1);
                let hv = self.lb_words(&h_word, v, depth + 1);
                let term1 = self.np_shifted_left(&h_field, &tv);
                let term2 = self.np_shifted_left(&t_field, &hv).scale(&sign);
                let term3 = self.integral_nested(&t_field, &hv).scale(&sign);
                term1.add(&term2).add(&term3)
            }
            _ => unreachable!("unit cases handled above"),
        };
        self.lb_cache.lock().unwrap().insert(key, result.clone());
        result
    }

    /// Bracket of two derivative atoms from the defining bracket by
    /// sesquilinearity: `[D^d x _l D^e y] = (-l)^d (l + D)^e [x _l y]`.
    /// The central symbol brackets to zero with everything.
    fn lb_atoms(&self, x: &Atom, y: &Atom) -> LambdaPoly {
        if x.is_central() || y.is_central() {
            return LambdaPoly::zero();
        }
        let mut base = LambdaPoly::zero();
        let mut f_part = FieldExpr::zero();
        for (c, f) in self.spec.bracket_basis(x.gen, y.gen) {
            f_part.add_term(Word::gen(c), f);
        }
        base.add_term(0, f_part);
        let kap = self.kappa_scalar[(x.gen, y.gen)].clone();
        if !kap.is_zero() {
            let mut unit = FieldExpr::zero();
            unit.add_term(Word::One, kap);
            base.add_term(1, unit);
        }
        let kap11 = self.kappa_central[(x.gen, y.gen)].clone();
        if !kap11.is_zero() {
            let mut central = FieldExpr::zero();
            central.add_term(Word::Atom(Atom::central()), kap11);
            base.add_term(1, central);
        }
        // (l + D)^e: sum_i C(e, i) l^{e-i} D^i.
        let mut with_right = LambdaPoly::zero();
        for i in 0..=y.deriv {
            let c = binomial(y.deriv as i64, i);
            for (&j, f) in base.powers() {
                with_right.add_term(j + y.deriv - i, self.partial_n(f, i).scale(&c));
            }
        }
        // (-l)^d.
        with_right.shift(x.deriv).scale(&sign_pow(x.deriv))
    }

    fn np_words(&self, u: &Word, v: &Word, depth: usize) -> FieldExpr {
        assert!(depth < 200, "normal product recursion too deep");
        match (u, v) {
            (Word::One, _) => return FieldExpr::from_word(v.clone()),
            (_, Word::One) => return FieldExpr::from_word(u.clone()),
            _ => {}
        }
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.np_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let result = match (u, v) {
            (Word::Atom(x), Word::Atom(y)) => {
                if x < y {
                    FieldExpr::from_word(Word::Prod(*x, Box::new(v.clone())))
                } else if x == y {
                    if self.atom_grade(x).self_odd() {
                        // :xx: = 1/2 int_{-D}^0 [x _l x] dl.
                        let p = self.lb_words(u, v, depth + 1);
                        self.integral_minus_d_to_zero(&p)
                            .scale(&(Q::one() / Q::from_integer(2.into())))
                    } else {
                        FieldExpr::from_word(Word::Prod(*x, Box::new(v.clone())))
                    }
                } else {
                    // Quasi-commutativity:
                    // :uv: = (-1)^{u.v} :vu: + int_{-D}^0 [u _l v] dl.
                    let sign = sign_pow(self.atom_grade(x).inner(&self.atom_grade(y)));
                    let swapped = self.np_words(v, u, depth + 1).scale(&sign);
                    let corr = self.integral_minus_d_to_zero(&self.lb_words(u, v, depth + 1));
                    swapped.add(&corr)
                }
            }
            (Word::Atom(x), Word::Prod(h, t)) => {
                if x < h {
                    FieldExpr::from_word(Word::Prod(*x, Box::new(v.clone())))
                } else if x == h {
                    if self.atom_grade(x).self_odd() {
                        // :x :x t:: = ::xx: t:; the quasi-associativity
                        // corrections cancel pairwise for equal odd factors.
                        let xx = self.np_words(u, &Word::Atom(*h), depth + 1);
                        self.np(&xx, &FieldExpr::from_word((**t).clone()))
                    } else {
                        FieldExpr::from_word(Word::Prod(*x, Box::new(v.clone())))
                    }
                } else {
                    // Move x past the product via quasi-commutativity, then
                    // re-associate:
                    // :xv: = (-1)^{x.v} ( :h :t x:: + :(int_0^D h)[t _l x]:
                    //        + (-1)^{h.t} :(int_0^D t)[h _l x]: )
                    //        + int_{-D}^0 [x _l v] dl.
                    let sign_xv = sign_pow(self.atom_grade(x).inner(&self.grade_of(v)));
                    let h_word = Word::Atom(*h);
                    let h_field = FieldExpr::from_word(h_word.clone());
                    let t_field = FieldExpr::from_word((**t).clone());
                    let x_field = FieldExpr::from_word(u.clone());
                    let tx = self.np_words(t, u, depth + 1);
                    let main = self.np(&h_field, &tx);
                    let corr1 = self.np_integral_left(&h_field, &self.lb_words(t, u, depth + 1));
                    let sign_ht = sign_pow(self.atom_grade(h).inner(&self.grade_of(t)));
                    let corr2 = self
                        .np_integral_left(&t_field, &self.lb_words(&h_word, u, depth + 1))
                        .scale(&sign_ht);
                    let comm = self.integral_minus_d_to_zero(&self.lb(&x_field, &FieldExpr::from_word(v.clone())));
                    main.add(&corr1).add(&corr2).scale(&sign_xv).add(&comm)
                }
            }
            (Word::Prod(h, t), _) => {
                // Quasi-associativity, re-nesting to the right:
                // ::h t: v: = :h :t v:: + :(int_0^D h)[t _l v]:
                //             + (-1)^{h.t} :(int_0^D t)[h _l v]:
                let h_word = Word::Atom(*h);
                let h_field = FieldExpr::from_word(h_word.clone());
                let t_field = FieldExpr::from_word((**t).clone());
                let v_field = FieldExpr::from_word(v.clone());
                let tv = self.np_words(t, v, depth + 1);
                let main = self.np(&h_field, &tv);
                let corr1 = self.np_integral_left(&h_field, &self.lb(&t_field, &v_field));
                let sign_ht = sign_pow(self.atom_grade(h).inner(&self.grade_of(t)));
                let corr2 = self
                    .np_integral_left(&t_field, &self.lb(&h_field, &v_field))
                    .scale(&sign_ht);
                main.add(&corr1).add(&corr2)
            }
            _ => unreachable!("unit cases handled above"),
        };
        self.np_cache.lock().unwrap().insert(key, result.clone());
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::extension_from_forms;
    use crate::builtins::builtin;
    use crate::scalar::{qi, qr};
    use crate::grade::Grade;

    fn kappa_for(spec: &AlgebraSpec, level: &Q) -> QMatrix {
        let ext = extension_from_forms(spec).unwrap();
        QMatrix::from_fn(spec.dim(), spec.dim(), |a, b| {
            ext.components[0].omega_coeff(a, b) * level
        })
    }

    /// Both central sectors of the ten-dimensional algebra: the non-graded
    /// one at a numeric level, the (1,1)-graded one symbolic.
    fn g10_va(spec: &AlgebraSpec, k00: Q) -> VertexAlgebra<'_> {
        let ext = extension_from_forms(spec).unwrap();
        let scalar = QMatrix::from_fn(spec.dim(), spec.dim(), |a, b| {
            ext.components[0].omega_coeff(a, b) * &k00
        });
        let central = QMatrix::from_fn(spec.dim(), spec.dim(), |a, b| {
            ext.components[1].omega_coeff(a, b)
        });
        VertexAlgebra::new(spec, scalar, central)
    }

    #[test]
    fn base_bracket_with_center() {
        // [a+ _l a-] = 2R + 8k l on the eight-dimensional algebra.
        let g8 = builtin("g8").unwrap();
        let k = qi(1);
        let va = VertexAlgebra::with_scalar_center(&g8, kappa_for(&g8, &k));
        let p = va.lb(&FieldExpr::generator(4), &FieldExpr::generator(5));
        let mut f0 = FieldExpr::zero();
        f0.add_term(Word::gen(1), qi(2));
        assert_eq!(p.coeff(0), f0);
        let mut f1 = FieldExpr::zero();
        f1.add_term(Word::One, qi(8));
        assert_eq!(p.coeff(1), f1);
        assert_eq!(p.max_power(), Some(1));
    }

    #[test]
    fn unit_brackets_vanish() {
        let g8 = builtin("g8").unwrap();
        let va = VertexAlgebra::without_center(&g8);
        assert!(va.lb(&FieldExpr::unit(), &FieldExpr::generator(0)).is_zero());
        assert!(va.lb(&FieldExpr::generator(0), &FieldExpr::unit()).is_zero());
    }

    #[test]
    fn np_with_unit() {
        let g8 = builtin("g8").unwrap();
        let va = VertexAlgebra::without_center(&g8);
        let x = FieldExpr::generator(3);
        assert_eq!(va.np(&FieldExpr::unit(), &x), x);
        let dx = va.partial(&x);
        assert_eq!(va.np(&dx, &FieldExpr::unit()), dx);
    }

    #[test]
    fn sesquilinearity() {
        let g8 = builtin("g8").unwrap();
        let va = VertexAlgebra::with_scalar_center(&g8, kappa_for(&g8, &qr(1, 2)));
        let a = FieldExpr::generator(4);
        let b = FieldExpr::generator(5);
        // [Da _l b] = -l [a _l b]
        let lhs = va.lb(&va.partial(&a), &b);
        let rhs = va.lb(&a, &b).shift(1).scale(&qi(-1));
        assert_eq!(lhs, rhs);
        // [a _l Db] = (l + D)[a _l b]
        let lhs = va.lb(&a, &va.partial(&b));
        let base = va.lb(&a, &b);
        let mut rhs = base.shift(1);
        for (&j, f) in base.powers() {
            rhs.add_term(j, va.partial(f));
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn odd_square_is_derivative() {
        // :a+ a+: = 2 DL+ at any level (the central term integrates away).
        let g8 = builtin("g8").unwrap();
        let va = VertexAlgebra::with_scalar_center(&g8, kappa_for(&g8, &qi(3)));
        let sq = va.np(&FieldExpr::generator(4), &FieldExpr::generator(4));
        let mut expected = FieldExpr::zero();
        expected.add_term(Word::Atom(Atom { gen: 0, deriv: 1 }), qi(2));
        assert_eq!(sq, expected);
    }

    #[test]
    fn quasi_commutativity_for_swapped_pair() {
        // :a- a+: = -:a+ a-: + D(2R) with the central correction vanishing.
        let g8 = builtin("g8").unwrap();
        let va = VertexAlgebra::with_scalar_center(&g8, kappa_for(&g8, &qi(1)));
        let got = va.np(&FieldExpr::generator(5), &FieldExpr::generator(4));
        let mut expected = FieldExpr::zero();
        expected.add_term(
            Word::Prod(Atom::new(4), Box::new(Word::gen(5))),
            qi(-1),
        );
        expected.add_term(Word::Atom(Atom { gen: 1, deriv: 1 }), qi(2));
        assert_eq!(got, expected);
    }

    #[test]
    fn skew_symmetry_on_atom_pairs() {
        let g10 = builtin("g10").unwrap();
        let va = g10_va(&g10, qi(2));
        for a in 0..10 {
            for b in 0..10 {
                let ab = va.lb(&FieldExpr::generator(a), &FieldExpr::generator(b));
                let ba = va.lb(&FieldExpr::generator(b), &FieldExpr::generator(a));
                let skew = va.skew_of(&ab, g10.grade(a), g10.grade(b));
                assert_eq!(ba, skew, "skew symmetry fails for ({a},{b})");
            }
        }
    }

    #[test]
    fn skew_symmetry_with_product_words() {
        // Cross-validates the companion (left-product) formula against the
        // Wick (right-product) formula through skew symmetry.
        let g10 = builtin("g10").unwrap();
        let va = g10_va(&g10, qi(1));
        let quads = [
            va.np(&FieldExpr::generator(0), &FieldExpr::generator(2)), // :L+ L-:
            va.np(&FieldExpr::generator(6), &FieldExpr::generator(9)), // :a+ at-:
            va.np(&FieldExpr::generator(1), &FieldExpr::generator(4)), // :R Rt:
            va.np(&FieldExpr::generator(7), &FieldExpr::generator(8)), // :a- at+:
        ];
        let quad_grades = [
            Grade::pair(0, 0),
            Grade::pair(1, 1),
            Grade::pair(1, 1),
            Grade::pair(1, 1),
        ];
        for a in 0..10 {
            let xa = FieldExpr::generator(a);
            let ga = *g10.grade(a);
            for (q, gq) in quads.iter().zip(&quad_grades) {
                let xq = va.lb(&xa, q);
                let qx = va.lb(q, &xa);
                assert_eq!(qx, va.skew_of(&xq, &ga, gq), "gen {a} vs quad");
            }
        }
        for (q1, g1) in quads.iter().zip(&quad_grades) {
            for (q2, g2) in quads.iter().zip(&quad_grades) {
                let p12 = va.lb(q1, q2);
                let p21 = va.lb(q2, q1);
                assert_eq!(p21, va.skew_of(&p12, g1, g2), "quad vs quad");
            }
        }
    }

    #[test]
    fn conformal_jacobi_on_generators() {
        // [a _l [b _m c]] - (-1)^{a.b} [b _m [a _l c]] = [[a _l b] _{l+m} c],
        // checked as an identity of bivariate polynomials by expanding the
        // outer substitution at the level of raw coefficients.
        let g10 = builtin("g10").unwrap();
        let va = g10_va(&g10, qi(2));
        // Bivariate polynomial in (l, m) with field coefficients, encoded as
        // a map (l-power, m-power) -> FieldExpr.
        type Bi = std::collections::BTreeMap<(u32, u32), FieldExpr>;
        fn add_bi(bi: &mut Bi, k: (u32, u32), f: FieldExpr) {
            if f.is_zero() {
                return;
            }
            let e = bi.entry(k).or_insert_with(FieldExpr::zero);
            *e = e.add(&f);
            if e.is_zero() {
                bi.remove(&k);
            }
        }
        let triples = [(6usize, 9usize, 1usize), (1, 4, 6), (0, 2, 7), (4, 6, 9)];
        for &(a, b, c) in &triples {
            let (fa, fb, fc) = (
                FieldExpr::generator(a),
                FieldExpr::generator(b),
                FieldExpr::generator(c),
            );
            let mut lhs: Bi = Bi::new();
            // [a _l [b _m c]]: l-bracket powers are l, inner powers are m.
            for (&jm, fm) in va.lb(&fb, &fc).powers() {
                for (&jl, fl) in va.lb(&fa, fm).powers() {
                    add_bi(&mut lhs, (jl, jm), fl.clone());
                }
            }
            let sign = sign_pow(g10.grade(a).inner(g10.grade(b)));
            for (&jl, fl) in va.lb(&fa, &fc).powers() {
                for (&jm, fm) in va.lb(&fb, fl).powers() {
                    add_bi(&mut lhs, (jl, jm), fm.scale(&-sign.clone()));
                }
            }
            // [[a _l b] _{l+m} c]: expand (l+m)^j binomially.
            let mut rhs: Bi = Bi::new();
            for (&jl, fl) in va.lb(&fa, &fb).powers() {
                for (&jn, fn_) in va.lb(fl, &fc).powers() {
                    for i in 0..=jn {
                        let coeff = binomial(jn as i64, i);
                        add_bi(&mut rhs, (jl + jn - i, i), fn_.scale(&coeff));
                    }
                }
            }
            assert_eq!(lhs, rhs, "conformal Jacobi fails on ({a},{b},{c})");
        }
    }

    #[test]
    fn wick_bracket_closes_on_quadratics() {
        // [R _l :a+ a-:] stays quadratic plus lower terms and satisfies
        // sesquilinearity in the first slot.
        let g8 = builtin("g8").unwrap();
        let va = VertexAlgebra::with_scalar_center(&g8, kappa_for(&g8, &qi(1)));
        let quad = va.np(&FieldExpr::generator(4), &FieldExpr::generator(5));
        let p = va.lb(&FieldExpr::generator(1), &quad);
        assert!(!p.is_zero());
        let dp = va.lb(&va.partial(&FieldExpr::generator(1)), &quad);
        assert_eq!(dp, p.shift(1).scale(&qi(-1)));
    }
}
