//! Mode-cutoff oracle for the lambda-bracket engine.
//!
//! This file realizes the current algebra on a formal vacuum module using
//! nothing but mode operators and the defining bracket relations: operators
//! `X^a_n` act on normally ordered monomials, annihilate the vacuum for
//! `n >= 0`, and reorder through the graded commutation relations with
//! their central terms. Normal ordered products are realized through the
//! creation/annihilation split of the currents, truncated to a finite mode
//! window. Everything the engine computes algebraically is checked here
//! against explicit mode arithmetic.
//!
//! The `(1,1)`-graded central element stays a formal variable with its full
//! grade: monomials carry a power of it, and every crossing against an odd
//! operator costs a sign.

use gradedlie::affine::extension_from_forms;
use gradedlie::algebra::AlgebraSpec;
use gradedlie::builtins::builtin;
use gradedlie::conformal::{sugawara_system, CurrentAlgebra, FieldExpr, Level, Word};
use gradedlie::forms::BilinearForm;
use gradedlie::grade::Grade;
use gradedlie::linalg::QMatrix;
use gradedlie::scalar::{factorial, qi, qr, Q};
use num::{One, Zero};
use std::collections::BTreeMap;

/// A normally ordered monomial: central power, then operators sorted by
/// `(mode, generator)`, applied right to left to the vacuum.
type Monomial = (u32, Vec<(usize, i64)>);

#[derive(Clone, Debug, PartialEq, Default)]
struct State {
    terms: BTreeMap<Monomial, Q>,
}

impl State {
    fn vacuum() -> State {
        let mut terms = BTreeMap::new();
        terms.insert((0, Vec::new()), Q::one());
        State { terms }
    }

    fn zero() -> State {
        State::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, q: Q) {
        if q.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += q;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn add(&self, other: &State) -> State {
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.add_term(m.clone(), q.clone());
        }
        out
    }

    fn scale(&self, s: &Q) -> State {
        if s.is_zero() {
            return State::zero();
        }
        State {
            terms: self.terms.iter().map(|(m, q)| (m.clone(), q * s)).collect(),
        }
    }

    /// Evaluates the central variable with the left-commitment convention.
    fn evaluate_central(&self, fock: &Fock, value: &Q) -> State {
        let twist = fock.twist;
        let mut out = State::zero();
        for ((p, ops), q) in &self.terms {
            let mut coeff = q.clone();
            if p % 2 == 1 {
                let mut g = Grade::zero(twist.rank());
                for &(a, _) in ops {
                    g = g.add(fock.spec.grade(a));
                }
                if g.inner(&twist) == 1 {
                    coeff = -coeff;
                }
            }
            for _ in 0..*p {
                coeff *= value;
            }
            out.add_term((0, ops.clone()), coeff);
        }
        out
    }
}

struct Fock<'a> {
    spec: &'a AlgebraSpec,
    kappa_scalar: QMatrix,
    kappa_central: QMatrix,
    twist: Grade,
}

impl<'a> Fock<'a> {
    fn new(ctx: &'a CurrentAlgebra<'a>) -> Self {
        Fock {
            spec: ctx.spec,
            kappa_scalar: ctx.va.kappa_scalar.clone(),
            kappa_central: ctx.va.kappa_central.clone(),
            twist: Grade::new(&vec![1; ctx.spec.rank]).unwrap(),
        }
    }

    fn key(op: &(usize, i64)) -> (i64, usize) {
        (op.1, op.0)
    }

    /// Applies `X^a_n` to a state.
    fn apply(&self, a: usize, n: i64, state: &State) -> State {
        let mut out = State::zero();
        for ((p, ops), q) in &state.terms {
            let mut with_new = Vec::with_capacity(ops.len() + 1);
            with_new.push((a, n));
            with_new.extend_from_slice(ops);
            self.normalize(*p, with_new, q.clone(), 0, &mut out);
        }
        out
    }

    /// Restores normal order for the operator at `pos`, bubbling it right.
    fn normalize(&self, p: u32, mut ops: Vec<(usize, i64)>, coeff: Q, pos: usize, out: &mut State) {
        if coeff.is_zero() {
            return;
        }
        let i = pos;
        loop {
            if i + 1 >= ops.len() {
                break;
            }
            let cur = ops[i];
            let next = ops[i + 1];
            if Self::key(&cur) < Self::key(&next) {
                break;
            }
            if Self::key(&cur) == Self::key(&next) {
                // Equal operators: odd self-pairing squares rewrite through
                // the self-bracket, even ones are already normal.
                if self.spec.grade(cur.0).self_odd() {
                    let half = qr(1, 2);
                    for (c, f) in self.spec.bracket_basis(cur.0, cur.0) {
                        let mut shorter = ops.clone();
                        shorter[i] = (c, cur.1 + next.1);
                        shorter.remove(i + 1);
                        self.normalize(p, shorter, &coeff * &f * &half, i.saturating_sub(1), out);
                    }
                    // Central terms of [[X_m, X_m]] vanish: m delta_{2m,0}.
                    return;
                }
                break;
            }
            // Swap with the graded sign, spawning bracket terms.
            let sign = if self.spec.grade(cur.0).inner(self.spec.grade(next.0)) == 0 {
                Q::one()
            } else {
                -Q::one()
            };
            for (c, f) in self.spec.bracket_basis(cur.0, next.0) {
                let mut shorter = ops.clone();
                shorter[i] = (c, cur.1 + next.1);
                shorter.remove(i + 1);
                self.normalize(p, shorter, &coeff * &f, i.saturating_sub(1), out);
            }
            if cur.1 + next.1 == 0 {
                let m = Q::from_integer(cur.1.into());
                let ks = &self.kappa_scalar[(cur.0, next.0)];
                if !ks.is_zero() {
                    let mut shorter = ops.clone();
                    shorter.remove(i + 1);
                    shorter.remove(i);
                    self.normalize(p, shorter, &coeff * ks * &m, i.saturating_sub(1), out);
                }
                let kc = &self.kappa_central[(cur.0, next.0)];
                if !kc.is_zero() {
                    // The new central factor crosses everything to its right
                    // on the way to the vacuum.
                    let mut crossing = Q::one();
                    for op in &ops[i + 2..] {
                        if self.spec.grade(op.0).inner(&self.twist) == 1 {
                            crossing = -crossing;
                        }
                    }
                    let mut shorter = ops.clone();
                    shorter.remove(i + 1);
                    shorter.remove(i);
                    self.normalize(
                        p + 1,
                        shorter,
                        &coeff * kc * &m * &crossing,
                        i.saturating_sub(1),
                        out,
                    );
                }
            }
            ops.swap(i, i + 1);
            // Restart the scan at the swapped position; the moved operator
            // may now be out of order with its new right neighbour.
            return self.normalize(p, ops, coeff * sign, i + 1, out);
        }
        // Fully ordered: the innermost operator annihilates the vacuum when
        // its mode is non-negative.
        if let Some(last) = ops.last() {
            if last.1 >= 0 {
                return;
            }
        }
        out.add_term((p, ops), coeff);
    }

    /// The state of a canonical word, built from the definition: atoms are
    /// `d! X^a_{-d-1}` applied to the tail's state, central factors add to
    /// the central power with their crossing sign.
    fn word_state(&self, w: &Word) -> State {
        match w {
            Word::One => State::vacuum(),
            Word::Atom(a) if a.is_central() => {
                let mut s = State::zero();
                s.add_term((1, Vec::new()), Q::one());
                s
            }
            Word::Atom(a) => self.apply(a.gen, -1 - a.deriv as i64, &State::vacuum()).scale(&factorial(a.deriv)),
            Word::Prod(head, tail) => {
                let tail_state = self.word_state(tail);
                if head.is_central() {
                    let mut out = State::zero();
                    for ((p, ops), q) in &tail_state.terms {
                        // Move the new central factor from the far left down
                        // to the vacuum, crossing every operator.
                        let mut crossing = Q::one();
                        for op in ops {
                            if self.spec.grade(op.0).inner(&self.twist) == 1 {
                                crossing = -crossing;
                            }
                        }
                        out.add_term((p + 1, ops.clone()), q * crossing);
                    }
                    out
                } else {
                    self.apply(head.gen, -1 - head.deriv as i64, &tail_state)
                        .scale(&factorial(head.deriv))
                }
            }
        }
    }

    fn field_state(&self, f: &FieldExpr) -> State {
        let mut out = State::zero();
        for (w, q) in f.terms() {
            out = out.add(&self.word_state(w).scale(q));
        }
        out
    }

    /// Mode operator of a normal ordered current bilinear via the
    /// creation/annihilation split, truncated to `|t| <= cutoff`:
    /// `(:X^a X^b:)_(s) = sum_{t<=-1} X^a_(t) X^b_(s-1-t)
    ///                    + eps(a,b) sum_{t>=0} X^b_(s-1-t) X^a_(t)`.
    fn bilinear_mode(
        &self,
        a: usize,
        b: usize,
        s: i64,
        cutoff: i64,
        state: &State,
    ) -> State {
        let eps = if self.spec.grade(a).inner(self.spec.grade(b)) == 0 {
            Q::one()
        } else {
            -Q::one()
        };
        let mut out = State::zero();
        for t in -cutoff..=-1 {
            let inner = self.apply(b, s - 1 - t, state);
            if !inner.is_zero() {
                out = out.add(&self.apply(a, t, &inner));
            }
        }
        for t in 0..=cutoff {
            let inner = self.apply(a, t, state);
            if !inner.is_zero() {
                out = out.add(&self.apply(b, s - 1 - t, &inner).scale(&eps));
            }
        }
        out
    }

    /// Sugawara mode operator `L_(s)` from the split definition, contracted
    /// with the inverse of a form and scaled by `1/(2 k00 + 1)`.
    fn sugawara_mode(
        &self,
        form: &BilinearForm,
        denom: &Q,
        s: i64,
        cutoff: i64,
        state: &State,
    ) -> State {
        let inv = form.inverse.as_ref().expect("inverted form");
        let r = self.spec.dim();
        let mut out = State::zero();
        for a in 0..r {
            for b in 0..r {
                let w = &inv[(a, b)];
                if w.is_zero() {
                    continue;
                }
                out = out.add(&self.bilinear_mode(a, b, s, cutoff, state).scale(w));
            }
        }
        out.scale(&(Q::one() / denom))
    }
}

fn g10_ctx(k00: Q, k11: Q) -> (AlgebraSpec, Level) {
    let g10 = builtin("g10").unwrap();
    let level = Level::new(k00, Some(k11)).unwrap();
    (g10, level)
}

#[test]
fn normal_products_match_mode_arithmetic() {
    let (g10, level) = g10_ctx(qi(1), qi(1));
    let ext = extension_from_forms(&g10).unwrap();
    let ctx = CurrentAlgebra::with_extension(&g10, ext, level).unwrap();
    let fock = Fock::new(&ctx);
    // :X^a X^b: for every generator pair: the engine canonicalizes through
    // quasi-commutativity; the oracle applies X^a_{-1} to the state of X^b.
    for a in 0..g10.dim() {
        for b in 0..g10.dim() {
            let engine = ctx.va.np(&FieldExpr::generator(a), &FieldExpr::generator(b));
            let via_engine_words = fock.field_state(&engine);
            let direct = fock.apply(a, -1, &fock.word_state(&Word::gen(b)));
            assert_eq!(via_engine_words, direct, "np({a},{b})");
        }
    }
}

#[test]
fn wick_products_match_mode_arithmetic() {
    let (g10, level) = g10_ctx(qi(2), qr(1, 2));
    let ext = extension_from_forms(&g10).unwrap();
    let ctx = CurrentAlgebra::with_extension(&g10, ext, level).unwrap();
    let fock = Fock::new(&ctx);
    // j-th products of a generator with a quadratic: engine Wick formula
    // against direct application of X^a_j.
    let quads = [
        ctx.va.np(&FieldExpr::generator(6), &FieldExpr::generator(9)),
        ctx.va.np(&FieldExpr::generator(1), &FieldExpr::generator(4)),
        ctx.va.np(&FieldExpr::generator(7), &FieldExpr::generator(8)),
        ctx.va.np(&FieldExpr::generator(0), &FieldExpr::generator(2)),
    ];
    for quad in &quads {
        let quad_state = fock.field_state(quad);
        for a in 0..g10.dim() {
            let bracket = ctx.va.lb(&FieldExpr::generator(a), quad);
            for j in 0..4u32 {
                let engine = fock.field_state(&bracket.nth_product(j));
                let direct = fock.apply(a, j as i64, &quad_state);
                assert_eq!(engine, direct, "generator {a}, product ({j})");
            }
        }
    }
}

#[test]
fn sugawara_fields_match_split_definition() {
    let (g10, level) = g10_ctx(qi(1), qi(1));
    let ext = extension_from_forms(&g10).unwrap();
    let ctx = CurrentAlgebra::with_extension(&g10, ext, level).unwrap();
    let sys = sugawara_system(&ctx).unwrap();
    let fock = Fock::new(&ctx);
    let denom = ctx.level.denominator();
    // The state of the field is L_(-1)|0> (physics mode L_{-2}).
    let l00_direct = fock.sugawara_mode(&sys.killing, &denom, -1, 8, &State::vacuum());
    assert_eq!(fock.field_state(&sys.l00), l00_direct);
    let eta = sys.eta.as_ref().unwrap();
    let l11_direct = fock.sugawara_mode(eta, &denom, -1, 8, &State::vacuum());
    assert_eq!(fock.field_state(sys.l11.as_ref().unwrap()), l11_direct);
}

#[test]
fn central_charges_from_mode_arithmetic() {
    // [L_2, L_{-2}] |0> = (c/2) |0> for the Virasoro modes L_m = L_(m+1):
    // the quartic-pole coefficient extracted with no lambda calculus at all.
    for (k00, k11) in [(qi(1), qi(0)), (qi(1), qi(1)), (qi(2), qr(1, 2))] {
        let (g10, level) = g10_ctx(k00.clone(), k11.clone());
        let ext = extension_from_forms(&g10).unwrap();
        let ctx = CurrentAlgebra::with_extension(&g10, ext, level).unwrap();
        let sys = sugawara_system(&ctx).unwrap();
        let fock = Fock::new(&ctx);
        let denom = ctx.level.denominator();
        let cutoff = 8;
        // L00_{-2}|0> = L00_(-1)|0>, then L00_2 = L00_(3) of that.
        let created = fock.sugawara_mode(&sys.killing, &denom, -1, cutoff, &State::vacuum());
        let c00_state = fock
            .sugawara_mode(&sys.killing, &denom, 3, cutoff, &created)
            .evaluate_central(&fock, &k11);
        // The result must be a pure multiple of the vacuum: c00/2.
        let mut vac = Q::zero();
        for ((p, ops), q) in &c00_state.terms {
            assert!(ops.is_empty() && *p == 0, "non-vacuum remainder in [L_2, L_-2]|0>");
            vac = q.clone();
        }
        let c00_fock = vac * qi(2);
        // Mixed pair for c11.
        let eta = sys.eta.as_ref().unwrap();
        let created11 = fock.sugawara_mode(eta, &denom, -1, cutoff, &State::vacuum());
        let c11_state = fock
            .sugawara_mode(&sys.killing, &denom, 3, cutoff, &created11)
            .evaluate_central(&fock, &k11);
        let mut vac11 = Q::zero();
        for ((p, ops), q) in &c11_state.terms {
            assert!(ops.is_empty() && *p == 0);
            vac11 = q.clone();
        }
        let c11_fock = vac11 * qi(2);
        // Engine extraction must agree exactly.
        let report = gradedlie::conformal::virasoro_check(&ctx, &sys).unwrap();
        assert_eq!(report.c00.clone().unwrap(), c00_fock, "c00 at ({k00},{k11})");
        assert_eq!(report.c11.clone().unwrap(), c11_fock, "c11 at ({k00},{k11})");
    }
}

#[test]
fn witt_central_term_vanishes_in_modes() {
    let g8 = builtin("g8").unwrap();
    let level = Level::new(qi(1), None).unwrap();
    let ext = extension_from_forms(&g8).unwrap();
    let ctx = CurrentAlgebra::with_extension(&g8, ext, level).unwrap();
    let sys = sugawara_system(&ctx).unwrap();
    let fock = Fock::new(&ctx);
    let denom = ctx.level.denominator();
    let created = fock.sugawara_mode(&sys.killing, &denom, -1, 8, &State::vacuum());
    let commuted = fock.sugawara_mode(&sys.killing, &denom, 3, 8, &created);
    assert!(commuted.is_zero(), "Witt realization has zero central term");
}
