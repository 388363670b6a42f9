//! The Sugawara construction and the checks extracting the graded Virasoro
//! structure from it.

use super::field::{FieldExpr, Word};
use super::lambda::{LambdaPoly, VertexAlgebra};
use crate::affine::{extension_from_forms, AffineError, CentralExtension};
use crate::algebra::AlgebraSpec;
use crate::forms::{form_from_m, invert_form, killing_form, BilinearForm, FormError};
use crate::grade::Grade;
use crate::linalg::QMatrix;
use crate::matrix::commutant;
use crate::scalar::{sign_pow, Q};
use num::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConformalError {
    #[error("invalid level: 2*k00 + 1 must be nonzero")]
    LevelDenominator,
    #[error("level supplies k11 but the algebra has no (1,1) central element")]
    UnexpectedK11,
    #[error("the contraction form is degenerate")]
    Degenerate,
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Central elements evaluated as rational scalars: `k00` for the non-graded
/// center, `k11` only when the algebra has a `(1,1)` central element.
#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub k00: Q,
    pub k11: Option<Q>,
}

impl Level {
    pub fn new(k00: Q, k11: Option<Q>) -> Result<Self, ConformalError> {
        let level = Level { k00, k11 };
        if level.denominator().is_zero() {
            return Err(ConformalError::LevelDenominator);
        }
        Ok(level)
    }

    /// `2 k00 + 1`, the Sugawara denominator.
    pub fn denominator(&self) -> Q {
        Q::from_integer(2.into()) * &self.k00 + Q::one()
    }

    /// `lambda_11 = 2 k11 / (2 k00 + 1)`; zero without a `(1,1)` center.
    pub fn lambda11(&self) -> Q {
        match &self.k11 {
            Some(k11) => Q::from_integer(2.into()) * k11 / self.denominator(),
            None => Q::zero(),
        }
    }
}

/// A current algebra at a fixed level, ready for lambda-bracket work.
pub struct CurrentAlgebra<'a> {
    pub spec: &'a AlgebraSpec,
    pub extension: CentralExtension,
    pub level: Level,
    pub va: VertexAlgebra<'a>,
}

impl<'a> CurrentAlgebra<'a> {
    /// Builds the algebra with its classified central term, evaluating the
    /// central elements at the level.
    pub fn new(spec: &'a AlgebraSpec, level: Level) -> Result<Self, ConformalError> {
        let extension = extension_from_forms(spec)?;
        Self::with_extension(spec, extension, level)
    }

    pub fn with_extension(
        spec: &'a AlgebraSpec,
        extension: CentralExtension,
        level: Level,
    ) -> Result<Self, ConformalError> {
        let has_k11_component = extension.component_index("w11").is_some();
        if level.k11.is_some() && !has_k11_component {
            return Err(ConformalError::UnexpectedK11);
        }
        let r = spec.dim();
        // The non-graded central element evaluates to its level scalar right
        // away (its grade is zero, so no sign rule sees it). The
        // (1,1)-graded element stays a symbolic central field through the
        // whole calculus and is only evaluated in reports; collapsing it to
        // a number here would break the graded sign bookkeeping.
        let mut kappa_scalar = QMatrix::zero(r, r);
        let mut kappa_central = QMatrix::zero(r, r);
        for comp in &extension.components {
            match comp.name.as_str() {
                "w" | "w00" => {
                    if level.k00.is_zero() {
                        continue;
                    }
                    for a in 0..r {
                        for b in 0..r {
                            let w = comp.omega_coeff(a, b);
                            if !w.is_zero() {
                                kappa_scalar[(a, b)] += w * &level.k00;
                            }
                        }
                    }
                }
                "w11" => {
                    for a in 0..r {
                        for b in 0..r {
                            let w = comp.omega_coeff(a, b);
                            if !w.is_zero() {
                                kappa_central[(a, b)] += w;
                            }
                        }
                    }
                }
                other => {
                    return Err(ConformalError::Affine(AffineError::Algebra(
                        crate::algebra::AlgebraError::Other(format!(
                            "no level value for central component {other:?}"
                        )),
                    )))
                }
            }
        }
        Ok(CurrentAlgebra {
            spec,
            extension,
            level,
            va: VertexAlgebra::new(spec, kappa_scalar, kappa_central),
        })
    }

    /// The symbolic central field as an expression.
    pub fn central_field(&self) -> FieldExpr {
        FieldExpr::from_word(Word::Atom(super::field::Atom::central()))
    }

    /// Evaluates the symbolic central element at the level's `k11`.
    pub fn evaluate(&self, f: &FieldExpr) -> FieldExpr {
        f.evaluate_central(self.spec, &self.level.k11.clone().unwrap_or_else(Q::zero))
    }

    /// Lambda bracket with the central element evaluated at the level.
    pub fn lambda_bracket(&self, a: &FieldExpr, b: &FieldExpr) -> LambdaPoly {
        self.evaluate_poly(&self.va.lb(a, b))
    }

    /// Evaluates a whole lambda polynomial.
    pub fn evaluate_poly(&self, p: &LambdaPoly) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (&j, f) in p.powers() {
            out.add_term(j, self.evaluate(f));
        }
        out
    }

    /// The Sugawara field of an invariant form: the inverse-weighted sum of
    /// normal ordered current bilinears, scaled by `1/(2 k00 + 1)`.
    pub fn sugawara(&self, form: &BilinearForm) -> Result<FieldExpr, ConformalError> {
        if form.matrix.is_zero() {
            return Ok(FieldExpr::zero());
        }
        let inv = form.inverse.as_ref().ok_or(ConformalError::Degenerate)?;
        let denom = self.level.denominator();
        if denom.is_zero() {
            return Err(ConformalError::LevelDenominator);
        }
        let r = self.spec.dim();
        let mut l = FieldExpr::zero();
        for a in 0..r {
            for b in 0..r {
                let w = inv[(a, b)].clone();
                if w.is_zero() {
                    continue;
                }
                let prod = self.va.np(&FieldExpr::generator(a), &FieldExpr::generator(b));
                l = l.add(&prod.scale(&w));
            }
        }
        Ok(l.scale(&(Q::one() / denom)))
    }
}

/// The Sugawara fields of an algebra: the non-graded one from the Killing
/// form, and the `(1,1)`-graded one from the commutant form when present.
pub struct SugawaraSystem {
    pub l00: FieldExpr,
    pub l11: Option<FieldExpr>,
    pub killing: BilinearForm,
    pub eta: Option<BilinearForm>,
}

pub fn sugawara_system(ctx: &CurrentAlgebra) -> Result<SugawaraSystem, ConformalError> {
    let killing = invert_form(&killing_form(ctx.spec)?)?;
    let l00 = ctx.sugawara(&killing)?;
    let twist = Grade::new(&vec![1; ctx.spec.rank])
        .map_err(crate::algebra::AlgebraError::Other)
        .map_err(AffineError::Algebra)?;
    let tilde = commutant(ctx.spec, twist);
    let (l11, eta) = if let [m] = tilde.as_slice() {
        let eta = invert_form(&form_from_m(ctx.spec, m)?)?;
        (Some(ctx.sugawara(&eta)?), Some(eta))
    } else {
        (None, None)
    };
    Ok(SugawaraSystem {
        l00,
        l11,
        killing,
        eta,
    })
}

/// Tilde involution on the basis: each generator's `(1,1)`-shifted partner
/// plus the sign `epsilon` entering the current-Sugawara OPE table.
#[derive(Clone, Debug)]
pub struct TildeTable {
    pub partner: Vec<usize>,
    pub epsilon: Vec<i8>,
}

/// Builds the involution from generator names (`R <-> Rt`, `a+ <-> at+`,
/// ...); available only when every generator has its partner. The lowering
/// fermions `a-`, `at-` carry `epsilon = -1`.
pub fn tilde_table(spec: &AlgebraSpec) -> Option<TildeTable> {
    let toggle = |name: &str| -> String {
        let (head, rest) = name.split_at(1);
        if let Some(stripped) = rest.strip_prefix('t') {
            format!("{head}{stripped}")
        } else {
            format!("{head}t{rest}")
        }
    };
    let mut partner = Vec::with_capacity(spec.dim());
    for g in spec.generators() {
        partner.push(spec.gen_index(&toggle(&g.name))?);
    }
    let epsilon = spec
        .generators()
        .iter()
        .map(|g| if g.name == "a-" || g.name == "at-" { -1 } else { 1 })
        .collect();
    Some(TildeTable { partner, epsilon })
}

/// One mismatching entry of the current-Sugawara OPE table.
#[derive(Clone, Debug)]
pub struct XlOpeDiff {
    pub generator: usize,
    pub l_field: String,
    pub expected: LambdaPoly,
    pub computed: LambdaPoly,
}

/// Checks `[X^a _l L]` for every generator against the expected table:
/// `l (X^a + lambda11 eps(a) tilde(X^a))` for the non-graded field, and
/// `(-1)^{a.(1,1)} l (eps(a) tilde(X^a) + lambda11 X^a)` for the graded one.
pub fn xl_ope_check(ctx: &CurrentAlgebra, sys: &SugawaraSystem) -> Vec<XlOpeDiff> {
    let lambda11 = ctx.level.lambda11();
    let tilde = tilde_table(ctx.spec);
    let twist = Grade::new(&vec![1; ctx.spec.rank]).expect("twist grade");
    let mut diffs = Vec::new();
    for a in 0..ctx.spec.dim() {
        let xa = FieldExpr::generator(a);
        // Expected [X^a _l L00] = l * (X^a + lambda11 eps(a) tilde(X^a)).
        let mut lin = xa.clone();
        if let (Some(t), false) = (&tilde, lambda11.is_zero()) {
            let eps = Q::from_integer(t.epsilon[a].into());
            lin = lin.add(&FieldExpr::generator(t.partner[a]).scale(&(&lambda11 * eps)));
        }
        let mut expected = LambdaPoly::zero();
        expected.add_term(1, lin);
        let computed = ctx.evaluate_poly(&ctx.va.lb(&xa, &sys.l00));
        if computed != expected {
            diffs.push(XlOpeDiff {
                generator: a,
                l_field: "L00".into(),
                expected,
                computed,
            });
        }
        if let (Some(l11), Some(t)) = (&sys.l11, &tilde) {
            let eps = Q::from_integer(t.epsilon[a].into());
            let sign = sign_pow(ctx.spec.grade(a).inner(&twist));
            let mut lin = FieldExpr::generator(t.partner[a]).scale(&eps);
            lin = lin.add(&xa.scale(&lambda11));
            let mut expected = LambdaPoly::zero();
            expected.add_term(1, lin.scale(&sign));
            let computed = ctx.evaluate_poly(&ctx.va.lb(&xa, l11));
            if computed != expected {
                diffs.push(XlOpeDiff {
                    generator: a,
                    l_field: "L11".into(),
                    expected,
                    computed,
                });
            }
        }
    }
    diffs
}

/// Result of checking one `[L^x _l L^y]` bracket against the expected
/// `(D + 2 l)(combination) + (c/12) l^3` shape.
#[derive(Clone, Debug)]
pub struct VirasoroPair {
    pub left: String,
    pub right: String,
    pub structure_ok: bool,
    /// `computed - (D + 2l)(combination)` minus its central part; empty when
    /// the bracket has the expected shape.
    pub residual: LambdaPoly,
    pub c_extracted: Option<Q>,
}

#[derive(Clone, Debug)]
pub struct VirasoroReport {
    pub pairs: Vec<VirasoroPair>,
    pub c00: Option<Q>,
    pub c11: Option<Q>,
    /// Closed-formula values at this level. For a single-field system the
    /// expected central charge is `2 k00/(2 k00 + 1)` times the full
    /// contraction of the Killing form with its inverse.
    pub c00_formula: Q,
    pub c11_formula: Q,
}

fn d_plus_2lambda(va: &VertexAlgebra, f: &FieldExpr) -> LambdaPoly {
    let mut p = LambdaPoly::zero();
    p.add_term(0, va.partial(f));
    p.add_term(1, f.scale(&Q::from_integer(2.into())));
    p
}

fn check_pair(
    ctx: &CurrentAlgebra,
    left: (&str, &FieldExpr),
    right: (&str, &FieldExpr),
    combination: &FieldExpr,
) -> VirasoroPair {
    let computed = ctx.evaluate_poly(&ctx.va.lb(left.1, right.1));
    let expected_regular = d_plus_2lambda(&ctx.va, combination);
    let mut diff = computed.sub(&expected_regular);
    // The remainder must be a pure l^3 unit term.
    let unit_coeff = diff.coeff(3).coeff(&Word::One);
    if !unit_coeff.is_zero() {
        let mut unit_part = FieldExpr::zero();
        unit_part.add_term(Word::One, unit_coeff.clone());
        let mut unit_poly = LambdaPoly::zero();
        unit_poly.add_term(3, unit_part);
        diff = diff.sub(&unit_poly);
    }
    let structure_ok = diff.is_zero();
    let c_extracted = structure_ok.then(|| unit_coeff * Q::from_integer(12.into()));
    VirasoroPair {
        left: left.0.into(),
        right: right.0.into(),
        structure_ok,
        residual: diff,
        c_extracted,
    }
}

/// Computes all `[L^x _l L^y]` brackets, asserts the graded Virasoro shape,
/// and extracts the central charges.
pub fn virasoro_check(ctx: &CurrentAlgebra, sys: &SugawaraSystem) -> Result<VirasoroReport, ConformalError> {
    let lambda11 = ctx.level.lambda11();
    let denom = ctx.level.denominator();
    let ratio = Q::from_integer(2.into()) * &ctx.level.k00 / &denom;
    let mut pairs = Vec::new();
    let (c00, c11, c00_formula, c11_formula);
    match &sys.l11 {
        None => {
            // Single-field system: [L _l L] = (D + 2l) L + (c/12) l^3 with
            // c = (2 k00/(2 k00 + 1)) * sum g_{ab} g^{ab}.
            let pair = check_pair(ctx, ("L", &sys.l00), ("L", &sys.l00), &sys.l00);
            c00 = pair.c_extracted.clone();
            c11 = None;
            c00_formula = &ratio * sys.killing.full_contraction()?;
            c11_formula = Q::zero();
            pairs.push(pair);
        }
        Some(l11) => {
            let diag_combo = sys.l00.add(&l11.scale(&lambda11));
            let mixed_combo = l11.add(&sys.l00.scale(&lambda11));
            let p0000 = check_pair(ctx, ("L00", &sys.l00), ("L00", &sys.l00), &diag_combo);
            let p1111 = check_pair(ctx, ("L11", l11), ("L11", l11), &diag_combo);
            let p0011 = check_pair(ctx, ("L00", &sys.l00), ("L11", l11), &mixed_combo);
            let p1100 = check_pair(ctx, ("L11", l11), ("L00", &sys.l00), &mixed_combo);
            c00 = p0000.c_extracted.clone();
            c11 = p0011.c_extracted.clone();
            c00_formula =
                (&ratio + &lambda11 * &lambda11) / Q::from_integer(3.into());
            c11_formula = &lambda11 / Q::from_integer(3.into()) * (&ratio + Q::one());
            pairs.extend([p0000, p1111, p0011, p1100]);
        }
    }
    Ok(VirasoroReport {
        pairs,
        c00,
        c11,
        c00_formula,
        c11_formula,
    })
}
