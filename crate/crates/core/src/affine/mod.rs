//! Loop algebras and their graded central extensions.
//!
//! A central term is the data of finitely many central elements, each with a
//! coefficient matrix `kappa^{ab}` and a grade-dependent sign table `s(a)`,
//! encoding `omega(X^a_m, X^b_n) = s(a) kappa^{ab} m delta_{m+n,0}`.

mod brute;
mod cocycle;
mod derivations;

pub use brute::{brute_force_h2, BruteForceReport};
pub use cocycle::{
    class_as_form, classify_central_extensions, cocycle_check, CentralClassification,
    CentralTermClass, CocycleViolation,
};
pub use derivations::{check_derivation_leibniz, derivation_search, DerivationMap, LeibnizViolation};

use crate::algebra::{AlgebraError, AlgebraSpec};
use crate::forms::{form_from_m, killing_form, FormError};
use crate::grade::Grade;
use crate::linalg::QMatrix;
use crate::matrix::commutant;
use crate::scalar::{sign_pow, Q};
use num::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AffineError {
    #[error("no distinguished grading generator is declared for this algebra")]
    NoGradingGenerator,
    #[error("the adjoint action of the grading generator is not diagonal")]
    NonDiagonalGrading,
    #[error("window must be at least 2, got {0}")]
    WindowTooSmall(i64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// A loop generator `X^a_m`. Modes carry no grade.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LoopGenerator {
    pub gen: usize,
    pub mode: i64,
}

/// One central element of an extension.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralComponent {
    pub name: String,
    pub degree: Grade,
    /// Sign table `s(a)`, one entry per generator.
    pub sign: Vec<i8>,
    /// Coefficient matrix `kappa^{ab}`.
    pub kappa: QMatrix,
}

impl CentralComponent {
    /// `s(a) kappa^{ab}`, the raw cocycle coefficient for the ordered pair.
    pub fn omega_coeff(&self, a: usize, b: usize) -> Q {
        let s = Q::from_integer(self.sign[a].into());
        &self.kappa[(a, b)] * s
    }

    /// Builds the sign table `s(a) = (-1)^{a . twist}` from a grade twist.
    pub fn sign_table(spec: &AlgebraSpec, twist: &Grade) -> Vec<i8> {
        (0..spec.dim())
            .map(|a| if spec.grade(a).inner(twist) == 0 { 1 } else { -1 })
            .collect()
    }
}

/// A graded central term: the full list of central elements.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CentralExtension {
    pub components: Vec<CentralComponent>,
}

impl CentralExtension {
    pub fn none() -> Self {
        CentralExtension::default()
    }

    pub fn component_index(&self, name: &str) -> Option<usize> {
        self.components.iter().position(|c| c.name == name)
    }
}

/// The extensions the classification pins for the builtins, in the table
/// normalization: the `(0,0)` component is the Killing form; the `(1,1)`
/// component (present when the algebra has a `(1,1)` commutant) is the
/// commutant-induced form with the sign twist `(-1)^{a.(1,1)}`.
pub fn extension_from_forms(spec: &AlgebraSpec) -> Result<CentralExtension, AffineError> {
    let killing = killing_form(spec)?;
    let mut components = Vec::new();
    let zero = Grade::zero(spec.rank);
    let twist = Grade::new(&vec![1; spec.rank]).map_err(AlgebraError::Other)?;
    let tilde_commutant = commutant(spec, twist);
    let single = tilde_commutant.is_empty();
    components.push(CentralComponent {
        name: if single { "w".into() } else { "w00".into() },
        degree: zero,
        sign: CentralComponent::sign_table(spec, &zero),
        kappa: killing.matrix.clone(),
    });
    if let [m] = tilde_commutant.as_slice() {
        let eta = form_from_m(spec, m)?;
        components.push(CentralComponent {
            name: "w11".into(),
            degree: twist,
            sign: CentralComponent::sign_table(spec, &twist),
            kappa: eta.matrix.clone(),
        });
    }
    Ok(CentralExtension { components })
}

/// A finitely supported element of the affine algebra: loop part, central
/// coordinates and derivation coordinates.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AffineElement {
    loop_part: BTreeMap<(usize, i64), Q>,
    central: BTreeMap<usize, Q>,
    derivations: BTreeMap<usize, Q>,
}

impl AffineElement {
    pub fn zero() -> Self {
        AffineElement::default()
    }

    pub fn loop_gen(gen: usize, mode: i64) -> Self {
        let mut el = AffineElement::zero();
        el.add_loop(gen, mode, Q::one());
        el
    }

    pub fn central(component: usize) -> Self {
        let mut el = AffineElement::zero();
        el.add_central(component, Q::one());
        el
    }

    pub fn derivation(idx: usize) -> Self {
        let mut el = AffineElement::zero();
        el.add_derivation(idx, Q::one());
        el
    }

    pub fn add_loop(&mut self, gen: usize, mode: i64, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.loop_part.entry((gen, mode)).or_insert_with(Q::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.loop_part.remove(&(gen, mode));
        }
    }

    pub fn add_central(&mut self, component: usize, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.central.entry(component).or_insert_with(Q::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.central.remove(&component);
        }
    }

    pub fn add_derivation(&mut self, idx: usize, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.derivations.entry(idx).or_insert_with(Q::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.derivations.remove(&idx);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.loop_part.is_empty() && self.central.is_empty() && self.derivations.is_empty()
    }

    pub fn loop_terms(&self) -> impl Iterator<Item = (&(usize, i64), &Q)> {
        self.loop_part.iter()
    }

    pub fn central_terms(&self) -> impl Iterator<Item = (&usize, &Q)> {
        self.central.iter()
    }

    pub fn derivation_terms(&self) -> impl Iterator<Item = (&usize, &Q)> {
        self.derivations.iter()
    }

    pub fn loop_coeff(&self, gen: usize, mode: i64) -> Q {
        self.loop_part.get(&(gen, mode)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn central_coeff(&self, component: usize) -> Q {
        self.central.get(&component).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &AffineElement) -> AffineElement {
        let mut out = self.clone();
        for (&(g, m), q) in other.loop_terms() {
            out.add_loop(g, m, q.clone());
        }
        for (&c, q) in other.central_terms() {
            out.add_central(c, q.clone());
        }
        for (&d, q) in other.derivation_terms() {
            out.add_derivation(d, q.clone());
        }
        out
    }

    pub fn scale(&self, s: &Q) -> AffineElement {
        if s.is_zero() {
            return AffineElement::zero();
        }
        AffineElement {
            loop_part: self.loop_part.iter().map(|(k, q)| (*k, q * s)).collect(),
            central: self.central.iter().map(|(k, q)| (*k, q * s)).collect(),
            derivations: self.derivations.iter().map(|(k, q)| (*k, q * s)).collect(),
        }
    }

    pub fn sub(&self, other: &AffineElement) -> AffineElement {
        self.add(&other.scale(&-Q::one()))
    }
}

/// The affine algebra context: spec, central term and registered
/// mode-scaling derivations (`d00` is always index 0).
pub struct AffineAlgebra<'a> {
    pub spec: &'a AlgebraSpec,
    pub extension: CentralExtension,
    pub derivations: Vec<DerivationMap>,
}

impl<'a> AffineAlgebra<'a> {
    pub fn new(spec: &'a AlgebraSpec, extension: CentralExtension) -> Self {
        let d00 = DerivationMap {
            degree: Grade::zero(spec.rank),
            phi: QMatrix::identity(spec.dim()),
        };
        AffineAlgebra {
            spec,
            extension,
            derivations: vec![d00],
        }
    }

    pub fn register_derivation(&mut self, d: DerivationMap) -> usize {
        self.derivations.push(d);
        self.derivations.len() - 1
    }

    /// The bracket on the centrally extended loop algebra with derivations:
    /// central elements kill everything, a derivation acts by
    /// `[[d, X^a_n]] = n phi(X^a)_n`, and two mode-scaling derivations
    /// commute.
    pub fn bracket(&self, x: &AffineElement, y: &AffineElement) -> AffineElement {
        let mut out = AffineElement::zero();
        for (&(a, m), qa) in x.loop_terms() {
            for (&(b, n), qb) in y.loop_terms() {
                let scale = qa * qb;
                for (c, f) in self.spec.bracket_basis(a, b) {
                    out.add_loop(c, m + n, &f * &scale);
                }
                if m + n == 0 {
                    for (ci, comp) in self.extension.components.iter().enumerate() {
                        let coeff = comp.omega_coeff(a, b);
                        if !coeff.is_zero() {
                            out.add_central(ci, coeff * Q::from_integer(m.into()) * &scale);
                        }
                    }
                }
            }
        }
        for (&di, qd) in x.derivation_terms() {
            let d = &self.derivations[di];
            for (&(b, n), qb) in y.loop_terms() {
                let scale = qd * qb * Q::from_integer(n.into());
                for i in 0..self.spec.dim() {
                    let phi = &d.phi[(i, b)];
                    if !phi.is_zero() {
                        out.add_loop(i, n, phi * &scale);
                    }
                }
            }
        }
        for (&(a, m), qa) in x.loop_terms() {
            for (&di, qd) in y.derivation_terms() {
                let d = &self.derivations[di];
                // [[X^a_m, d]] = -(-1)^{a . deg d} [[d, X^a_m]]
                let sign = -sign_pow(self.spec.grade(a).inner(&d.degree));
                let scale = qa * qd * Q::from_integer(m.into()) * sign;
                for i in 0..self.spec.dim() {
                    let phi = &d.phi[(i, a)];
                    if !phi.is_zero() {
                        out.add_loop(i, m, phi * &scale);
                    }
                }
            }
        }
        out
    }
}

/// Bracket on the centrally extended loop algebra, with `d00` available as
/// derivation index 0.
pub fn loop_bracket(
    spec: &AlgebraSpec,
    ext: &CentralExtension,
    x: &AffineElement,
    y: &AffineElement,
) -> AffineElement {
    AffineAlgebra::new(spec, ext.clone()).bracket(x, y)
}

/// One closed-form bracket family `[[X^a_m, X^b_n]]` of the extended loop
/// algebra: loop coefficients at mode `m+n` plus central coefficients of
/// `m delta_{m+n,0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineRelation {
    pub left: usize,
    pub right: usize,
    pub loop_terms: Vec<(usize, Q)>,
    pub central_terms: Vec<(String, Q)>,
}

/// Emits every nonzero relation family, for diffing against printed tables.
pub fn affine_relations_report(spec: &AlgebraSpec, ext: &CentralExtension) -> Vec<AffineRelation> {
    let r = spec.dim();
    let mut out = Vec::new();
    for a in 0..r {
        for b in a..r {
            let loop_terms = spec.bracket_basis(a, b);
            let mut central_terms = Vec::new();
            for comp in &ext.components {
                let coeff = comp.omega_coeff(a, b);
                if !coeff.is_zero() {
                    central_terms.push((comp.name.clone(), coeff));
                }
            }
            if !loop_terms.is_empty() || !central_terms.is_empty() {
                out.push(AffineRelation {
                    left: a,
                    right: b,
                    loop_terms,
                    central_terms,
                });
            }
        }
    }
    out
}
