//! Graded invariant bilinear forms built from commutant matrices, the graded
//! Killing form, their inverses, and the second-order Casimir elements they
//! induce.

use crate::algebra::{AlgebraError, AlgebraSpec};
use crate::enveloping::{uea_multiply, UEAElement, UeaError};
use crate::grade::Grade;
use crate::linalg::{invert, QMatrix};
use crate::matrix::{adjoint_rep, supertrace, GradedMatrix};
use crate::scalar::{sign_pow, Q};
use num::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormError {
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("the form is degenerate")]
    Degenerate,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Uea(#[from] UeaError),
}

/// A graded bilinear form `eta^{ab}` of a fixed degree, with its inverse
/// `eta_{ab}` cached once computed.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm {
    pub degree: Grade,
    pub matrix: QMatrix,
    pub inverse: Option<QMatrix>,
}

impl BilinearForm {
    pub fn value(&self, a: usize, b: usize) -> Q {
        self.matrix[(a, b)].clone()
    }

    pub fn inverse_value(&self, a: usize, b: usize) -> Option<Q> {
        self.inverse.as_ref().map(|inv| inv[(a, b)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `sum_{a,b} eta_{ab} eta^{ab}`: the full contraction of the form with
    /// its inverse. This is the scalar controlling the quartic pole of the
    /// Sugawara bracket.
    pub fn full_contraction(&self) -> Result<Q, FormError> {
        let inv = self.inverse.as_ref().ok_or(FormError::Degenerate)?;
        let n = self.matrix.rows();
        let mut acc = Q::zero();
        for a in 0..n {
            for b in 0..n {
                acc += &inv[(a, b)] * &self.matrix[(a, b)];
            }
        }
        Ok(acc)
    }
}

fn grade_selection_ok(spec: &AlgebraSpec, degree: &Grade, matrix: &QMatrix) -> Option<(usize, usize)> {
    let r = spec.dim();
    for a in 0..r {
        for b in 0..r {
            if !matrix[(a, b)].is_zero() && spec.grade(a).add(spec.grade(b)) != *degree {
                return Some((a, b));
            }
        }
    }
    None
}

fn graded_symmetry_ok(spec: &AlgebraSpec, degree: &Grade, matrix: &QMatrix) -> Option<(usize, usize)> {
    let r = spec.dim();
    let mm = degree.inner(degree);
    for a in 0..r {
        for b in 0..r {
            let sign = sign_pow(spec.grade(a).inner(spec.grade(b)) + mm);
            if matrix[(b, a)] != &matrix[(a, b)] * &sign {
                return Some((a, b));
            }
        }
    }
    None
}

/// A triple where the adjoint-invariance identity fails:
/// `sum_k f^{ab}_k eta^{kc} != (-1)^{m.b} sum_k eta^{ak} f^{bc}_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceViolation {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub lhs: Q,
    pub rhs: Q,
}

/// Checks adjoint invariance of a form over all ordered basis triples.
pub fn check_invariance(spec: &AlgebraSpec, form: &BilinearForm) -> Vec<InvarianceViolation> {
    let r = spec.dim();
    let m = &form.degree;
    let mut violations = Vec::new();
    for a in 0..r {
        for b in 0..r {
            let sign = sign_pow(m.inner(spec.grade(b)));
            for c in 0..r {
                let mut lhs = Q::zero();
                for (k, f) in spec.bracket_basis(a, b) {
                    lhs += &f * &form.matrix[(k, c)];
                }
                let mut rhs = Q::zero();
                for (k, f) in spec.bracket_basis(b, c) {
                    rhs += &form.matrix[(a, k)] * &f;
                }
                rhs *= &sign;
                if lhs != rhs {
                    violations.push(InvarianceViolation { a, b, c, lhs, rhs });
                }
            }
        }
    }
    violations
}

/// Builds the form `eta(X^a, X^b) = Str(ad X^a . M . ad X^b)` from a matrix
/// solving the commutant equation, verifying the grade selection rule,
/// graded symmetry and adjoint invariance before returning.
pub fn form_from_m(spec: &AlgebraSpec, m: &GradedMatrix) -> Result<BilinearForm, FormError> {
    let r = spec.dim();
    let ads: Vec<GradedMatrix> = (0..r)
        .map(|a| adjoint_rep(spec, a))
        .collect::<Result<_, _>>()?;
    let mut matrix = QMatrix::zero(r, r);
    for a in 0..r {
        let left = ads[a].mat.mul(&m.mat);
        for b in 0..r {
            let prod = left.mul(&ads[b].mat);
            let wrapped = GradedMatrix {
                degree: ads[a].degree.add(&m.degree).add(&ads[b].degree),
                mat: prod,
            };
            matrix[(a, b)] = supertrace(spec, &wrapped);
        }
    }
    let form = BilinearForm {
        degree: m.degree,
        matrix,
        inverse: None,
    };
    if let Some((a, b)) = grade_selection_ok(spec, &form.degree, &form.matrix) {
        return Err(FormError::Inconsistent(format!(
            "entry ({a},{b}) violates the grade selection rule"
        )));
    }
    if let Some((a, b)) = graded_symmetry_ok(spec, &form.degree, &form.matrix) {
        return Err(FormError::Inconsistent(format!(
            "graded symmetry fails at ({a},{b})"
        )));
    }
    let violations = check_invariance(spec, &form);
    if !violations.is_empty() {
        return Err(FormError::Inconsistent(format!(
            "adjoint invariance fails on {} triples (bad commutant matrix?)",
            violations.len()
        )));
    }
    Ok(form)
}

/// The graded Killing form, computed along two independent routes:
/// `Str(ad X^a . ad X^b)` and the structure-constant double sum
/// `sum_{i,j} eps_i f^{aj}_i f^{bi}_j` with `eps_i` the supertrace sign of
/// `grade(i)`. The two results are asserted equal entry by entry.
pub fn killing_form(spec: &AlgebraSpec) -> Result<BilinearForm, FormError> {
    let identity = GradedMatrix::identity(spec);
    let via_str = form_from_m(spec, &identity)?;
    let r = spec.dim();
    let mut via_sum = QMatrix::zero(r, r);
    for a in 0..r {
        for b in 0..r {
            let mut acc = Q::zero();
            for j in 0..r {
                for (i, faj) in spec.bracket_basis(a, j) {
                    let fbi = spec.structure_constant(b, i, j);
                    if fbi.is_zero() {
                        continue;
                    }
                    let eps = Q::from_integer(spec.grade(i).supertrace_sign().into());
                    acc += eps * &faj * fbi;
                }
            }
            via_sum[(a, b)] = acc;
        }
    }
    if via_sum != via_str.matrix {
        return Err(FormError::Inconsistent(
            "supertrace and double-sum Killing computations disagree".into(),
        ));
    }
    Ok(via_str)
}

/// Populates the exact inverse of a form. Degenerate forms are rejected.
pub fn invert_form(form: &BilinearForm) -> Result<BilinearForm, FormError> {
    if form.inverse.is_some() {
        return Ok(form.clone());
    }
    let inv = invert(&form.matrix).ok_or(FormError::Degenerate)?;
    Ok(BilinearForm {
        degree: form.degree,
        matrix: form.matrix.clone(),
        inverse: Some(inv),
    })
}

/// The second-order Casimir `C = sum_{a,b} eta_{ab} X^a X^b` of a
/// non-degenerate invariant form, in PBW normal form.
pub fn casimir(spec: &AlgebraSpec, form: &BilinearForm) -> Result<UEAElement, FormError> {
    let inv = form.inverse.as_ref().ok_or(FormError::Degenerate)?;
    let r = spec.dim();
    let mut c = UEAElement::zero();
    for a in 0..r {
        for b in 0..r {
            let coeff = inv[(a, b)].clone();
            if coeff.is_zero() {
                continue;
            }
            let prod = uea_multiply(
                spec,
                &UEAElement::generator(a),
                &UEAElement::generator(b),
            )?;
            c = c.add(&prod.scale(&coeff));
        }
    }
    Ok(c)
}

/// Presentation of a Casimir grouped into symmetrized / antisymmetrized
/// pairs, mirroring how the inverse-form coefficients pair up:
/// `{X,Y} = XY + YX` when `eta_{ba} = eta_{ab}`, `[X,Y] = XY - YX` when
/// `eta_{ba} = -eta_{ab}`.
pub fn casimir_presentation(spec: &AlgebraSpec, form: &BilinearForm) -> Result<String, FormError> {
    let inv = form.inverse.as_ref().ok_or(FormError::Degenerate)?;
    let r = spec.dim();
    let mut pieces: Vec<String> = Vec::new();
    for a in 0..r {
        for b in a..r {
            let coeff = inv[(a, b)].clone();
            if coeff.is_zero() {
                continue;
            }
            let (na, nb) = (spec.gen_name(a), spec.gen_name(b));
            if a == b {
                pieces.push(format!("({coeff})*{na}^2"));
            } else if inv[(b, a)] == coeff {
                pieces.push(format!("({coeff})*{{{na},{nb}}}"));
            } else if inv[(b, a)] == -coeff.clone() {
                pieces.push(format!("({coeff})*[{na},{nb}]"));
            } else {
                pieces.push(format!("({coeff})*{na}*{nb} + ({})*{nb}*{na}", inv[(b, a)]));
            }
        }
    }
    Ok(pieces.join(" + "))
}
