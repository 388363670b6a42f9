//! Symbolic 2-cocycle verification and the classification of graded central
//! extensions of a loop algebra.
//!
//! Candidate cocycles have the shape `omega(X^a_m, X^b_n) = w^{ab} m
//! delta_{m+n,0}`. On the support `m + n + k = 0` the three-term cocycle
//! condition becomes a polynomial identity in the independent modes `m, n`,
//! so it reduces to two exact linear conditions per generator triple (the
//! coefficients of `m` and of `n`). No sampling is involved.

use super::{AffineError, CentralComponent, CentralExtension};
use crate::algebra::AlgebraSpec;
use crate::grade::Grade;
use crate::linalg::{rank, LinearSystem, QMatrix};
use crate::scalar::{sign_pow, Q};
use num::Zero;

/// A failed symbolic condition for a candidate central term.
#[derive(Clone, Debug, PartialEq)]
pub enum CocycleViolation {
    /// Graded antisymmetry `w^{ab} = (-1)^{a.b} w^{ba}` fails.
    Antisymmetry { component: String, a: usize, b: usize },
    /// The coefficient of `m` (variable = 0) or of `n` (variable = 1) in the
    /// cocycle identity for the triple does not vanish.
    Triple {
        component: String,
        a: usize,
        b: usize,
        c: usize,
        variable: u8,
        residual: Q,
    },
}

/// Coefficient of `m` in the cocycle identity for the ordered triple
/// `(a, b, c)` evaluated on the matrix `w`, after eliminating `k = -m-n`.
fn triple_coeff_m(spec: &AlgebraSpec, w: &QMatrix, a: usize, b: usize, c: usize) -> Q {
    let mut acc = Q::zero();
    let sign_ac = sign_pow(spec.grade(a).inner(spec.grade(c)));
    for (d, f) in spec.bracket_basis(b, c) {
        acc += &sign_ac * &f * &w[(a, d)];
    }
    let sign_cb = sign_pow(spec.grade(c).inner(spec.grade(b)));
    for (d, f) in spec.bracket_basis(a, b) {
        acc -= &sign_cb * &f * &w[(c, d)];
    }
    acc
}

/// Coefficient of `n` in the same identity.
fn triple_coeff_n(spec: &AlgebraSpec, w: &QMatrix, a: usize, b: usize, c: usize) -> Q {
    let mut acc = Q::zero();
    let sign_ba = sign_pow(spec.grade(b).inner(spec.grade(a)));
    for (d, f) in spec.bracket_basis(c, a) {
        acc += &sign_ba * &f * &w[(b, d)];
    }
    let sign_cb = sign_pow(spec.grade(c).inner(spec.grade(b)));
    for (d, f) in spec.bracket_basis(a, b) {
        acc -= &sign_cb * &f * &w[(c, d)];
    }
    acc
}

/// True iff `omega(A_m, B_n) = w^{ab} m delta_{m+n,0}` satisfies graded
/// antisymmetry and the symbolic cocycle conditions.
pub(crate) fn linear_matrix_is_cocycle(spec: &AlgebraSpec, w: &QMatrix) -> bool {
    let r = spec.dim();
    for a in 0..r {
        for b in 0..r {
            let sign = sign_pow(spec.grade(a).inner(spec.grade(b)));
            if w[(a, b)] != &w[(b, a)] * &sign {
                return false;
            }
        }
    }
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                if !triple_coeff_m(spec, w, a, b, c).is_zero()
                    || !triple_coeff_n(spec, w, a, b, c).is_zero()
                {
                    return false;
                }
            }
        }
    }
    true
}

/// True iff `omega(A_m, B_n) = k0^{ab} delta_{m+n,0}` satisfies graded
/// antisymmetry (note the extra sign relative to the mode-linear case) and
/// the mode-independent cocycle condition.
pub(crate) fn constant_matrix_is_cocycle(spec: &AlgebraSpec, k0: &QMatrix) -> bool {
    let r = spec.dim();
    for a in 0..r {
        for b in 0..r {
            let sign = sign_pow(spec.grade(a).inner(spec.grade(b)));
            if k0[(a, b)] != -(&k0[(b, a)] * &sign) {
                return false;
            }
        }
    }
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                let mut acc = Q::zero();
                let sign_ac = sign_pow(spec.grade(a).inner(spec.grade(c)));
                for (d, f) in spec.bracket_basis(b, c) {
                    acc += &sign_ac * &f * &k0[(a, d)];
                }
                let sign_ba = sign_pow(spec.grade(b).inner(spec.grade(a)));
                for (d, f) in spec.bracket_basis(c, a) {
                    acc += &sign_ba * &f * &k0[(b, d)];
                }
                let sign_cb = sign_pow(spec.grade(c).inner(spec.grade(b)));
                for (d, f) in spec.bracket_basis(a, b) {
                    acc += &sign_cb * &f * &k0[(c, d)];
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Verifies graded antisymmetry and the three-term cocycle condition for a
/// candidate central term, symbolically in the modes.
pub fn cocycle_check(spec: &AlgebraSpec, candidate: &CentralExtension) -> Vec<CocycleViolation> {
    let r = spec.dim();
    let mut violations = Vec::new();
    for comp in &candidate.components {
        let w = QMatrix::from_fn(r, r, |a, b| comp.omega_coeff(a, b));
        for a in 0..r {
            for b in 0..r {
                let sign = sign_pow(spec.grade(a).inner(spec.grade(b)));
                if w[(a, b)] != &w[(b, a)] * &sign {
                    violations.push(CocycleViolation::Antisymmetry {
                        component: comp.name.clone(),
                        a,
                        b,
                    });
                }
            }
        }
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let cm = triple_coeff_m(spec, &w, a, b, c);
                    if !cm.is_zero() {
                        violations.push(CocycleViolation::Triple {
                            component: comp.name.clone(),
                            a,
                            b,
                            c,
                            variable: 0,
                            residual: cm,
                        });
                    }
                    let cn = triple_coeff_n(spec, &w, a, b, c);
                    if !cn.is_zero() {
                        violations.push(CocycleViolation::Triple {
                            component: comp.name.clone(),
                            a,
                            b,
                            c,
                            variable: 1,
                            residual: cn,
                        });
                    }
                }
            }
        }
    }
    violations
}

/// One basis class of central extensions in the mode-linear sector.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralTermClass {
    pub degree: Grade,
    /// Raw cocycle values `w^{ab}` (normalized basis vector).
    pub omega_matrix: QMatrix,
    /// The same class presented as a sign table plus coefficient matrix,
    /// with `s(a) = (-1)^{a . degree}` and `kappa^{ab} = s(a) w^{ab}`.
    pub component: CentralComponent,
}

impl CentralTermClass {
    /// The scalar `s` with `s * omega_matrix == target`, if the class is
    /// exactly proportional to the target matrix.
    pub fn match_scale(&self, target: &QMatrix) -> Option<Q> {
        let r = self.omega_matrix.rows();
        let mut scale: Option<Q> = None;
        for i in 0..r {
            for j in 0..r {
                let mine = &self.omega_matrix[(i, j)];
                let theirs = &target[(i, j)];
                if mine.is_zero() != theirs.is_zero() {
                    return None;
                }
                if !mine.is_zero() {
                    let ratio = theirs / mine;
                    match &scale {
                        None => scale = Some(ratio),
                        Some(s) if *s == ratio => {}
                        Some(_) => return None,
                    }
                }
            }
        }
        scale
    }
}

/// Result of the ansatz classification.
#[derive(Clone, Debug)]
pub struct CentralClassification {
    /// Basis of the mode-linear sector, one entry per class, grouped by
    /// degree in standard order.
    pub classes: Vec<CentralTermClass>,
    /// Dimension of the cocycle space in the mode-constant sector
    /// (`omega = kappa0^{ab} delta_{m+n,0}`).
    pub constant_cocycles_dim: usize,
    /// How many of those are coboundaries `f([[A, B]])` of functionals
    /// supported at mode zero. These are the candidates that die in the
    /// quotient, absorbed into redefinitions of the mode-zero generators.
    pub constant_coboundaries_dim: usize,
    /// Residual mode-constant classes (`cocycles - coboundaries`).
    pub constant_residual_dim: usize,
}

impl CentralClassification {
    pub fn dimension(&self) -> usize {
        self.classes.len()
    }
}

struct PairTable {
    /// Independent unknowns: (a, b) with a <= b, weight-zero, degree-matching.
    slots: Vec<(usize, usize)>,
    index: std::collections::BTreeMap<(usize, usize), usize>,
}

impl PairTable {
    fn lookup(&self, a: usize, b: usize) -> Option<(usize, bool)> {
        if a <= b {
            self.index.get(&(a, b)).map(|&s| (s, false))
        } else {
            self.index.get(&(b, a)).map(|&s| (s, true))
        }
    }
}

fn weight_zero_pairs(
    spec: &AlgebraSpec,
    weights: &[Q],
    degree: &Grade,
    symmetric_diag: bool,
) -> PairTable {
    let r = spec.dim();
    let mut slots = Vec::new();
    let mut index = std::collections::BTreeMap::new();
    for a in 0..r {
        for b in a..r {
            if (&weights[a] + &weights[b]) != Q::zero() {
                continue;
            }
            if spec.grade(a).add(spec.grade(b)) != *degree {
                continue;
            }
            if a == b {
                // Diagonal entries: graded symmetry forces w^{aa} = 0 for odd
                // self-pairing, graded antisymmetry forces kappa0^{aa} = 0 for
                // even self-pairing.
                let odd = spec.grade(a).self_odd();
                if symmetric_diag == odd {
                    continue;
                }
            }
            index.insert((a, b), slots.len());
            slots.push((a, b));
        }
    }
    PairTable { slots, index }
}

/// Adds `coeff * w^{x,d}` to a row, resolving the symmetric (`sym = true`,
/// `w^{ba} = (-1)^{a.b} w^{ab}`) or antisymmetric storage convention.
fn push_entry(
    spec: &AlgebraSpec,
    table: &PairTable,
    row: &mut Vec<(usize, Q)>,
    sym: bool,
    x: usize,
    d: usize,
    coeff: Q,
) {
    if let Some((slot, swapped)) = table.lookup(x, d) {
        let mut c = coeff;
        if swapped {
            let s = sign_pow(spec.grade(x).inner(spec.grade(d)));
            c = if sym { c * s } else { -(c * s) };
        }
        row.push((slot, c));
    }
}

/// Classifies the graded central extensions of the loop algebra within the
/// `m delta_{m+n,0}` ansatz, restricted to pairs of total weight zero under
/// the distinguished grading generator, then quotients the mode-constant
/// sector by coboundaries. Returns one normalized representative per class.
pub fn classify_central_extensions(
    spec: &AlgebraSpec,
) -> Result<CentralClassification, AffineError> {
    if spec.grading_generator.is_none() {
        return Err(AffineError::NoGradingGenerator);
    }
    let weights = spec.grading_weights().ok_or(AffineError::NonDiagonalGrading)?;
    let r = spec.dim();
    let mut classes = Vec::new();
    let mut constant_cocycles_dim = 0usize;
    let mut constant_coboundaries_dim = 0usize;

    for degree in Grade::all(spec.rank) {
        // Mode-linear sector: w graded-symmetric on weight-zero pairs.
        let table = weight_zero_pairs(spec, &weights, &degree, true);
        if !table.slots.is_empty() {
            let mut sys = LinearSystem::new(table.slots.len());
            for a in 0..r {
                for b in 0..r {
                    for c in 0..r {
                        // Coefficient of m.
                        let mut row = Vec::new();
                        let sign_ac = sign_pow(spec.grade(a).inner(spec.grade(c)));
                        for (d, f) in spec.bracket_basis(b, c) {
                            push_entry(spec, &table, &mut row, true, a, d, &sign_ac * &f);
                        }
                        let sign_cb = sign_pow(spec.grade(c).inner(spec.grade(b)));
                        for (d, f) in spec.bracket_basis(a, b) {
                            push_entry(spec, &table, &mut row, true, c, d, -(&sign_cb * &f));
                        }
                        sys.push_row(row);
                        // Coefficient of n.
                        let mut row = Vec::new();
                        let sign_ba = sign_pow(spec.grade(b).inner(spec.grade(a)));
                        for (d, f) in spec.bracket_basis(c, a) {
                            push_entry(spec, &table, &mut row, true, b, d, &sign_ba * &f);
                        }
                        for (d, f) in spec.bracket_basis(a, b) {
                            push_entry(spec, &table, &mut row, true, c, d, -(&sign_cb * &f));
                        }
                        sys.push_row(row);
                    }
                }
            }
            for v in sys.nullspace() {
                let mut w = QMatrix::zero(r, r);
                for (slot, &(a, b)) in table.slots.iter().enumerate() {
                    if v[slot].is_zero() {
                        continue;
                    }
                    w[(a, b)] = v[slot].clone();
                    if a != b {
                        let s = sign_pow(spec.grade(a).inner(spec.grade(b)));
                        w[(b, a)] = &v[slot] * &s;
                    }
                }
                let sign = CentralComponent::sign_table(spec, &degree);
                let kappa = QMatrix::from_fn(r, r, |a, b| {
                    &w[(a, b)] * Q::from_integer(sign[a].into())
                });
                classes.push(CentralTermClass {
                    degree,
                    omega_matrix: w,
                    component: CentralComponent {
                        name: format!(
                            "w{}",
                            degree.digits().iter().map(|d| d.to_string()).collect::<String>()
                        ),
                        degree,
                        sign,
                        kappa,
                    },
                });
            }
        }

        // Mode-constant sector: kappa0 graded-antisymmetric; the cocycle
        // condition is the finite-algebra one, and coboundaries come from
        // functionals on the weight-zero generators.
        let table = weight_zero_pairs(spec, &weights, &degree, false);
        if table.slots.is_empty() {
            continue;
        }
        let mut sys = LinearSystem::new(table.slots.len());
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let mut row = Vec::new();
                    let sign_ac = sign_pow(spec.grade(a).inner(spec.grade(c)));
                    for (d, f) in spec.bracket_basis(b, c) {
                        push_entry(spec, &table, &mut row, false, a, d, &sign_ac * &f);
                    }
                    let sign_ba = sign_pow(spec.grade(b).inner(spec.grade(a)));
                    for (d, f) in spec.bracket_basis(c, a) {
                        push_entry(spec, &table, &mut row, false, b, d, &sign_ba * &f);
                    }
                    let sign_cb = sign_pow(spec.grade(c).inner(spec.grade(b)));
                    for (d, f) in spec.bracket_basis(a, b) {
                        push_entry(spec, &table, &mut row, false, c, d, &sign_cb * &f);
                    }
                    sys.push_row(row);
                }
            }
        }
        let cocycles = sys.nullspace();
        if cocycles.is_empty() {
            continue;
        }
        // Coboundary vectors omega_f(A, B) = f([[A, B]]) with f supported on
        // weight-zero generators of the right grade.
        let mut boundary_rows: Vec<Vec<Q>> = Vec::new();
        for d in 0..r {
            if weights[d] != Q::zero() || *spec.grade(d) != degree {
                continue;
            }
            let mut v = vec![Q::zero(); table.slots.len()];
            let mut nonzero = false;
            for (slot, &(a, b)) in table.slots.iter().enumerate() {
                let f = spec.structure_constant(a, b, d);
                if !f.is_zero() {
                    v[slot] = f;
                    nonzero = true;
                }
            }
            if nonzero {
                boundary_rows.push(v);
            }
        }
        let z_dim = cocycles.len();
        let b_dim = if boundary_rows.is_empty() {
            0
        } else {
            rank(&QMatrix::from_rows(boundary_rows.clone()))
        };
        // Coboundaries are cocycles, so the quotient dimension is the
        // difference; verify containment by rank.
        if b_dim > 0 {
            let mut all = boundary_rows.clone();
            all.extend(cocycles.iter().cloned());
            assert_eq!(
                rank(&QMatrix::from_rows(all)),
                z_dim,
                "coboundaries escaped the cocycle space"
            );
        }
        constant_cocycles_dim += z_dim;
        constant_coboundaries_dim += b_dim;
    }

    // Classes are genuine: no nonzero mode-linear cocycle is a coboundary,
    // since coboundaries cannot carry linear mode dependence on the
    // delta support.
    let classification = CentralClassification {
        constant_residual_dim: constant_cocycles_dim - constant_coboundaries_dim,
        classes,
        constant_cocycles_dim,
        constant_coboundaries_dim,
    };
    // Every classified representative must itself pass the symbolic check.
    for class in &classification.classes {
        let candidate = CentralExtension {
            components: vec![class.component.clone()],
        };
        let violations = cocycle_check(spec, &candidate);
        assert!(
            violations.is_empty(),
            "classified representative fails its own cocycle check"
        );
    }
    Ok(classification)
}

/// Strips the sign table from a classified class and reads the result as a
/// bilinear form of the class degree; used by the invariance cross-check.
pub fn class_as_form(class: &CentralTermClass) -> crate::forms::BilinearForm {
    crate::forms::BilinearForm {
        degree: class.degree,
        matrix: class.component.kappa.clone(),
        inverse: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::extension_from_forms;
    use crate::builtins::{abelian, builtin};
    use crate::forms::{check_invariance, killing_form};
    use crate::scalar::qi;

    #[test]
    fn builtin_extensions_pass_cocycle_check() {
        for name in ["g8", "g10", "osp12", "sl2"] {
            let spec = builtin(name).unwrap();
            let ext = extension_from_forms(&spec).unwrap();
            assert!(cocycle_check(&spec, &ext).is_empty(), "{name}");
        }
    }

    #[test]
    fn unsigned_eta_fails_cocycle_check() {
        // Dropping the sign table from the (1,1) component breaks the
        // cocycle condition.
        let g10 = builtin("g10").unwrap();
        let mut ext = extension_from_forms(&g10).unwrap();
        let idx = ext.component_index("w11").unwrap();
        ext.components[idx].sign = vec![1; g10.dim()];
        let violations = cocycle_check(&g10, &ext);
        assert!(!violations.is_empty());
    }

    #[test]
    fn classify_g8() {
        let g8 = builtin("g8").unwrap();
        let cls = classify_central_extensions(&g8).unwrap();
        assert_eq!(cls.dimension(), 1);
        assert_eq!(cls.classes[0].degree, Grade::pair(0, 0));
        // The representative is proportional to the Killing form with
        // omega(R_m, R_n) = 4 m delta and omega(a+_m, a-_n) = 8 m delta.
        let killing = killing_form(&g8).unwrap();
        let scale = cls.classes[0].match_scale(&killing.matrix).unwrap();
        let w = cls.classes[0].omega_matrix.scale(&scale);
        assert_eq!(w[(1, 1)], qi(4));
        assert_eq!(w[(4, 5)], qi(8));
        // The mode-constant candidates all die as coboundaries.
        assert_eq!(cls.constant_residual_dim, 0);
        assert!(cls.constant_coboundaries_dim > 0);
    }

    #[test]
    fn classify_g10() {
        let g10 = builtin("g10").unwrap();
        let cls = classify_central_extensions(&g10).unwrap();
        assert_eq!(cls.dimension(), 2);
        let degrees: Vec<Grade> = cls.classes.iter().map(|c| c.degree).collect();
        assert_eq!(degrees, vec![Grade::pair(0, 0), Grade::pair(1, 1)]);
        let ext = extension_from_forms(&g10).unwrap();
        // (0,0) class is proportional to the Killing cocycle, (1,1) to the
        // signed commutant form cocycle.
        let w00 = QMatrix::from_fn(10, 10, |a, b| ext.components[0].omega_coeff(a, b));
        let w11 = QMatrix::from_fn(10, 10, |a, b| ext.components[1].omega_coeff(a, b));
        let s0 = cls.classes[0].match_scale(&w00).unwrap();
        let s1 = cls.classes[1].match_scale(&w11).unwrap();
        let scaled0 = cls.classes[0].omega_matrix.scale(&s0);
        let scaled1 = cls.classes[1].omega_matrix.scale(&s1);
        assert_eq!(scaled0[(1, 1)], qi(12)); // omega(R_m, R_n) = 12 m
        assert_eq!(scaled1[(1, 4)], qi(12)); // omega(R_m, Rt_n) = 12 m
        assert_eq!(cls.constant_residual_dim, 0);
    }

    #[test]
    fn classify_sl2_and_osp12() {
        for name in ["sl2", "osp12"] {
            let spec = builtin(name).unwrap();
            let cls = classify_central_extensions(&spec).unwrap();
            assert_eq!(cls.dimension(), 1, "{name}");
            assert!(cls.classes[0].degree.is_zero());
        }
    }

    #[test]
    fn classified_kappa_is_invariant_form() {
        // A mode-linear cocycle corresponds to an invariant bilinear form
        // after stripping the sign table.
        for name in ["g8", "g10"] {
            let spec = builtin(name).unwrap();
            let cls = classify_central_extensions(&spec).unwrap();
            for class in &cls.classes {
                let form = class_as_form(class);
                assert!(
                    check_invariance(&spec, &form).is_empty(),
                    "{name} degree {} class is not an invariant form",
                    class.degree
                );
            }
        }
    }

    #[test]
    fn classify_requires_grading_generator() {
        let ab = abelian(2);
        assert!(matches!(
            classify_central_extensions(&ab),
            Err(AffineError::NoGradingGenerator)
        ));
    }
}
