//! Graded mode-scaling derivations `d(X^a_n) = n phi(X^a)_n`.
//!
//! Matching the coefficients of the two independent modes in the Leibniz
//! rule turns the search into two linear constraint families on `phi`:
//!
//! * `phi([[X^a, X^b]]) = [[phi(X^a), X^b]]`
//! * `phi([[X^a, X^b]]) = (-1)^{deg(d) . a} [[X^a, phi(X^b)]]`

use super::{AffineError, CentralExtension};
use crate::algebra::AlgebraSpec;
use crate::grade::Grade;
use crate::linalg::{LinearSystem, QMatrix};
use crate::scalar::{sign_pow, Q};
use num::Zero;

/// A mode-scaling derivation of a fixed degree: `phi` respects the grade
/// shift, i.e. `phi_{ia}` is nonzero only when `grade(i) = grade(a) + degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationMap {
    pub degree: Grade,
    pub phi: QMatrix,
}

/// Solves the two constraint families as an exact nullspace problem and
/// returns a normalized basis of derivations of the requested degree.
pub fn derivation_search(spec: &AlgebraSpec, degree: Grade) -> Vec<DerivationMap> {
    let r = spec.dim();
    let mut slot_of_entry = vec![usize::MAX; r * r];
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for i in 0..r {
        for a in 0..r {
            if *spec.grade(i) == spec.grade(a).add(&degree) {
                slot_of_entry[i * r + a] = slots.len();
                slots.push((i, a));
            }
        }
    }
    if slots.is_empty() {
        return Vec::new();
    }
    let mut sys = LinearSystem::new(slots.len());
    for a in 0..r {
        for b in 0..r {
            let twist = sign_pow(degree.inner(spec.grade(a)));
            for i in 0..r {
                // Family 1: sum_c f^{ab}_c phi_{ic} - sum_j phi_{ja} f^{jb}_i = 0.
                let mut row = Vec::new();
                for (c, f) in spec.bracket_basis(a, b) {
                    let s = slot_of_entry[i * r + c];
                    if s != usize::MAX {
                        row.push((s, f.clone()));
                    }
                }
                for j in 0..r {
                    let s = slot_of_entry[j * r + a];
                    if s != usize::MAX {
                        let f = spec.structure_constant(j, b, i);
                        if !f.is_zero() {
                            row.push((s, -f));
                        }
                    }
                }
                sys.push_row(row);
                // Family 2: sum_c f^{ab}_c phi_{ic}
                //           - (-1)^{deg . a} sum_j phi_{jb} f^{aj}_i = 0.
                let mut row = Vec::new();
                for (c, f) in spec.bracket_basis(a, b) {
                    let s = slot_of_entry[i * r + c];
                    if s != usize::MAX {
                        row.push((s, f.clone()));
                    }
                }
                for j in 0..r {
                    let s = slot_of_entry[j * r + b];
                    if s != usize::MAX {
                        let f = spec.structure_constant(a, j, i);
                        if !f.is_zero() {
                            row.push((s, -(&twist * &f)));
                        }
                    }
                }
                sys.push_row(row);
            }
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|v| {
            let mut phi = QMatrix::zero(r, r);
            for (slot, (i, a)) in slots.iter().enumerate() {
                phi[(*i, *a)] = v[slot].clone();
            }
            DerivationMap { degree, phi }
        })
        .collect()
}

/// A basis pair where the Leibniz rule fails in the extended algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum LeibnizViolation {
    /// The loop part of the rule fails (one of the two mode coefficients).
    Loop { a: usize, b: usize, variable: u8 },
    /// The central parts fail to cancel for a component:
    /// `omega(phi(X^a), X^b) != (-1)^{deg . a} omega(X^a, phi(X^b))`.
    Central { a: usize, b: usize, component: String },
}

/// Verifies the Leibniz rule for a derivation over the centrally extended
/// loop algebra, symbolically in the modes: both loop coefficient families
/// plus cancellation of the induced central terms, and `[[d, omega_i]] = 0`
/// by construction.
pub fn check_derivation_leibniz(
    spec: &AlgebraSpec,
    ext: &CentralExtension,
    d: &DerivationMap,
) -> Result<Vec<LeibnizViolation>, AffineError> {
    let r = spec.dim();
    let mut violations = Vec::new();
    for a in 0..r {
        for b in 0..r {
            let twist = sign_pow(d.degree.inner(spec.grade(a)));
            for i in 0..r {
                let mut lhs = Q::zero();
                for (c, f) in spec.bracket_basis(a, b) {
                    lhs += &f * &d.phi[(i, c)];
                }
                let mut rhs1 = Q::zero();
                for j in 0..r {
                    if !d.phi[(j, a)].is_zero() {
                        rhs1 += &d.phi[(j, a)] * spec.structure_constant(j, b, i);
                    }
                }
                if lhs != rhs1 {
                    violations.push(LeibnizViolation::Loop { a, b, variable: 0 });
                    break;
                }
                let mut rhs2 = Q::zero();
                for j in 0..r {
                    if !d.phi[(j, b)].is_zero() {
                        rhs2 += &d.phi[(j, b)] * spec.structure_constant(a, j, i);
                    }
                }
                if lhs != &twist * &rhs2 {
                    violations.push(LeibnizViolation::Loop { a, b, variable: 1 });
                    break;
                }
            }
            for comp in &ext.components {
                let mut lhs = Q::zero();
                for j in 0..r {
                    if !d.phi[(j, a)].is_zero() {
                        lhs += &d.phi[(j, a)] * comp.omega_coeff(j, b);
                    }
                }
                let mut rhs = Q::zero();
                for j in 0..r {
                    if !d.phi[(j, b)].is_zero() {
                        rhs += comp.omega_coeff(a, j) * &d.phi[(j, b)];
                    }
                }
                if lhs != &twist * &rhs {
                    violations.push(LeibnizViolation::Central {
                        a,
                        b,
                        component: comp.name.clone(),
                    });
                }
            }
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::extension_from_forms;
    use crate::builtins::builtin;
    use crate::scalar::qi;

    #[test]
    fn g8_only_d00() {
        let g8 = builtin("g8").unwrap();
        let d00 = derivation_search(&g8, Grade::pair(0, 0));
        assert_eq!(d00.len(), 1);
        assert_eq!(d00[0].phi, QMatrix::identity(8));
        for degree in [Grade::pair(1, 1), Grade::pair(0, 1), Grade::pair(1, 0)] {
            assert!(derivation_search(&g8, degree).is_empty(), "{degree}");
        }
    }

    #[test]
    fn g10_d00_and_tilde_swap() {
        let g10 = builtin("g10").unwrap();
        assert_eq!(derivation_search(&g10, Grade::pair(0, 0)).len(), 1);
        assert!(derivation_search(&g10, Grade::pair(0, 1)).is_empty());
        assert!(derivation_search(&g10, Grade::pair(1, 0)).is_empty());
        let d11 = derivation_search(&g10, Grade::pair(1, 1));
        assert_eq!(d11.len(), 1);
        let phi = &d11[0].phi;
        // The tilde-swap action: R <-> Rt, L+- <-> Lt+-, a+- -> +-at+-,
        // at+- -> +-a+-.
        let pairs = [
            ("L+", "Lt+", 1),
            ("R", "Rt", 1),
            ("L-", "Lt-", 1),
            ("Lt+", "L+", 1),
            ("Rt", "R", 1),
            ("Lt-", "L-", 1),
            ("a+", "at+", 1),
            ("a-", "at-", -1),
            ("at+", "a+", 1),
            ("at-", "a-", -1),
        ];
        for (from, to, sign) in pairs {
            let a = g10.gen_index(from).unwrap();
            let i = g10.gen_index(to).unwrap();
            assert_eq!(phi[(i, a)], qi(sign), "phi({from}) -> {to}");
        }
        // And nothing else.
        let mut nonzero = 0;
        for i in 0..10 {
            for a in 0..10 {
                if !phi[(i, a)].is_zero() {
                    nonzero += 1;
                }
            }
        }
        assert_eq!(nonzero, 10);
    }

    #[test]
    fn leibniz_holds_in_extended_algebra() {
        for name in ["g8", "g10"] {
            let spec = builtin(name).unwrap();
            let ext = extension_from_forms(&spec).unwrap();
            for degree in Grade::all(2) {
                for d in derivation_search(&spec, degree) {
                    let violations = check_derivation_leibniz(&spec, &ext, &d).unwrap();
                    assert!(violations.is_empty(), "{name} degree {degree}");
                }
            }
        }
    }

    #[test]
    fn broken_map_fails_leibniz() {
        let g10 = builtin("g10").unwrap();
        let ext = extension_from_forms(&g10).unwrap();
        let mut d = derivation_search(&g10, Grade::pair(1, 1)).remove(0);
        // Flip one sign of the tilde swap.
        let a = g10.gen_index("a-").unwrap();
        let i = g10.gen_index("at-").unwrap();
        d.phi[(i, a)] = qi(1);
        let violations = check_derivation_leibniz(&g10, &ext, &d).unwrap();
        assert!(!violations.is_empty());
    }
}
