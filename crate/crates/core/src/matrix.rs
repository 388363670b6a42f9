//! Graded matrices over the grade-sorted basis: the adjoint representation,
//! the graded supertrace, and the commutant solver that classifies the
//! matrices `M` with `[[M, ad X^a]] = 0` for every generator.

use crate::algebra::{AlgebraError, AlgebraSpec};
use crate::grade::Grade;
use crate::linalg::{LinearSystem, QMatrix};
use crate::scalar::{sign_pow, Q};
use num::Zero;

/// A homogeneous matrix on the grade-sorted basis of a spec. Entry `(i, j)`
/// may be nonzero only if `grade(i) = grade(j) + degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMatrix {
    pub degree: Grade,
    pub mat: QMatrix,
}

impl GradedMatrix {
    /// Wraps a matrix after validating the block pattern for its degree.
    pub fn new(spec: &AlgebraSpec, degree: Grade, mat: QMatrix) -> Result<Self, AlgebraError> {
        let r = spec.dim();
        if mat.rows() != r || mat.cols() != r {
            return Err(AlgebraError::Other(format!(
                "matrix size {}x{} does not match algebra dimension {r}",
                mat.rows(),
                mat.cols()
            )));
        }
        for i in 0..r {
            for j in 0..r {
                if !mat[(i, j)].is_zero() && *spec.grade(i) != spec.grade(j).add(&degree) {
                    return Err(AlgebraError::Other(format!(
                        "entry ({i},{j}) violates the block pattern for degree {degree}"
                    )));
                }
            }
        }
        Ok(GradedMatrix { degree, mat })
    }

    pub fn zero(spec: &AlgebraSpec, degree: Grade) -> Self {
        GradedMatrix {
            degree,
            mat: QMatrix::zero(spec.dim(), spec.dim()),
        }
    }

    pub fn identity(spec: &AlgebraSpec) -> Self {
        GradedMatrix {
            degree: Grade::zero(spec.rank),
            mat: QMatrix::identity(spec.dim()),
        }
    }

    pub fn size(&self) -> usize {
        self.mat.rows()
    }
}

/// Matrix of the adjoint action of a basis generator: `(ad X^a)_{ij} = f^{aj}_i`.
pub fn adjoint_rep(spec: &AlgebraSpec, a: usize) -> Result<GradedMatrix, AlgebraError> {
    spec.check_index(a)?;
    let r = spec.dim();
    let mut mat = QMatrix::zero(r, r);
    for j in 0..r {
        for (i, f) in spec.bracket_basis(a, j) {
            mat[(i, j)] = f;
        }
    }
    Ok(GradedMatrix {
        degree: *spec.grade(a),
        mat,
    })
}

/// Graded supertrace: block-signed sum of diagonal entries, `+` on blocks of
/// even self-pairing grade and `-` on odd ones. Vanishes identically for
/// matrices of nonzero degree because their diagonal blocks are empty.
pub fn supertrace(spec: &AlgebraSpec, m: &GradedMatrix) -> Q {
    let mut acc = Q::zero();
    for i in 0..m.size() {
        let s = spec.grade(i).supertrace_sign();
        if s == 1 {
            acc += m.mat[(i, i)].clone();
        } else {
            acc -= m.mat[(i, i)].clone();
        }
    }
    acc
}

/// Graded matrix bracket `x y - (-1)^{deg x . deg y} y x`, of degree
/// `deg x + deg y`.
pub fn graded_matrix_bracket(x: &GradedMatrix, y: &GradedMatrix) -> Result<GradedMatrix, AlgebraError> {
    if x.size() != y.size() {
        return Err(AlgebraError::Other(format!(
            "size mismatch: {} vs {}",
            x.size(),
            y.size()
        )));
    }
    let sign = sign_pow(x.degree.inner(&y.degree));
    let xy = x.mat.mul(&y.mat);
    let yx = y.mat.mul(&x.mat);
    Ok(GradedMatrix {
        degree: x.degree.add(&y.degree),
        mat: xy.sub(&yx.scale(&sign)),
    })
}

/// A basis pair where `ad [[X^a, X^b]] != [[ad X^a, ad X^b]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdHomViolation {
    pub a: usize,
    pub b: usize,
}

/// Verifies that the adjoint action is an algebra homomorphism on every
/// basis pair.
pub fn check_ad_homomorphism(spec: &AlgebraSpec) -> Vec<AdHomViolation> {
    let r = spec.dim();
    let ads: Vec<GradedMatrix> = (0..r).map(|a| adjoint_rep(spec, a).unwrap()).collect();
    let mut violations = Vec::new();
    for a in 0..r {
        for b in 0..r {
            let lhs = {
                let mut acc = QMatrix::zero(r, r);
                for (c, f) in spec.bracket_basis(a, b) {
                    acc = acc.add(&ads[c].mat.scale(&f));
                }
                acc
            };
            let rhs = graded_matrix_bracket(&ads[a], &ads[b]).unwrap();
            if lhs != rhs.mat {
                violations.push(AdHomViolation { a, b });
            }
        }
    }
    violations
}

/// Basis of the space of degree-`degree` matrices commuting (in the graded
/// sense) with every adjoint matrix. The basis is canonical: coordinates in
/// reduced row echelon form with leading entry `+1`.
pub fn commutant(spec: &AlgebraSpec, degree: Grade) -> Vec<GradedMatrix> {
    let r = spec.dim();
    // Unknowns: the entries allowed by the block pattern.
    let mut slot_of_entry = vec![usize::MAX; r * r];
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if *spec.grade(i) == spec.grade(j).add(&degree) {
                slot_of_entry[i * r + j] = slots.len();
                slots.push((i, j));
            }
        }
    }
    if slots.is_empty() {
        return Vec::new();
    }
    let mut sys = LinearSystem::new(slots.len());
    let ads: Vec<GradedMatrix> = (0..r).map(|a| adjoint_rep(spec, a).unwrap()).collect();
    for ad in &ads {
        let sign = sign_pow(degree.inner(&ad.degree));
        // [[M, ad]]_{ij} = sum_k M_{ik} ad_{kj} - sign * ad_{ik} M_{kj} = 0.
        for i in 0..r {
            for j in 0..r {
                let mut row: Vec<(usize, Q)> = Vec::new();
                for k in 0..r {
                    let s1 = slot_of_entry[i * r + k];
                    if s1 != usize::MAX && !ad.mat[(k, j)].is_zero() {
                        row.push((s1, ad.mat[(k, j)].clone()));
                    }
                    let s2 = slot_of_entry[k * r + j];
                    if s2 != usize::MAX && !ad.mat[(i, k)].is_zero() {
                        row.push((s2, -(&ad.mat[(i, k)] * &sign)));
                    }
                }
                sys.push_row(row);
            }
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|v| {
            let mut mat = QMatrix::zero(r, r);
            for (slot, (i, j)) in slots.iter().enumerate() {
                mat[(*i, *j)] = v[slot].clone();
            }
            GradedMatrix { degree, mat }
        })
        .collect()
}
