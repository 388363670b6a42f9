//! Dense exact linear algebra over `Q`.
//!
//! Elimination is fraction-free: rows are cleared to primitive integer
//! vectors and cross-multiplied, so no rational arithmetic happens until the
//! final normalization to reduced row echelon form. Pivoting is deterministic
//! (first nonzero column, smallest row index) so bases are reproducible
//! across runs and platforms.

use crate::scalar::Q;
use num::bigint::BigInt;
use num::{Integer, One, Zero};
use std::fmt;

/// A dense matrix over `Q`.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut m = QMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|q| q.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn scale(&self, s: &Q) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|q| q * s).collect(),
        }
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Q {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    /// Flattens row-major into a vector, for use as linear-system unknowns.
    pub fn flatten(&self) -> Vec<Q> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Q>) -> Self {
        assert_eq!(data.len(), rows * cols);
        QMatrix { rows, cols, data }
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let entries: Vec<String> = self.row(i).iter().map(|q| q.to_string()).collect();
            writeln!(f, "[ {} ]", entries.join(" "))?;
        }
        Ok(())
    }
}

/// An integer row kept primitive (content divided out). Scaling a row by a
/// positive constant does not change the row space, so elimination can stay
/// in `BigInt` throughout.
fn to_primitive_int_row(row: &[Q]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for q in row {
        lcm = lcm.lcm(q.denom());
    }
    let mut ints: Vec<BigInt> = row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let mut content = BigInt::zero();
    for v in &ints {
        content = content.gcd(v);
    }
    if !content.is_zero() && !content.is_one() {
        for v in &mut ints {
            *v = &*v / &content;
        }
    }
    ints
}

fn reduce_int_row(row: &mut [BigInt]) {
    let mut content = BigInt::zero();
    for v in row.iter() {
        content = content.gcd(v);
    }
    if !content.is_zero() && !content.is_one() {
        for v in row.iter_mut() {
            *v = &*v / &content;
        }
    }
}

/// Result of reducing a matrix: the RREF rows and the pivot columns.
pub struct Rref {
    pub rows: Vec<Vec<Q>>,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form with deterministic pivoting.
pub fn rref(mat: &QMatrix) -> Rref {
    let mut work: Vec<Vec<BigInt>> = (0..mat.rows())
        .map(|i| to_primitive_int_row(mat.row(i)))
        .collect();
    let cols = mat.cols();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        // First nonzero entry in this column at or below `rank`, smallest row index.
        let Some(pivot_row) = (rank..work.len()).find(|&i| !work[i][col].is_zero()) else {
            continue;
        };
        work.swap(rank, pivot_row);
        let pivot = work[rank][col].clone();
        for i in 0..work.len() {
            if i == rank || work[i][col].is_zero() {
                continue;
            }
            let factor = work[i][col].clone();
            for j in 0..cols {
                let v = &work[i][j] * &pivot - &work[rank][j] * &factor;
                work[i][j] = v;
            }
            reduce_int_row(&mut work[i]);
        }
        pivots.push(col);
        rank += 1;
        if rank == work.len() {
            break;
        }
    }
    // Normalize pivot rows to leading 1 over Q.
    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(rank);
    for (r, &col) in pivots.iter().enumerate() {
        let lead = work[r][col].clone();
        rows.push(
            work[r]
                .iter()
                .map(|v| Q::new(v.clone(), lead.clone()))
                .collect(),
        );
    }
    Rref { rows, pivots }
}

pub fn rank(mat: &QMatrix) -> usize {
    rref(mat).pivots.len()
}

/// Basis of the right nullspace `{x : M x = 0}`.
///
/// The basis is canonical: it is itself in reduced row echelon form with
/// leading entry `+1` in each vector, so equal subspaces compare equal.
pub fn nullspace(mat: &QMatrix) -> Vec<Vec<Q>> {
    let cols = mat.cols();
    let reduced = rref(mat);
    let pivot_set: Vec<usize> = reduced.pivots.clone();
    let is_pivot = |c: usize| pivot_set.binary_search(&c).is_ok();
    let mut basis: Vec<Vec<Q>> = Vec::new();
    for free in 0..cols {
        if is_pivot(free) {
            continue;
        }
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (r, &pc) in pivot_set.iter().enumerate() {
            let coeff = reduced.rows[r][free].clone();
            if !coeff.is_zero() {
                v[pc] = -coeff;
            }
        }
        basis.push(v);
    }
    if basis.is_empty() {
        return basis;
    }
    // Canonicalize the basis itself.
    let reduced_basis = rref(&QMatrix::from_rows(basis));
    reduced_basis.rows
}

/// Exact inverse; `None` when singular.
pub fn invert(mat: &QMatrix) -> Option<QMatrix> {
    assert!(mat.is_square(), "inverse requires a square matrix");
    let n = mat.rows();
    let mut aug = QMatrix::zero(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = mat[(i, j)].clone();
        }
        aug[(i, n + i)] = Q::one();
    }
    let reduced = rref(&aug);
    if reduced.pivots.len() < n || reduced.pivots[n - 1] >= n {
        return None;
    }
    let mut inv = QMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = reduced.rows[i][n + j].clone();
        }
    }
    Some(inv)
}

/// Sparse row accumulator for building large homogeneous systems.
/// Rows are keyed by unknown index; duplicate keys are summed.
pub struct LinearSystem {
    pub unknowns: usize,
    rows: Vec<Vec<(usize, Q)>>,
}

impl LinearSystem {
    pub fn new(unknowns: usize) -> Self {
        LinearSystem {
            unknowns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, entries: Vec<(usize, Q)>) {
        let mut merged: std::collections::BTreeMap<usize, Q> = std::collections::BTreeMap::new();
        for (k, v) in entries {
            assert!(k < self.unknowns, "unknown index out of range");
            *merged.entry(k).or_insert_with(Q::zero) += v;
        }
        merged.retain(|_, v| !v.is_zero());
        if !merged.is_empty() {
            self.rows.push(merged.into_iter().collect());
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn to_matrix(&self) -> QMatrix {
        let mut m = QMatrix::zero(self.rows.len(), self.unknowns);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                m[(i, *j)] = v.clone();
            }
        }
        m
    }

    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        if self.rows.is_empty() {
            // Every unknown is free.
            return QMatrix::identity(self.unknowns)
                .flatten()
                .chunks(self.unknowns)
                .map(|c| c.to_vec())
                .collect();
        }
        nullspace(&self.to_matrix())
    }
}

/// Incremental sparse row-echelon accumulator. Rows are fed one at a time;
/// dependent rows are discarded on the fly, so very tall sparse systems
/// never materialize as dense matrices.
pub struct RrefAccumulator {
    cols: usize,
    /// pivot column -> sparse row with leading coefficient 1 at that column.
    pivots: std::collections::BTreeMap<usize, std::collections::BTreeMap<usize, Q>>,
}

impl RrefAccumulator {
    pub fn new(cols: usize) -> Self {
        RrefAccumulator {
            cols,
            pivots: std::collections::BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces and inserts a row; returns true if it was independent.
    pub fn add_row(&mut self, entries: impl IntoIterator<Item = (usize, Q)>) -> bool {
        let mut row: std::collections::BTreeMap<usize, Q> = std::collections::BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.cols);
            let e = row.entry(c).or_insert_with(Q::zero);
            *e += v;
            if e.is_zero() {
                row.remove(&c);
            }
        }
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                return false;
            };
            let Some(pivot_row) = self.pivots.get(&lead) else {
                // Normalize to leading 1 and store.
                let lead_coeff = row[&lead].clone();
                let normalized: std::collections::BTreeMap<usize, Q> =
                    row.iter().map(|(c, v)| (*c, v / &lead_coeff)).collect();
                self.pivots.insert(lead, normalized);
                return true;
            };
            let factor = row[&lead].clone();
            for (c, v) in pivot_row {
                let e = row.entry(*c).or_insert_with(Q::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
    }

    /// Back-eliminates so every pivot column appears in exactly one row,
    /// yielding the reduced row echelon form of the accumulated row space.
    fn finalize(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        for &pc in cols.iter().rev() {
            let pivot_row = self.pivots[&pc].clone();
            for (&other, row) in self.pivots.iter_mut() {
                if other == pc {
                    continue;
                }
                if let Some(factor) = row.get(&pc).cloned() {
                    for (c, v) in &pivot_row {
                        let e = row.entry(*c).or_insert_with(Q::zero);
                        *e -= &factor * v;
                        if e.is_zero() {
                            row.remove(c);
                        }
                    }
                }
            }
        }
    }

    /// Canonical nullspace basis of the accumulated system (same form as
    /// [`nullspace`]).
    pub fn into_nullspace(mut self) -> Vec<Vec<Q>> {
        self.finalize();
        let pivot_cols: Vec<usize> = self.pivots.keys().copied().collect();
        let is_pivot = |c: usize| pivot_cols.binary_search(&c).is_ok();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot(free) {
                continue;
            }
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (&pc, row) in &self.pivots {
                if let Some(coeff) = row.get(&free) {
                    v[pc] = -coeff.clone();
                }
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return basis;
        }
        rref(&QMatrix::from_rows(basis)).rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, qr};

    #[test]
    fn rref_simple() {
        let m = QMatrix::from_rows(vec![
            vec![qi(2), qi(4), qi(6)],
            vec![qi(1), qi(2), qi(4)],
        ]);
        let r = rref(&m);
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.rows[0], vec![qi(1), qi(2), qi(0)]);
        assert_eq!(r.rows[1], vec![qi(0), qi(0), qi(1)]);
    }

    #[test]
    fn nullspace_canonical() {
        // x + 2y + 3z = 0 has a 2-dimensional nullspace.
        let m = QMatrix::from_rows(vec![vec![qi(1), qi(2), qi(3)]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        // Basis is in RREF with leading +1.
        assert_eq!(ns[0][0], qi(1));
        for v in &ns {
            let dot: Q = v
                .iter()
                .zip(m.row(0))
                .map(|(a, b)| a * b)
                .sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn invert_diag_and_singular() {
        let m = QMatrix::from_rows(vec![vec![qi(2), qi(0)], vec![qi(0), qi(-4)]]);
        let inv = invert(&m).unwrap();
        assert_eq!(inv[(0, 0)], qr(1, 2));
        assert_eq!(inv[(1, 1)], qr(-1, 4));
        let singular = QMatrix::from_rows(vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]]);
        assert!(invert(&singular).is_none());
    }

    #[test]
    fn invert_antisymmetric_block() {
        // The fermionic Killing block of the eight-dimensional algebra.
        let m = QMatrix::from_rows(vec![vec![qi(0), qi(8)], vec![qi(-8), qi(0)]]);
        let inv = invert(&m).unwrap();
        assert_eq!(inv[(0, 1)], qr(-1, 8));
        assert_eq!(inv[(1, 0)], qr(1, 8));
    }

    #[test]
    fn empty_system_nullspace_is_full() {
        let sys = LinearSystem::new(3);
        assert_eq!(sys.nullspace().len(), 3);
    }

    #[test]
    fn accumulator_matches_dense_nullspace() {
        let rows = vec![
            vec![qi(1), qi(2), qi(3), qi(0)],
            vec![qi(2), qi(4), qi(6), qi(0)],
            vec![qi(0), qi(1), qi(1), qi(1)],
        ];
        let dense = nullspace(&QMatrix::from_rows(rows.clone()));
        let mut acc = RrefAccumulator::new(4);
        for row in rows {
            acc.add_row(row.into_iter().enumerate().filter(|(_, v)| !v.is_zero()));
        }
        assert_eq!(acc.rank(), 2);
        assert_eq!(acc.into_nullspace(), dense);
    }
}
