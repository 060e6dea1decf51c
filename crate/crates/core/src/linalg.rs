//! Exact linear algebra over the cyclotomic scalars: dense matrices,
//! reduced echelon forms, canonical subspaces, and a sparse solver for
//! tensor-square systems.

use std::collections::BTreeMap;

use crate::cyclotomic::CycloScalar;
use crate::error::{HopfError, Result};

pub type SparseVec = BTreeMap<usize, CycloScalar>;

pub fn sparse_insert(v: &mut SparseVec, idx: usize, c: CycloScalar) {
    if c.is_zero() {
        return;
    }
    match v.remove(&idx) {
        None => {
            v.insert(idx, c);
        }
        Some(old) => {
            let s = old.add(&c);
            if !s.is_zero() {
                v.insert(idx, s);
            }
        }
    }
}

pub fn sparse_scale(v: &SparseVec, c: &CycloScalar) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(i, x)| (*i, x.mul(c))).collect()
}

pub fn sparse_add(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut out = a.clone();
    for (i, c) in b {
        sparse_insert(&mut out, *i, c.clone());
    }
    out
}

pub fn dense_to_sparse(v: &[CycloScalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, dim: usize) -> Vec<CycloScalar> {
    let mut out = vec![CycloScalar::zero(); dim];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// Dense matrix of cyclotomic scalars, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<CycloScalar>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![CycloScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = CycloScalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycloScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> CycloScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &CycloScalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut CycloScalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[CycloScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = CycloScalar::zero();
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.at(k, j);
                if b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            acc
        })
    }

    pub fn apply(&self, v: &[CycloScalar]) -> Vec<CycloScalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = CycloScalar::zero();
                for k in 0..self.cols {
                    let a = self.at(i, k);
                    if !a.is_zero() && !v[k].is_zero() {
                        acc = acc.add(&a.mul(&v[k]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow >= m.rows {
                break;
            }
            let Some(sel) = (prow..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                let tmp = m.at(prow, j).clone();
                *m.at_mut(prow, j) = m.at(sel, j).clone();
                *m.at_mut(sel, j) = tmp;
            }
            let inv = m.at(prow, col).invert().expect("pivot nonzero");
            for j in 0..m.cols {
                let v = m.at(prow, j).mul(&inv);
                *m.at_mut(prow, j) = v;
            }
            for r in 0..m.rows {
                if r != prow && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    for j in 0..m.cols {
                        let v = m.at(r, j).sub(&f.mul(m.at(prow, j)));
                        *m.at_mut(r, j) = v;
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> CycloScalar {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = CycloScalar::one();
        for col in 0..m.cols {
            let Some(sel) = (col..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                return CycloScalar::zero();
            };
            if sel != col {
                for j in 0..m.cols {
                    let tmp = m.at(col, j).clone();
                    *m.at_mut(col, j) = m.at(sel, j).clone();
                    *m.at_mut(sel, j) = tmp;
                }
                det = det.neg();
            }
            let pivot = m.at(col, col).clone();
            det = det.mul(&pivot);
            let inv = pivot.invert().expect("pivot nonzero");
            for r in col + 1..m.rows {
                if !m.at(r, col).is_zero() {
                    let f = m.at(r, col).mul(&inv);
                    for j in col..m.cols {
                        let v = m.at(r, j).sub(&f.mul(m.at(col, j)));
                        *m.at_mut(r, j) = v;
                    }
                }
            }
        }
        det
    }

    /// Solves self * x = b; returns None if inconsistent.
    pub fn solve(&self, b: &[CycloScalar]) -> Option<Vec<CycloScalar>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Mat::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow >= aug.rows {
                break;
            }
            let Some(sel) = (prow..aug.rows).find(|&r| !aug.at(r, col).is_zero()) else {
                continue;
            };
            for j in 0..aug.cols {
                let tmp = aug.at(prow, j).clone();
                *aug.at_mut(prow, j) = aug.at(sel, j).clone();
                *aug.at_mut(sel, j) = tmp;
            }
            let inv = aug.at(prow, col).invert().expect("pivot nonzero");
            for j in 0..aug.cols {
                let v = aug.at(prow, j).mul(&inv);
                *aug.at_mut(prow, j) = v;
            }
            for r in 0..aug.rows {
                if r != prow && !aug.at(r, col).is_zero() {
                    let f = aug.at(r, col).clone();
                    for j in 0..aug.cols {
                        let v = aug.at(r, j).sub(&f.mul(aug.at(prow, j)));
                        *aug.at_mut(r, j) = v;
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        for r in prow..aug.rows {
            if !aug.at(r, self.cols).is_zero() {
                return None;
            }
        }
        let mut x = vec![CycloScalar::zero(); self.cols];
        for (i, &col) in pivots.iter().enumerate() {
            x[col] = aug.at(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.at(i, j).clone()
            } else if j - n == i {
                CycloScalar::one()
            } else {
                CycloScalar::zero()
            }
        });
        for col in 0..n {
            let Some(sel) = (col..n).find(|&r| !aug.at(r, col).is_zero()) else {
                return Err(HopfError::NotInvertible);
            };
            for j in 0..2 * n {
                let tmp = aug.at(col, j).clone();
                *aug.at_mut(col, j) = aug.at(sel, j).clone();
                *aug.at_mut(sel, j) = tmp;
            }
            let inv = aug.at(col, col).invert().expect("pivot nonzero");
            for j in 0..2 * n {
                let v = aug.at(col, j).mul(&inv);
                *aug.at_mut(col, j) = v;
            }
            for r in 0..n {
                if r != col && !aug.at(r, col).is_zero() {
                    let f = aug.at(r, col).clone();
                    for j in 0..2 * n {
                        let v = aug.at(r, j).sub(&f.mul(aug.at(col, j)));
                        *aug.at_mut(r, j) = v;
                    }
                }
            }
        }
        Ok(Mat::from_fn(n, n, |i, j| aug.at(i, j + n).clone()))
    }

    /// Basis of the right nullspace, one vector per non-pivot column.
    pub fn nullspace(&self) -> Vec<Vec<CycloScalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<usize> = pivots.clone();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![CycloScalar::zero(); self.cols];
            v[free] = CycloScalar::one();
            for (i, &p) in pivot_set.iter().enumerate() {
                v[p] = r.at(i, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn kronecker(&self, other: &Mat) -> Mat {
        Mat::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let a = self.at(i / other.rows, j / other.cols);
            let b = other.at(i % other.rows, j % other.cols);
            a.mul(b)
        })
    }
}

/// Congruence diagonalization of a symmetric matrix: returns (P, D) with
/// P^T B P = D diagonal (characteristic-zero pivoting, no square roots).
pub fn symmetric_diagonalize(b: &Mat) -> (Mat, Vec<CycloScalar>) {
    let n = b.nrows();
    assert!(b.is_symmetric());
    let mut m = b.clone();
    let mut p = Mat::identity(n);
    for k in 0..n {
        if m.at(k, k).is_zero() {
            // Bring a nonzero diagonal entry to position k.
            if let Some(i) = (k + 1..n).find(|&i| !m.at(i, i).is_zero()) {
                congruence_add(&mut m, &mut p, k, i, &CycloScalar::one());
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m.at(i, j).is_zero())
            {
                // m[i][j] != 0 with zero diagonal: add row/col j into i,
                // making m[i][i] = 2 m[i][j] != 0, then move it up.
                congruence_add(&mut m, &mut p, i, j, &CycloScalar::one());
                if i != k {
                    congruence_add(&mut m, &mut p, k, i, &CycloScalar::one());
                }
            } else {
                break; // all remaining entries are zero
            }
        }
        let pivot = m.at(k, k).clone();
        if pivot.is_zero() {
            continue;
        }
        let inv = pivot.invert().expect("pivot nonzero");
        for i in k + 1..n {
            if !m.at(i, k).is_zero() {
                let f = m.at(i, k).mul(&inv).neg();
                congruence_add(&mut m, &mut p, i, k, &f);
            }
        }
    }
    let diag = (0..n).map(|i| m.at(i, i).clone()).collect();
    (p, diag)
}

/// Congruence row/column operation: row_i += f * row_j and col_i += f * col_j,
/// tracked in P so that P^T B P stays equal to the working matrix.
fn congruence_add(m: &mut Mat, p: &mut Mat, i: usize, j: usize, f: &CycloScalar) {
    let n = m.nrows();
    for c in 0..n {
        let v = m.at(i, c).add(&f.mul(m.at(j, c)));
        *m.at_mut(i, c) = v;
    }
    for r in 0..n {
        let v = m.at(r, i).add(&f.mul(m.at(r, j)));
        *m.at_mut(r, i) = v;
    }
    for r in 0..n {
        let v = p.at(r, i).add(&f.mul(p.at(r, j)));
        *p.at_mut(r, i) = v;
    }
}

/// Subspace of an ambient coordinate space, stored as a reduced echelon
/// basis so that equality of subspaces is a syntactic check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    /// Rows in reduced echelon form (pivots normalized to 1), no zero rows.
    basis: Vec<Vec<CycloScalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_spanning(ambient, (0..ambient).map(unit_vector_fn(ambient)).collect())
    }

    pub fn from_spanning(ambient: usize, vectors: Vec<Vec<CycloScalar>>) -> Self {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// Reduces `v` against the current basis; if a nonzero remainder is
    /// left it is normalized and inserted. Returns true if the space grew.
    pub fn insert(&mut self, mut v: Vec<CycloScalar>) -> bool {
        assert_eq!(v.len(), self.ambient);
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..self.ambient {
                    if !row[j].is_zero() {
                        v[j] = v[j].sub(&f.mul(&row[j]));
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].invert().expect("pivot nonzero");
        for c in v.iter_mut() {
            if !c.is_zero() {
                *c = c.mul(&inv);
            }
        }
        // Back-substitute into existing rows to stay fully reduced.
        for (row, _) in self.basis.iter_mut().zip(&self.pivots) {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for j in 0..self.ambient {
                    if !v[j].is_zero() {
                        row[j] = row[j].sub(&f.mul(&v[j]));
                    }
                }
            }
        }
        let pos = self
            .pivots
            .iter()
            .position(|&q| q > p)
            .unwrap_or(self.pivots.len());
        self.pivots.insert(pos, p);
        self.basis.insert(pos, v);
        true
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<CycloScalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[CycloScalar]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    /// Remainder of v after reduction against the basis.
    pub fn reduce(&self, v: &[CycloScalar]) -> Vec<CycloScalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..self.ambient {
                    if !row[j].is_zero() {
                        v[j] = v[j].sub(&f.mul(&row[j]));
                    }
                }
            }
        }
        v
    }

    /// Coordinates of v on the echelon basis, if v lies in the subspace.
    pub fn coordinates(&self, v: &[CycloScalar]) -> Option<Vec<CycloScalar>> {
        let mut v = v.to_vec();
        let mut coords = vec![CycloScalar::zero(); self.basis.len()];
        for (i, (row, &p)) in self.basis.iter().zip(&self.pivots).enumerate() {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..self.ambient {
                    if !row[j].is_zero() {
                        v[j] = v[j].sub(&f.mul(&row[j]));
                    }
                }
                coords[i] = f;
            }
        }
        if v.iter().all(|c| c.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v.clone());
        }
        s
    }

    /// Unit coordinate vectors extending this basis to the full space
    /// (one per non-pivot coordinate).
    pub fn complement_coordinates(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|i| !self.pivots.contains(i))
            .collect()
    }
}

fn unit_vector_fn(dim: usize) -> impl Fn(usize) -> Vec<CycloScalar> {
    move |i| {
        let mut v = vec![CycloScalar::zero(); dim];
        v[i] = CycloScalar::one();
        v
    }
}

pub fn unit_vector(dim: usize, i: usize) -> Vec<CycloScalar> {
    unit_vector_fn(dim)(i)
}

/// Sparse linear solve: finds x with sum_j M[:,j] x_j = b, where the
/// matrix is given column-wise. Intended for tensor-square systems where
/// columns are sparse. Returns None if inconsistent or underdetermined
/// columns never reach b.
pub fn sparse_solve(
    columns: &[SparseVec],
    b: &SparseVec,
    nrows: usize,
) -> Option<Vec<CycloScalar>> {
    // Row-echelon on the transpose: treat each column as an unknown.
    // We run ordinary Gaussian elimination on (columns | b) viewed as a
    // sparse row system: rows indexed by coordinate, entries by unknown.
    let ncols = columns.len();
    let mut rows: Vec<SparseVec> = vec![SparseVec::new(); nrows];
    let mut rhs: Vec<CycloScalar> = vec![CycloScalar::zero(); nrows];
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col {
            sparse_insert(&mut rows[*i], j, c.clone());
        }
    }
    for (i, c) in b {
        rhs[*i] = c.clone();
    }
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut used_row = vec![false; nrows];
    for col in 0..ncols {
        // Choose the sparsest available row with a nonzero in this column.
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if used_row[r] || !row.contains_key(&col) {
                continue;
            }
            let len = row.len();
            if best.map_or(true, |(_, blen)| len < blen) {
                best = Some((r, len));
            }
        }
        let Some((prow, _)) = best else { continue };
        used_row[prow] = true;
        pivot_of_col[col] = Some(prow);
        let inv = rows[prow][&col].invert().ok()?;
        rows[prow] = sparse_scale(&rows[prow], &inv);
        rhs[prow] = rhs[prow].mul(&inv);
        let pivot_row = rows[prow].clone();
        let pivot_rhs = rhs[prow].clone();
        for r in 0..nrows {
            if r == prow {
                continue;
            }
            if let Some(f) = rows[r].get(&col).cloned() {
                let scaled = sparse_scale(&pivot_row, &f.neg());
                rows[r] = sparse_add(&rows[r], &scaled);
                rhs[r] = rhs[r].sub(&f.mul(&pivot_rhs));
            }
        }
    }
    // Inconsistency: an unused row with empty coefficients but nonzero rhs.
    for r in 0..nrows {
        if rows[r].is_empty() && !rhs[r].is_zero() {
            return None;
        }
    }
    let mut x = vec![CycloScalar::zero(); ncols];
    for col in 0..ncols {
        if let Some(r) = pivot_of_col[col] {
            x[col] = rhs[r].clone();
        }
    }
    // Verify (cheap relative to elimination, guards the free-variable case).
    let mut check: SparseVec = SparseVec::new();
    for (j, col) in columns.iter().enumerate() {
        if x[j].is_zero() {
            continue;
        }
        for (i, c) in col {
            sparse_insert(&mut check, *i, c.mul(&x[j]));
        }
    }
    if &check == b {
        Some(x)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::rat_int;

    fn s(n: i64) -> CycloScalar {
        CycloScalar::from_int(n)
    }

    #[test]
    fn rref_and_rank() {
        let m = Mat::from_rows(vec![
            vec![s(1), s(2), s(3)],
            vec![s(2), s(4), s(6)],
            vec![s(0), s(1), s(1)],
        ]);
        assert_eq!(m.rank(), 2);
        assert!(m.det().is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let m = Mat::from_rows(vec![vec![s(1), s(1)], vec![s(0), s(2)]]);
        let x = m.solve(&[s(3), s(4)]).unwrap();
        assert_eq!(m.apply(&x), vec![s(3), s(4)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
    }

    #[test]
    fn nullspace_matches_rank() {
        let m = Mat::from_rows(vec![vec![s(1), s(2), s(3)], vec![s(0), s(0), s(1)]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(m.apply(v).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn subspace_canonical_equality() {
        let a = Subspace::from_spanning(3, vec![vec![s(1), s(1), s(0)], vec![s(0), s(0), s(1)]]);
        let b = Subspace::from_spanning(
            3,
            vec![
                vec![s(2), s(2), s(2)],
                vec![s(0), s(0), s(-5)],
                vec![s(1), s(1), s(3)],
            ],
        );
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&[s(3), s(3), s(7)]));
        assert!(!a.contains(&[s(1), s(0), s(0)]));
    }

    #[test]
    fn subspace_coordinates_round_trip() {
        let a = Subspace::from_spanning(3, vec![vec![s(1), s(2), s(0)], vec![s(0), s(1), s(1)]]);
        let v = vec![s(2), s(5), s(1)];
        let coords = a.coordinates(&v).unwrap();
        let mut rebuilt = vec![CycloScalar::zero(); 3];
        for (c, row) in coords.iter().zip(a.basis()) {
            for j in 0..3 {
                rebuilt[j] = rebuilt[j].add(&c.mul(&row[j]));
            }
        }
        assert_eq!(rebuilt, v);
    }

    #[test]
    fn symmetric_diagonalization() {
        let b = Mat::from_rows(vec![
            vec![s(0), s(1), s(2)],
            vec![s(1), s(0), s(3)],
            vec![s(2), s(3), s(1)],
        ]);
        let (p, d) = symmetric_diagonalize(&b);
        let recon = p.transpose().mul(&b).mul(&p);
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    assert_eq!(recon.at(i, j), &d[i]);
                } else {
                    assert!(recon.at(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn sparse_solver_small_system() {
        // 2x + y = 5, y = 1
        let cols = vec![
            dense_to_sparse(&[s(2), CycloScalar::zero()]),
            dense_to_sparse(&[s(1), s(1)]),
        ];
        let b = dense_to_sparse(&[s(5), s(1)]);
        let x = sparse_solve(&cols, &b, 2).unwrap();
        assert_eq!(x, vec![s(2), s(1)]);
        let bad = dense_to_sparse(&[CycloScalar::zero(), CycloScalar::from_rat(rat_int(1))]);
        let cols2 = vec![dense_to_sparse(&[s(1), CycloScalar::zero()])];
        assert!(sparse_solve(&cols2, &bad, 2).is_none());
    }
}
