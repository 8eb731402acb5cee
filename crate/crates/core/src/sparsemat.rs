//! Square sparse complex matrices, 1-based at every public boundary.
//!
//! Storage is row-compressed: one column-sorted vector of `(col, value)`
//! pairs per row. Only nonzero (non-negligible) values are stored, so `nnz`
//! bounds stay meaningful through long product chains.

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::scalars::{Real, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("index ({0}, {1}) outside a {2}x{2} matrix")]
    OutOfRange(usize, usize, usize),
    #[error("duplicate entry at ({0}, {1})")]
    Duplicate(usize, usize),
    #[error("matrix dimension must be positive")]
    EmptyDimension,
}

/// Which side the identity sits on in a Kronecker product with `I_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `I_k ⊗ M`
    Left,
    /// `M ⊗ I_k`
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<S> {
    dim: usize,
    // 0-based columns, strictly increasing within a row
    rows: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        SparseMatrix { dim, rows: vec![Vec::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        SparseMatrix { dim, rows: (0..dim).map(|r| vec![(r, S::one())]).collect() }
    }

    /// Build from 1-based `(row, col, value)` triples. Negligible values are
    /// skipped; a repeated position is an error.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self, MatrixError>
    where
        I: IntoIterator<Item = (usize, usize, S)>,
    {
        if dim == 0 {
            return Err(MatrixError::EmptyDimension);
        }
        let mut rows: Vec<Vec<(usize, S)>> = vec![Vec::new(); dim];
        for (r, c, v) in entries {
            if r == 0 || c == 0 || r > dim || c > dim {
                return Err(MatrixError::OutOfRange(r, c, dim));
            }
            rows[r - 1].push((c - 1, v));
        }
        for (r, row) in rows.iter_mut().enumerate() {
            row.sort_by_key(|(c, _)| *c);
            if let Some(w) = row.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(MatrixError::Duplicate(r + 1, w[0].0 + 1));
            }
            row.retain(|(_, v)| !v.is_negligible());
        }
        Ok(SparseMatrix { dim, rows })
    }

    /// Diagonal matrix from its (1-based order) diagonal values.
    pub fn diagonal(values: Vec<S>) -> Self {
        let dim = values.len();
        Self::from_entries(dim, values.into_iter().enumerate().map(|(i, v)| (i + 1, i + 1, v)))
            .expect("diagonal positions are distinct")
    }

    /// Set a 1-based position, returning the previous value. Storing a
    /// negligible value removes the entry.
    pub fn insert(&mut self, row: usize, col: usize, value: S) -> Option<S> {
        assert!(
            row >= 1 && col >= 1 && row <= self.dim && col <= self.dim,
            "index ({row}, {col}) outside a {0}x{0} matrix",
            self.dim
        );
        let r = &mut self.rows[row - 1];
        match r.binary_search_by_key(&(col - 1), |(c, _)| *c) {
            Ok(pos) => {
                if value.is_negligible() {
                    Some(r.remove(pos).1)
                } else {
                    Some(std::mem::replace(&mut r[pos].1, value))
                }
            }
            Err(pos) => {
                if !value.is_negligible() {
                    r.insert(pos, (col - 1, value));
                }
                None
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&S> {
        if row == 0 || col == 0 || row > self.dim || col > self.dim {
            return None;
        }
        let r = &self.rows[row - 1];
        r.binary_search_by_key(&(col - 1), |(c, _)| *c).ok().map(|p| &r[p].1)
    }

    /// Value at a 1-based position, zero when absent.
    pub fn value(&self, row: usize, col: usize) -> S {
        self.get(row, col).cloned().unwrap_or_else(S::zero)
    }

    /// Stored entries as 1-based `(row, col, value)`, sorted row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r + 1, c + 1, v)))
    }

    /// Stored entries of one 1-based row as `(col, value)`.
    pub fn row(&self, row: usize) -> impl Iterator<Item = (usize, &S)> + '_ {
        self.rows[row - 1].iter().map(|(c, v)| (c + 1, v))
    }

    pub fn max_row_nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sparse product `self · other`. Output rows are computed in parallel;
    /// each row's accumulation order is fixed, so the result does not depend
    /// on the worker count.
    pub fn matmul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimensionMismatch(self.dim, other.dim));
        }
        let rows = self
            .rows
            .par_iter()
            .map(|row| {
                let mut acc: Vec<(usize, S)> = Vec::new();
                for (k, a) in row {
                    for (j, b) in &other.rows[*k] {
                        acc.push((*j, a.clone() * b.clone()));
                    }
                }
                merge_sorted(acc)
            })
            .collect();
        Ok(SparseMatrix { dim: self.dim, rows })
    }

    /// `I_k ⊗ self` (`Side::Left`) or `self ⊗ I_k` (`Side::Right`).
    ///
    /// Left:  `(I ⊗ M)[d(r-1)+v, d(r-1)+w] = M[v, w]`
    /// Right: `(M ⊗ I)[k(v-1)+r, k(w-1)+r] = M[v, w]`
    pub fn kron_identity(&self, k: usize, side: Side) -> Self {
        assert!(k >= 1, "identity factor must be at least 1x1");
        let d = self.dim;
        let rows = match side {
            Side::Left => (0..k)
                .flat_map(|block| {
                    self.rows.iter().map(move |row| row.iter().map(|(c, v)| (block * d + c, v.clone())).collect())
                })
                .collect(),
            Side::Right => self
                .rows
                .iter()
                .flat_map(|row| (0..k).map(move |r| row.iter().map(|(c, v)| (c * k + r, v.clone())).collect()))
                .collect(),
        };
        SparseMatrix { dim: d * k, rows }
    }

    /// General Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let db = other.dim;
        let rows = self
            .rows
            .iter()
            .flat_map(|arow| {
                other.rows.iter().map(move |brow| {
                    let mut out = Vec::with_capacity(arow.len() * brow.len());
                    for (ca, va) in arow {
                        for (cb, vb) in brow {
                            let v = va.clone() * vb.clone();
                            if !v.is_negligible() {
                                out.push((ca * db + cb, v));
                            }
                        }
                    }
                    out
                })
            })
            .collect();
        SparseMatrix { dim: self.dim * db, rows }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut rows: Vec<Vec<(usize, S)>> = vec![Vec::new(); self.dim];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                rows[*c].push((r, v.conj()));
            }
        }
        SparseMatrix { dim: self.dim, rows }
    }

    pub fn scale(&self, c: &S) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter().map(|(j, v)| (*j, c.clone() * v.clone())).filter(|(_, v)| !v.is_negligible()).collect()
            })
            .collect();
        SparseMatrix { dim: self.dim, rows }
    }

    /// Largest entrywise [`Scalar::magnitude`] of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<S::Real, MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimensionMismatch(self.dim, other.dim));
        }
        let mut worst = S::Real::zero();
        for (ra, rb) in self.rows.iter().zip(&other.rows) {
            let (mut i, mut j) = (0, 0);
            while i < ra.len() || j < rb.len() {
                let d = match (ra.get(i), rb.get(j)) {
                    (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                        i += 1;
                        j += 1;
                        va.clone() - vb.clone()
                    }
                    (Some((ca, va)), Some((cb, _))) if ca < cb => {
                        i += 1;
                        va.clone()
                    }
                    (Some((_, va)), None) => {
                        i += 1;
                        va.clone()
                    }
                    (_, Some((_, vb))) => {
                        j += 1;
                        -vb.clone()
                    }
                    (None, None) => unreachable!(),
                };
                worst = worst.max(d.magnitude());
            }
        }
        Ok(worst)
    }

    /// Largest entry magnitude.
    pub fn max_magnitude(&self) -> S::Real {
        self.entries().fold(S::Real::zero(), |acc, (_, _, v)| acc.max(v.magnitude()))
    }

    pub fn apply(&self, v: &StateVector<S>) -> Result<StateVector<S>, MatrixError> {
        if self.dim != v.dim() {
            return Err(MatrixError::DimensionMismatch(self.dim, v.dim()));
        }
        let components = self
            .rows
            .iter()
            .map(|row| row.iter().fold(S::zero(), |acc, (c, m)| acc + m.clone() * v.components[*c].clone()))
            .collect();
        Ok(StateVector { components })
    }

    /// Dense row-major copy (0-based vectors).
    pub fn to_dense(&self) -> Vec<Vec<S>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![S::zero(); self.dim];
                for (c, v) in row {
                    dense[*c] = v.clone();
                }
                dense
            })
            .collect()
    }
}

fn merge_sorted<S: Scalar>(mut acc: Vec<(usize, S)>) -> Vec<(usize, S)> {
    acc.sort_by_key(|(c, _)| *c);
    let mut out: Vec<(usize, S)> = Vec::with_capacity(acc.len());
    for (c, v) in acc {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = lv.clone() + v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_negligible());
    out
}

/// Dense complex vector, 1-based accessors.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<S> {
    components: Vec<S>,
}

impl<S: Scalar> StateVector<S> {
    pub fn new(components: Vec<S>) -> Self {
        assert!(!components.is_empty(), "state vector must have positive dimension");
        StateVector { components }
    }

    /// Basis vector `e_index` (1-based) of length `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index >= 1 && index <= dim, "basis index {index} outside 1..={dim}");
        let mut components = vec![S::zero(); dim];
        components[index - 1] = S::one();
        StateVector { components }
    }

    /// `u ⊗ v`.
    pub fn tensor(u: &Self, v: &Self) -> Self {
        let components =
            u.components.iter().flat_map(|a| v.components.iter().map(move |b| a.clone() * b.clone())).collect();
        StateVector { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn get(&self, index: usize) -> &S {
        &self.components[index - 1]
    }

    pub fn components(&self) -> &[S] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }
}

/// Small dense square matrix, row-major, 1-based accessors. Used for
/// tensor-factor witnesses.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix { dim, data: vec![S::zero(); dim * dim] }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "dense matrix must be square");
        DenseMatrix { dim, data: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.data[(row - 1) * self.dim + (col - 1)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: S) {
        self.data[(row - 1) * self.dim + (col - 1)] = value;
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.dim.max(1)).map(<[S]>::to_vec).collect()
    }

    pub fn to_sparse(&self) -> SparseMatrix<S> {
        let n = self.dim;
        SparseMatrix::from_entries(n, self.data.iter().enumerate().map(|(k, v)| (k / n + 1, k % n + 1, v.clone())))
            .expect("dense positions are distinct")
    }
}
