//! Sparse exact matrices and matrix representations.

use malachite_base::num::basic::traits::Zero;

use crate::arith::Q;
use crate::lie::Weight;
use crate::sparse::{Accumulator, SparseVec};

/// Column-major sparse rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            cols: vec![SparseVec::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            nrows: n,
            cols: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols
            .iter()
            .all(|c| c.entries().last().is_none_or(|(i, _)| *i < nrows)));
        Self { nrows, cols }
    }

    /// Duplicated positions are summed.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: Vec<(usize, usize, Q)>) -> Self {
        let mut per_col: Vec<Vec<(usize, Q)>> = vec![Vec::new(); ncols];
        for (i, j, x) in triplets {
            assert!(i < nrows && j < ncols, "triplet ({i},{j}) out of range");
            per_col[j].push((i, x));
        }
        Self {
            nrows,
            cols: per_col.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    pub fn from_dense(m: &[Vec<Q>]) -> Self {
        let nrows = m.len();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut t = Vec::new();
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if *x != Q::ZERO {
                    t.push((i, j, x.clone()));
                }
            }
        }
        Self::from_triplets(nrows, ncols, t)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.cols[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    /// `(row, col, value)` sorted by column, then row.
    pub fn triplets(&self) -> Vec<(usize, usize, Q)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.entries() {
                out.push((*i, j, x.clone()));
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::ZERO; self.ncols()]; self.nrows];
        for (i, j, x) in self.triplets() {
            out[i][j] = x;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let t = self
            .triplets()
            .into_iter()
            .map(|(i, j, x)| (j, i, x))
            .collect();
        Self::from_triplets(self.ncols(), self.nrows, t)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.nrows);
        for (j, x) in v.entries() {
            acc.add_scaled(&self.cols[*j], x);
        }
        acc.take()
    }

    pub fn apply_dense(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::ZERO; self.nrows];
        for (j, x) in v.iter().enumerate() {
            if *x == Q::ZERO {
                continue;
            }
            for (i, y) in self.cols[j].entries() {
                out[*i] += x * y;
            }
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.nrows, "dimension mismatch");
        let mut acc = Accumulator::new(self.nrows);
        let cols = other
            .cols
            .iter()
            .map(|c| {
                for (k, x) in c.entries() {
                    acc.add_scaled(&self.cols[*k], x);
                }
                acc.take()
            })
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            cols,
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &SparseMatrix, c: &Q) -> SparseMatrix {
        assert_eq!(self.ncols(), other.ncols());
        SparseMatrix {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.add_scaled(b, c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            cols: self.cols.iter().map(|x| x.scale(c)).collect(),
        }
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &SparseMatrix) -> SparseMatrix {
        self.mul(other).add_scaled(&other.mul(self), &Q::from(-1))
    }

    pub fn trace(&self) -> Q {
        self.cols.iter().enumerate().map(|(j, c)| c.get(j)).sum()
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &SparseMatrix) -> Q {
        let mut t = Q::ZERO;
        for (j, c) in other.cols.iter().enumerate() {
            for (k, x) in c.entries() {
                // (self*other)_{jj} = sum_k self_{jk} other_{kj}
                let y = self.cols[*k].get(j);
                if y != Q::ZERO {
                    t += x * y;
                }
            }
        }
        t
    }

    /// Bilinear form `x^T M y`.
    pub fn bilinear(&self, x: &SparseVec, y: &SparseVec) -> Q {
        let mut t = Q::ZERO;
        for (j, b) in y.entries() {
            let d = self.cols[*j].dot(x);
            if d != Q::ZERO {
                t += d * b;
            }
        }
        t
    }

    /// Vectorisation in column-major order: entry `(i,j)` goes to `j*nrows + i`.
    pub fn vectorize(&self) -> SparseVec {
        SparseVec::from_pairs(
            self.triplets()
                .into_iter()
                .map(|(i, j, x)| (j * self.nrows + i, x))
                .collect(),
        )
    }
}

/// Lie algebra acting on `C^dim` through explicit matrices, one per basis
/// element of the algebra. Weights label the standard basis when known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRep {
    dim: usize,
    gens: Vec<SparseMatrix>,
    weights: Option<Vec<Weight>>,
}

impl MatrixRep {
    pub fn new(dim: usize, gens: Vec<SparseMatrix>, weights: Option<Vec<Weight>>) -> Self {
        assert!(gens.iter().all(|g| g.nrows() == dim && g.ncols() == dim));
        if let Some(w) = &weights {
            assert_eq!(w.len(), dim);
        }
        Self { dim, gens, weights }
    }

    pub fn from_dense(dim: usize, gens: &[Vec<Vec<Q>>]) -> Self {
        Self::new(
            dim,
            gens.iter().map(|g| SparseMatrix::from_dense(g)).collect(),
            None,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the acting algebra (number of generator matrices).
    pub fn algebra_dim(&self) -> usize {
        self.gens.len()
    }

    pub fn matrix(&self, k: usize) -> &SparseMatrix {
        &self.gens[k]
    }

    pub fn gens(&self) -> &[SparseMatrix] {
        &self.gens
    }

    pub fn weights(&self) -> Option<&[Weight]> {
        self.weights.as_deref()
    }

    /// `rho(sum_k a_k x_k)`.
    pub fn act(&self, a: &SparseVec) -> SparseMatrix {
        let mut m = SparseMatrix::zero(self.dim, self.dim);
        for (k, c) in a.entries() {
            m = m.add_scaled(&self.gens[*k], c);
        }
        m
    }

    /// Rank of the span of the generator matrices.
    pub fn span_rank(&self) -> usize {
        let rows: Vec<SparseVec> = self.gens.iter().map(SparseMatrix::vectorize).collect();
        crate::sparse::rank(&rows, self.dim * self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn sl2_commutators() {
        let e = m(&[&[0, 1], &[0, 0]]);
        let f = m(&[&[0, 0], &[1, 0]]);
        let h = m(&[&[1, 0], &[0, -1]]);
        assert_eq!(e.commutator(&f), h);
        assert_eq!(h.commutator(&e), e.scale(&q(2)));
        assert_eq!(h.commutator(&f), f.scale(&q(-2)));
        assert_eq!(h.trace_product(&h), q(2));
        assert_eq!(e.trace_product(&f), q(1));
    }

    #[test]
    fn product_transpose_and_apply() {
        let a = m(&[&[1, 2, 0], &[0, 0, 3]]);
        let b = m(&[&[1, 0], &[0, 1], &[4, 5]]);
        let ab = a.mul(&b);
        assert_eq!(ab, m(&[&[1, 2], &[12, 15]]));
        assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()));
        let v = SparseVec::from_dense(&[q(1), q(1), q(1)]);
        assert_eq!(a.apply(&v).to_dense(2), vec![q(3), q(3)]);
        assert_eq!(a.apply_dense(&v.to_dense(3)), vec![q(3), q(3)]);
        assert_eq!(a.mul(&b).trace(), a.trace_product(&b));
    }
}
