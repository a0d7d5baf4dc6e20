//! Exact sparse linear algebra.
//!
//! Rows are kept as sorted `(column, value)` lists. Elimination runs on
//! integer rows with content normalisation (fraction-free), so no rational
//! denominators grow during reduction. Rational inputs are cleared to integer
//! rows first.

use std::collections::HashMap;

use malachite_base::num::arithmetic::traits::DivExact;
use malachite_base::num::basic::traits::{One, Zero};

use crate::arith::{gcd_all, lcm_denominators, Integer, Natural, Q};

/// Sparse rational vector; entries sorted by index, no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from unsorted pairs, summing duplicates and dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, Q)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Q)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w += v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| *v != Q::ZERO);
        Self { entries }
    }

    pub fn from_dense(xs: &[Q]) -> Self {
        Self {
            entries: xs
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != Q::ZERO)
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn unit(i: usize) -> Self {
        Self {
            entries: vec![(i, Q::ONE)],
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Q> {
        let mut out = vec![Q::ZERO; n];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Q)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Q::ZERO,
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if *c == Q::ZERO {
            return Self::new();
        }
        Self {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Self, c: &Q) -> Self {
        if *c == Q::ZERO {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, &b[j].1 * c));
                j += 1;
            } else {
                let v = &a[i].1 + &b[j].1 * c;
                if v != Q::ZERO {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        Self { entries: out }
    }

    pub fn dot_dense(&self, xs: &[Q]) -> Q {
        self.entries
            .iter()
            .filter(|(i, _)| xs[*i] != Q::ZERO)
            .map(|(i, v)| v * &xs[*i])
            .sum()
    }

    pub fn dot(&self, other: &Self) -> Q {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut acc = Q::ZERO;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += &a[i].1 * &b[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Rescales to a primitive integer vector whose first nonzero entry is positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let row = to_int_row(self);
        let sign_pos = row[0].1 > Integer::ZERO;
        Self {
            entries: row
                .into_iter()
                .map(|(i, v)| (i, Q::from(if sign_pos { v } else { -v })))
                .collect(),
        }
    }
}

/// Position of the pair `a < b < n` in the lexicographic list of 2-subsets.
#[inline]
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(n: usize, mut p: usize) -> (usize, usize) {
    let mut a = 0;
    while p >= n - a - 1 {
        p -= n - a - 1;
        a += 1;
    }
    (a, a + 1 + p)
}

/// Dense scratch buffer for summing many sparse vectors of a fixed length.
#[derive(Debug, Clone)]
pub struct Accumulator {
    vals: Vec<Q>,
    touched: Vec<usize>,
    seen: Vec<bool>,
}

impl Accumulator {
    pub fn new(n: usize) -> Self {
        Self {
            vals: vec![Q::ZERO; n],
            touched: Vec::new(),
            seen: vec![false; n],
        }
    }

    pub fn add(&mut self, i: usize, x: &Q) {
        if !self.seen[i] {
            self.seen[i] = true;
            self.touched.push(i);
        }
        self.vals[i] += x;
    }

    pub fn add_scaled(&mut self, v: &SparseVec, c: &Q) {
        if *c == Q::ZERO {
            return;
        }
        for (i, x) in &v.entries {
            let y = x * c;
            self.add(*i, &y);
        }
    }

    /// Returns the accumulated vector and clears the buffer.
    pub fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut entries = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.seen[i] = false;
            let x = std::mem::replace(&mut self.vals[i], Q::ZERO);
            if x != Q::ZERO {
                entries.push((i, x));
            }
        }
        self.touched.clear();
        SparseVec { entries }
    }
}

type IntRow = Vec<(usize, Integer)>;

fn to_int_row(v: &SparseVec) -> IntRow {
    let l = Integer::from(lcm_denominators(v.entries.iter().map(|(_, x)| x)));
    let mut row: IntRow = v
        .entries
        .iter()
        .map(|(i, x)| {
            let scaled = x * Q::from(l.clone());
            let n = Integer::from_sign_and_abs(scaled >= Q::ZERO, scaled.to_numerator());
            (*i, n)
        })
        .collect();
    normalize(&mut row);
    row
}

fn normalize(row: &mut IntRow) {
    let g = gcd_all(row.iter().map(|(_, x)| x));
    if g > Natural::ONE {
        let g = Integer::from(g);
        for (_, x) in row.iter_mut() {
            *x = (&*x).div_exact(&g);
        }
    }
}

/// `a * row - b * piv`, dropping zeros, then normalised by content.
fn combine(row: &IntRow, a: &Integer, piv: &IntRow, b: &Integer) -> IntRow {
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        if j == piv.len() || (i < row.len() && row[i].0 < piv[j].0) {
            out.push((row[i].0, a * &row[i].1));
            i += 1;
        } else if i == row.len() || piv[j].0 < row[i].0 {
            out.push((piv[j].0, -(b * &piv[j].1)));
            j += 1;
        } else {
            let v = a * &row[i].1 - b * &piv[j].1;
            if v != Integer::ZERO {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    normalize(&mut out);
    out
}

/// Incremental row-echelon form over the integers.
///
/// Each stored row has a distinct leading column (its pivot).
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<IntRow>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces leading entries until the leading column is not a pivot.
    fn reduce_leading(&self, mut row: IntRow) -> IntRow {
        while let Some((c, lead)) = row.first().cloned() {
            let Some(&r) = self.pivot_row.get(&c) else {
                break;
            };
            let piv = &self.rows[r];
            row = combine(&row, &piv[0].1, piv, &lead);
        }
        row
    }

    /// Eliminates every pivot column from `row`.
    fn reduce_full(&self, mut row: IntRow) -> IntRow {
        let mut k = 0;
        while k < row.len() {
            let (c, x) = row[k].clone();
            if let Some(&r) = self.pivot_row.get(&c) {
                let piv = &self.rows[r];
                row = combine(&row, &piv[0].1, piv, &x);
                // entries before column c are untouched by the pivot row
                k = row.partition_point(|(i, _)| *i <= c);
            } else {
                k += 1;
            }
        }
        row
    }

    fn insert_int(&mut self, row: IntRow) -> bool {
        let row = self.reduce_leading(row);
        if row.is_empty() {
            return false;
        }
        assert!(row.last().unwrap().0 < self.ncols, "column out of range");
        self.pivot_row.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Adds a row; returns `true` if it was independent of the rows so far.
    pub fn insert(&mut self, row: &SparseVec) -> bool {
        if row.is_zero() {
            return false;
        }
        self.insert_int(to_int_row(row))
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: &SparseVec) -> bool {
        row.is_zero() || self.reduce_full(to_int_row(row)).is_empty()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.pivot_row.keys().copied().collect();
        cols.sort_unstable();
        cols
    }

    /// Basis of `{x : r . x = 0 for every inserted row r}`, each vector primitive.
    ///
    /// Vectors are indexed by free column in increasing order.
    pub fn kernel(&self) -> Vec<SparseVec> {
        // back substitution into reduced row-echelon form, highest pivot first
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r][0].0));
        let mut reduced = Echelon::new(self.ncols);
        let mut rref: Vec<IntRow> = Vec::with_capacity(self.rows.len());
        for r in order {
            // the row's own pivot is not yet a pivot of `reduced`, so it survives
            let full = reduced.reduce_full(self.rows[r].clone());
            reduced.pivot_row.insert(full[0].0, reduced.rows.len());
            reduced.rows.push(full.clone());
            rref.push(full);
        }
        let pivots: std::collections::HashSet<usize> = self.pivot_row.keys().copied().collect();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        let mut basis: HashMap<usize, Vec<(usize, Q)>> =
            free.iter().map(|&f| (f, vec![(f, Q::ONE)])).collect();
        for row in &rref {
            let (c, a) = &row[0];
            for (f, x) in &row[1..] {
                let v = -Q::from_integers(x.clone(), a.clone());
                basis.get_mut(f).expect("non-pivot entry").push((*c, v));
            }
        }
        free.iter()
            .map(|f| SparseVec::from_pairs(basis.remove(f).unwrap()).primitive())
            .collect()
    }
}

/// Rank of a family of sparse vectors of length `ncols`.
pub fn rank(rows: &[SparseVec], ncols: usize) -> usize {
    let mut order: Vec<&SparseVec> = rows.iter().collect();
    order.sort_by_key(|r| r.nnz());
    let mut e = Echelon::new(ncols);
    for r in order {
        e.insert(r);
    }
    e.rank()
}

/// Null space of the linear system whose equations are `rows`.
pub fn kernel(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut order: Vec<&SparseVec> = rows.iter().collect();
    order.sort_by_key(|r| r.nnz());
    let mut e = Echelon::new(ncols);
    for r in order {
        e.insert(r);
    }
    e.kernel()
}

/// Dense inverse by Gauss-Jordan; `None` if singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::ONE } else { Q::ZERO }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| a[r][col] != Q::ZERO)?;
        a.swap(col, p);
        let inv = Q::ONE / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && row[col] != Q::ZERO {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    if *p != Q::ZERO {
                        *x -= &f * p;
                    }
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of a dense rational matrix.
pub fn rank_dense(m: &[Vec<Q>]) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let rows: Vec<SparseVec> = m.iter().map(|r| SparseVec::from_dense(r)).collect();
    rank(&rows, ncols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, q};
    use proptest::prelude::*;

    fn sv(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    #[test]
    fn add_scaled_cancels() {
        let a = sv(&[1, 2, 0, 3]);
        let b = sv(&[0, 1, 5, 0]);
        let c = a.add_scaled(&b, &q(-2));
        assert_eq!(c, sv(&[1, 0, -10, 3]));
        assert!(a.add_scaled(&a, &q(-1)).is_zero());
    }

    #[test]
    fn pair_index_round_trip() {
        let n = 7;
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                assert_eq!(pair_index(n, a, b), k);
                assert_eq!(pair_from_index(n, k), (a, b));
                k += 1;
            }
        }
    }

    #[test]
    fn accumulator_matches_add_scaled() {
        let a = sv(&[1, 2, 0, 3]);
        let b = sv(&[0, 1, 5, 0]);
        let mut acc = Accumulator::new(4);
        acc.add_scaled(&a, &q(1));
        acc.add_scaled(&b, &q(-2));
        assert_eq!(acc.take(), a.add_scaled(&b, &q(-2)));
        assert!(acc.take().is_zero());
    }

    #[test]
    fn rank_and_kernel_small() {
        let rows = vec![sv(&[1, 2, 3]), sv(&[2, 4, 6]), sv(&[0, 1, 1])];
        assert_eq!(rank(&rows, 3), 2);
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 1);
        for r in &rows {
            assert_eq!(r.dot(&k[0]), q(0));
        }
        assert_eq!(k[0], sv(&[-1, -1, 1]).primitive());
    }

    #[test]
    fn kernel_of_empty_system_is_everything() {
        let k = kernel(&[], 3);
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn inverse_matches() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert!(inverse(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }

    #[test]
    fn contains_after_full_reduction() {
        let mut e = Echelon::new(4);
        e.insert(&sv(&[1, 1, 0, 0]));
        e.insert(&sv(&[0, 1, 1, 0]));
        assert!(e.contains(&sv(&[1, 0, -1, 0])));
        assert!(!e.contains(&sv(&[0, 0, 0, 1])));
        let r = SparseVec::from_pairs(vec![(0, frac(1, 2)), (1, frac(1, 2))]);
        assert!(e.contains(&r));
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate_and_count(
            entries in prop::collection::vec(-3i64..=3, 12),
        ) {
            let rows: Vec<SparseVec> = entries.chunks(4).map(sv).collect();
            let r = rank(&rows, 4);
            let k = kernel(&rows, 4);
            prop_assert_eq!(r + k.len(), 4);
            for v in &k {
                for row in &rows {
                    prop_assert_eq!(row.dot(v), q(0));
                }
            }
            prop_assert_eq!(rank(&k, 4), k.len());
        }
    }
}
