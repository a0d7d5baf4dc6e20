//! Sparse multi-index tensors and subspaces spanned by them.

use serde::Serialize;

use crate::arith::Q;
use crate::error::{Error, Result};
use crate::sparse::{pair_index, Accumulator, Echelon, SparseVec};

/// Exact sparse tensor, stored flat in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseTensor {
    shape: Vec<usize>,
    data: SparseVec,
}

impl SparseTensor {
    pub fn zero(shape: Vec<usize>) -> Self {
        Self {
            shape,
            data: SparseVec::new(),
        }
    }

    pub fn from_flat(shape: Vec<usize>, data: SparseVec) -> Self {
        let len: usize = shape.iter().product();
        assert!(
            data.entries().last().is_none_or(|(i, _)| *i < len),
            "entry out of range"
        );
        Self { shape, data }
    }

    pub fn from_entries(shape: Vec<usize>, entries: Vec<(Vec<usize>, Q)>) -> Self {
        let flat = entries
            .into_iter()
            .map(|(idx, x)| (flat_index(&shape, &idx), x))
            .collect();
        Self {
            data: SparseVec::from_pairs(flat),
            shape,
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn flat(&self) -> &SparseVec {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.nnz()
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_zero()
    }

    pub fn get(&self, idx: &[usize]) -> Q {
        self.data.get(flat_index(&self.shape, idx))
    }

    pub fn entries(&self) -> Vec<(Vec<usize>, Q)> {
        self.data
            .entries()
            .iter()
            .map(|(i, x)| (unflatten(&self.shape, *i), x.clone()))
            .collect()
    }

    pub fn add_scaled(&self, other: &SparseTensor, c: &Q) -> SparseTensor {
        assert_eq!(self.shape, other.shape);
        Self {
            shape: self.shape.clone(),
            data: self.data.add_scaled(&other.data, c),
        }
    }

    pub fn scale(&self, c: &Q) -> SparseTensor {
        Self {
            shape: self.shape.clone(),
            data: self.data.scale(c),
        }
    }

    /// Swaps two slots.
    pub fn swap_axes(&self, i: usize, j: usize) -> SparseTensor {
        let mut shape = self.shape.clone();
        shape.swap(i, j);
        let entries = self
            .entries()
            .into_iter()
            .map(|(mut idx, x)| {
                idx.swap(i, j);
                (idx, x)
            })
            .collect();
        SparseTensor::from_entries(shape, entries)
    }
}

pub fn flat_index(shape: &[usize], idx: &[usize]) -> usize {
    assert_eq!(shape.len(), idx.len(), "index has wrong length");
    let mut f = 0;
    for (n, i) in shape.iter().zip(idx) {
        assert!(i < n, "index {i} out of range {n}");
        f = f * n + i;
    }
    f
}

pub fn unflatten(shape: &[usize], mut f: usize) -> Vec<usize> {
    let mut idx = vec![0; shape.len()];
    for (k, n) in shape.iter().enumerate().rev() {
        idx[k] = f % n;
        f /= n;
    }
    idx
}

/// Linearly independent tensors of a common shape.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    shape: Vec<usize>,
    elements: Vec<SparseTensor>,
}

impl SubspaceBasis {
    /// Checks independence exactly.
    pub fn new(shape: Vec<usize>, elements: Vec<SparseTensor>) -> Result<Self> {
        let mut ech = Echelon::new(shape.iter().product());
        for e in &elements {
            if e.shape() != shape.as_slice() {
                return Err(Error::Invalid("basis element has the wrong shape".into()));
            }
            if !ech.insert(e.flat()) {
                return Err(Error::Invalid(
                    "basis elements are linearly dependent".into(),
                ));
            }
        }
        Ok(Self { shape, elements })
    }

    pub fn zero(shape: Vec<usize>) -> Self {
        Self {
            shape,
            elements: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn elements(&self) -> &[SparseTensor] {
        &self.elements
    }

    pub fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new(self.ambient_dim());
        for e in &self.elements {
            ech.insert(e.flat());
        }
        ech
    }

    pub fn contains(&self, t: &SparseTensor) -> bool {
        self.echelon().contains(t.flat())
    }
}

/// Element of `g (x) Lambda^2 V*`, kept as one algebra vector per pair `a < b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureElement {
    dim_g: usize,
    n: usize,
    pairs: Vec<SparseVec>,
}

impl CurvatureElement {
    pub fn zero(dim_g: usize, n: usize) -> Self {
        Self {
            dim_g,
            n,
            pairs: vec![SparseVec::new(); n * n.saturating_sub(1) / 2],
        }
    }

    pub fn from_pairs(dim_g: usize, n: usize, pairs: Vec<SparseVec>) -> Self {
        assert_eq!(pairs.len(), n * n.saturating_sub(1) / 2);
        Self { dim_g, n, pairs }
    }

    /// Entry `R(u, v)` for all `u < v` given by a closure.
    pub fn from_fn(dim_g: usize, n: usize, mut f: impl FnMut(usize, usize) -> SparseVec) -> Self {
        let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                pairs.push(f(a, b));
            }
        }
        Self { dim_g, n, pairs }
    }

    pub fn dim_g(&self) -> usize {
        self.dim_g
    }

    pub fn dim_v(&self) -> usize {
        self.n
    }

    /// `R(e_a, e_b)` as an algebra vector.
    pub fn value(&self, a: usize, b: usize) -> SparseVec {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.pairs[pair_index(self.n, a, b)].clone(),
            std::cmp::Ordering::Greater => self.pairs[pair_index(self.n, b, a)].scale(&Q::from(-1)),
            std::cmp::Ordering::Equal => SparseVec::new(),
        }
    }

    pub fn pair_values(&self) -> &[SparseVec] {
        &self.pairs
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.iter().all(SparseVec::is_zero)
    }

    pub fn add_scaled(&self, other: &CurvatureElement, c: &Q) -> CurvatureElement {
        Self {
            dim_g: self.dim_g,
            n: self.n,
            pairs: self
                .pairs
                .iter()
                .zip(&other.pairs)
                .map(|(x, y)| x.add_scaled(y, c))
                .collect(),
        }
    }

    /// Inverse of [`CurvatureElement::flatten`].
    pub fn from_flat(dim_g: usize, n: usize, flat: &SparseVec) -> Self {
        let mut pairs = vec![Vec::new(); n * n.saturating_sub(1) / 2];
        for (i, x) in flat.entries() {
            pairs[i / dim_g].push((i % dim_g, x.clone()));
        }
        Self {
            dim_g,
            n,
            pairs: pairs.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    /// `sum_j c_j R_j` over the nonzero coefficients of `c`.
    pub fn combination(elements: &[CurvatureElement], c: &SparseVec) -> CurvatureElement {
        let first = elements.first().expect("at least one element");
        let mut acc = Accumulator::new(first.dim_g);
        let pairs = (0..first.pairs.len())
            .map(|p| {
                for (j, x) in c.entries() {
                    acc.add_scaled(&elements[*j].pairs[p], x);
                }
                acc.take()
            })
            .collect();
        Self {
            dim_g: first.dim_g,
            n: first.n,
            pairs,
        }
    }

    /// Flat coordinates `pair * dim_g + k`.
    pub fn flatten(&self) -> SparseVec {
        let mut out = Vec::new();
        for (p, v) in self.pairs.iter().enumerate() {
            for (k, x) in v.entries() {
                out.push((p * self.dim_g + k, x.clone()));
            }
        }
        SparseVec::from_pairs(out)
    }

    /// Full skew tensor of shape `[dim_g, n, n]`.
    pub fn to_tensor(&self) -> SparseTensor {
        let mut entries = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                for (k, x) in self.pairs[pair_index(self.n, a, b)].entries() {
                    entries.push((vec![*k, a, b], x.clone()));
                    entries.push((vec![*k, b, a], -x));
                }
            }
        }
        SparseTensor::from_entries(vec![self.dim_g, self.n, self.n], entries)
    }

    /// Rank of the span of all values `R(u, v)` inside the algebra.
    pub fn span_rank(&self) -> usize {
        let mut ech = Echelon::new(self.dim_g);
        for v in &self.pairs {
            if ech.rank() == self.dim_g {
                break;
            }
            ech.insert(v);
        }
        ech.rank()
    }
}

/// Element of `g (x) V* (x) Lambda^2 V*`: one curvature element per first slot `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondCurvature {
    slices: Vec<CurvatureElement>,
}

impl SecondCurvature {
    pub fn new(slices: Vec<CurvatureElement>) -> Self {
        Self { slices }
    }

    pub fn slices(&self) -> &[CurvatureElement] {
        &self.slices
    }

    pub fn slice(&self, s: usize) -> &CurvatureElement {
        &self.slices[s]
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(CurvatureElement::is_zero)
    }

    /// Number of triples `s < u < v` where `S(s;u,v) + S(u;v,s) + S(v;s,u) != 0`.
    pub fn second_bianchi_failures(&self) -> usize {
        let n = self.slices.len();
        let mut bad = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let sum = self.slices[a]
                        .value(b, c)
                        .add_scaled(&self.slices[b].value(c, a), &Q::from(1))
                        .add_scaled(&self.slices[c].value(a, b), &Q::from(1));
                    if !sum.is_zero() {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    /// Flat coordinates of the slices listed in `slots`, concatenated.
    pub fn flatten_slices(&self, slots: &[usize]) -> SparseVec {
        let mut out = Vec::new();
        let mut offset = 0;
        for &s in slots {
            let f = self.slices[s].flatten();
            let len = self.slices[s].pairs.len() * self.slices[s].dim_g;
            out.extend(f.into_entries().into_iter().map(|(i, x)| (offset + i, x)));
            offset += len;
        }
        SparseVec::from_pairs(out)
    }

    pub fn flatten(&self) -> SparseVec {
        self.flatten_slices(&(0..self.slices.len()).collect::<Vec<_>>())
    }

    /// Tensor of shape `[dim_g, n, n, n]` indexed `(k, s, u, v)`.
    pub fn to_tensor(&self) -> SparseTensor {
        let n = self.slices.len();
        let dim_g = self.slices.first().map_or(0, |r| r.dim_g);
        let mut entries = Vec::new();
        for (s, r) in self.slices.iter().enumerate() {
            for (idx, x) in r.to_tensor().entries() {
                entries.push((vec![idx[0], s, idx[1], idx[2]], x));
            }
        }
        SparseTensor::from_entries(vec![dim_g, n, n, n], entries)
    }
}

/// Element of `g (x) g (x) Lambda^2 V*`; slice `k` holds the values in the
/// second algebra slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSlotCurvature {
    slices: Vec<CurvatureElement>,
}

impl TwoSlotCurvature {
    pub fn new(slices: Vec<CurvatureElement>) -> Self {
        Self { slices }
    }

    pub fn slices(&self) -> &[CurvatureElement] {
        &self.slices
    }

    pub fn slice(&self, k: usize) -> &CurvatureElement {
        &self.slices[k]
    }

    pub fn dim_g(&self) -> usize {
        self.slices.len()
    }

    /// Number of entries `(k, l, pair)` with `P^{kl} != P^{lk}`.
    pub fn symmetry_failures(&self) -> usize {
        let mut bad = 0;
        for (k, r) in self.slices.iter().enumerate() {
            for (p, v) in r.pair_values().iter().enumerate() {
                for (l, x) in v.entries() {
                    if self.slices[*l].pairs[p].get(k) != *x {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    /// Contraction with `V*` through the action: slice `s` of the `t`-th
    /// result is `sum_k rho_k[t][s] P^{k.}`.
    pub fn contract_module(&self, rep: &crate::rep::MatrixRep, t: usize) -> SecondCurvature {
        let n = rep.dim();
        let slices = (0..n)
            .map(|s| {
                let c = SparseVec::from_pairs(
                    rep.gens()
                        .iter()
                        .enumerate()
                        .map(|(k, m)| (k, m.get(t, s)))
                        .collect(),
                );
                if c.is_zero() {
                    CurvatureElement::zero(self.dim_g(), n)
                } else {
                    CurvatureElement::combination(&self.slices, &c)
                }
            })
            .collect();
        SecondCurvature::new(slices)
    }

    pub fn flatten(&self) -> SparseVec {
        let mut out = Vec::new();
        let mut offset = 0;
        for r in &self.slices {
            out.extend(
                r.flatten()
                    .into_entries()
                    .into_iter()
                    .map(|(i, x)| (offset + i, x)),
            );
            offset += r.pairs.len() * r.dim_g;
        }
        SparseVec::from_pairs(out)
    }

    /// Tensor of shape `[dim_g, dim_g, n, n]`.
    pub fn to_tensor(&self) -> SparseTensor {
        let dim_g = self.slices.len();
        let n = self.slices.first().map_or(0, |r| r.n);
        let mut entries = Vec::new();
        for (k, r) in self.slices.iter().enumerate() {
            for (idx, x) in r.to_tensor().entries() {
                entries.push((vec![k, idx[0], idx[1], idx[2]], x));
            }
        }
        SparseTensor::from_entries(vec![dim_g, dim_g, n, n], entries)
    }
}

/// Serializable summary of a computed space.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SpaceReport {
    pub space: String,
    pub ambient_dim: usize,
    pub computed_dim: usize,
    pub method: &'static str,
    pub residual_checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Self {
            name: name.into(),
            pass,
        }
    }
}
