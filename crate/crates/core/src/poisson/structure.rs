use std::collections::BTreeMap;

use malachite_base::num::basic::traits::Zero;

use super::phi::{act_vec, PhiMap, WPoint, WVector};
use crate::arith::Q;
use crate::rep::SymplecticModel;
use crate::sparse::{rank, SparseVec};

/// The bracket
/// `{f, g}(p + nu) = p([A, B]) + nu(A.y - B.x) + phi(p)(x, y)`
/// for `df = A + x`, `dg = B + y`.
#[derive(Debug, Clone)]
pub struct Poisson<'a> {
    model: &'a SymplecticModel,
    phi: PhiMap,
}

impl<'a> Poisson<'a> {
    pub fn new(model: &'a SymplecticModel, phi: PhiMap) -> Self {
        assert_eq!((phi.dim_g(), phi.dim_v()), (model.dim_g(), model.dim_v()));
        Self { model, phi }
    }

    pub fn model(&self) -> &SymplecticModel {
        self.model
    }

    pub fn phi(&self) -> &PhiMap {
        &self.phi
    }

    /// `dim W*`.
    pub fn dim(&self) -> usize {
        self.model.dim_g() + self.model.dim_v()
    }

    /// The bivector at `pt` on two differentials.
    pub fn pi(&self, pt: &WPoint, u: &WVector, v: &WVector) -> Q {
        let m = self.model;
        let mut s = m.algebra.bracket(&u.a, &v.a).dot_dense(&pt.p);
        let t = act_vec(&m.rep, &u.a, &v.x).add_scaled(&act_vec(&m.rep, &v.a, &u.x), &Q::from(-1));
        s += t.dot_dense(&pt.nu);
        s + self.phi.value(&pt.p, &u.x, &v.x)
    }

    /// Differential at `pt` of the function `{u, v}` for linear `u`, `v`.
    pub fn bracket_gradient(&self, pt: &WPoint, u: &WVector, v: &WVector) -> WVector {
        let m = self.model;
        let a = m
            .algebra
            .bracket(&u.a, &v.a)
            .add_scaled(&self.phi.dual_differential(&pt.p, &u.x, &v.x), &Q::from(1));
        let x = act_vec(&m.rep, &u.a, &v.x).add_scaled(&act_vec(&m.rep, &v.a, &u.x), &Q::from(-1));
        WVector::new(a, x)
    }

    /// Hamiltonian vector of `u` at `pt`: the point `eta -> pi(u, eta)` of `W*`.
    pub fn hamiltonian(&self, pt: &WPoint, u: &WVector) -> WPoint {
        let (dg, n) = (self.model.dim_g(), self.model.dim_v());
        let p = (0..dg)
            .map(|i| self.pi(pt, u, &WVector::basis(dg, i)))
            .collect();
        let nu = (0..n)
            .map(|i| self.pi(pt, u, &WVector::basis(dg, dg + i)))
            .collect();
        WPoint { p, nu }
    }

    /// `{{u, v}, w} + {{v, w}, u} + {{w, u}, v}` at `pt`.
    pub fn jacobi_residual(&self, pt: &WPoint, triple: [&WVector; 3]) -> Q {
        let [u, v, w] = triple;
        self.pi(pt, &self.bracket_gradient(pt, u, v), w)
            + self.pi(pt, &self.bracket_gradient(pt, v, w), u)
            + self.pi(pt, &self.bracket_gradient(pt, w, u), v)
    }

    /// `{f, g}` at `pt` for polynomial observables.
    pub fn bracket(&self, f: &PolyObservable, g: &PolyObservable, pt: &WPoint) -> Q {
        self.pi(pt, &f.gradient(pt), &g.gradient(pt))
    }

    /// Rows of the antisymmetric matrix `pi(e_i, e_j)` at `pt`.
    pub fn structure_matrix(&self, pt: &WPoint) -> Vec<SparseVec> {
        let d = self.dim();
        let dg = self.model.dim_g();
        let basis: Vec<WVector> = (0..d).map(|i| WVector::basis(dg, i)).collect();
        let mut rows = vec![Vec::new(); d];
        for i in 0..d {
            for j in i + 1..d {
                let x = self.pi(pt, &basis[i], &basis[j]);
                if x != Q::ZERO {
                    rows[j].push((i, -&x));
                    rows[i].push((j, x));
                }
            }
        }
        rows.into_iter().map(SparseVec::from_pairs).collect()
    }

    /// Exact rank `2k` of the bivector at `pt`.
    pub fn rank(&self, pt: &WPoint) -> usize {
        rank(&self.structure_matrix(pt), self.dim())
    }
}

/// Polynomial on `W*` with coordinates `p_0 .. p_{dim g - 1}, nu_0, ..`;
/// monomials are sorted lists of coordinate indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyObservable {
    dim_g: usize,
    n: usize,
    terms: BTreeMap<Vec<usize>, Q>,
}

impl PolyObservable {
    pub fn zero(dim_g: usize, n: usize) -> Self {
        Self {
            dim_g,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim_g: usize, n: usize, c: Q) -> Self {
        let mut out = Self::zero(dim_g, n);
        out.add_term(Vec::new(), c);
        out
    }

    pub fn linear(dim_g: usize, n: usize, w: &WVector) -> Self {
        let mut out = Self::zero(dim_g, n);
        for (i, c) in w.a.entries() {
            out.add_term(vec![*i], c.clone());
        }
        for (i, c) in w.x.entries() {
            out.add_term(vec![dim_g + i], c.clone());
        }
        out
    }

    fn add_term(&mut self, mut mono: Vec<usize>, c: Q) {
        if c == Q::ZERO {
            return;
        }
        mono.sort_unstable();
        let e = self.terms.entry(mono).or_insert(Q::ZERO);
        *e += c;
        if *e == Q::ZERO {
            self.terms.retain(|_, v| *v != Q::ZERO);
        }
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.dim_g, self.n);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim_g, self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mono = m1.iter().chain(m2).copied().collect();
                out.add_term(mono, c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, pt: &WPoint) -> Q {
        self.terms
            .iter()
            .map(|(m, c)| m.iter().fold(c.clone(), |acc, i| acc * pt.coord(*i)))
            .sum()
    }

    /// `df` at `pt`, split as `A + x`.
    pub fn gradient(&self, pt: &WPoint) -> WVector {
        let mut grad: BTreeMap<usize, Q> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (pos, i) in m.iter().enumerate() {
                // skip repeated factors; their multiplicity is counted below
                if pos > 0 && m[pos - 1] == *i {
                    continue;
                }
                let mult = m.iter().filter(|j| *j == i).count();
                let rest = m
                    .iter()
                    .enumerate()
                    .filter(|(q, _)| *q != pos)
                    .fold(c * Q::from(mult as u64), |acc, (_, j)| acc * pt.coord(*j));
                *grad.entry(*i).or_insert(Q::ZERO) += rest;
            }
        }
        let a = grad
            .iter()
            .filter(|(i, _)| **i < self.dim_g)
            .map(|(i, x)| (*i, x.clone()));
        let x = grad
            .iter()
            .filter(|(i, _)| **i >= self.dim_g)
            .map(|(i, x)| (i - self.dim_g, x.clone()));
        WVector::new(
            SparseVec::from_pairs(a.collect()),
            SparseVec::from_pairs(x.collect()),
        )
    }
}
