//! Chevalley bases with structure constants fixed by extraspecial pairs.
//!
//! Basis order: positive root vectors (in root order), then `h_1..h_r`, then
//! negative root vectors (in the same order as their positives).

use std::collections::HashMap;

use malachite_base::num::basic::traits::Zero;

use super::matrix::{MatrixRep, SparseMatrix};
use crate::arith::{to_i64, Q};
use crate::error::{Error, Result};
use crate::lie::{RootSystem, Weight};
use crate::sparse::{Accumulator, SparseVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisElement {
    /// Root vector `e_alpha` for the root with this index.
    Root(usize),
    /// Cartan element `h_i` (0-based node).
    Cartan(usize),
}

#[derive(Debug, Clone)]
pub struct ChevalleyBasis {
    rs: RootSystem,
    n: HashMap<(usize, usize), i64>,
    brackets: Vec<Vec<SparseVec>>,
    weights: Vec<Weight>,
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

fn is_positive(a: &[i64]) -> bool {
    a.iter().any(|&x| x > 0)
}

/// Largest `p` with `beta - p*alpha` a root.
fn string_down(rs: &RootSystem, alpha: &[i64], beta: &[i64]) -> i64 {
    let mut p = 0;
    let mut cur = beta.to_vec();
    loop {
        cur = cur.iter().zip(alpha).map(|(x, y)| x - y).collect();
        if !rs.is_root(&cur) {
            return p;
        }
        p += 1;
    }
}

struct ConstantSolver<'a> {
    rs: &'a RootSystem,
    pos: HashMap<(usize, usize), i64>,
}

impl ConstantSolver<'_> {
    fn norm(&self, a: &[i64]) -> Q {
        self.rs.inner_roots(a, a)
    }

    /// `N_{x,y}` for arbitrary roots, reduced to positive pairs already solved.
    fn general(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        let z = add(x, y);
        if !self.rs.is_root(&z) {
            return Ok(0);
        }
        let (xp, yp) = (is_positive(x), is_positive(y));
        if xp && yp {
            let key = (
                self.rs.root_index(x).unwrap(),
                self.rs.root_index(y).unwrap(),
            );
            return self.pos.get(&key).copied().ok_or_else(|| {
                Error::Inconsistent(format!("structure constant {key:?} not yet fixed"))
            });
        }
        if !xp && !yp {
            return Ok(-self.general(&neg(x), &neg(y))?);
        }
        // x + y + w = 0 with N_{x,y}/(w,w) = N_{y,w}/(x,x) = N_{w,x}/(y,y)
        let w = neg(&z);
        let (val, ratio) = if is_positive(&w) == yp {
            (self.general(y, &w)?, self.norm(&w) / self.norm(x))
        } else {
            (self.general(&w, x)?, self.norm(&w) / self.norm(y))
        };
        to_i64(&(Q::from(val) * ratio))
            .ok_or_else(|| Error::Inconsistent("non-integral structure constant".into()))
    }
}

/// Structure constants `N_{alpha,beta}` for all root pairs whose sum is a root.
/// Extraspecial pairs receive `+(p+1)`.
fn structure_constants(rs: &RootSystem) -> Result<HashMap<(usize, usize), i64>> {
    let np = rs.num_positive();
    let pos: Vec<Vec<i64>> = rs.positive_roots().to_vec();
    let mut solver = ConstantSolver {
        rs,
        pos: HashMap::new(),
    };
    for xi in 0..np {
        let special: Vec<(usize, usize)> = (0..xi)
            .filter_map(|a| {
                let rest: Vec<i64> = pos[xi].iter().zip(&pos[a]).map(|(x, y)| x - y).collect();
                rs.root_index(&rest)
                    .filter(|&b| b < np && a < b)
                    .map(|b| (a, b))
            })
            .collect();
        let Some(&(alpha, beta)) = special.first() else {
            continue;
        };
        let n_ab = string_down(rs, &pos[alpha], &pos[beta]) + 1;
        solver.pos.insert((alpha, beta), n_ab);
        solver.pos.insert((beta, alpha), -n_ab);
        let (a, b) = (&pos[alpha], &pos[beta]);
        for &(gamma, delta) in &special[1..] {
            let (g, d) = (&pos[gamma], &pos[delta]);
            let (ng, nd) = (neg(g), neg(d));
            let mut s = Q::ZERO;
            let bg = add(b, &ng);
            if rs.is_root(&bg) {
                let t = Q::from(solver.general(b, &ng)? * solver.general(a, &nd)?);
                s += t / solver.norm(&bg);
            }
            let ag = add(a, &ng);
            if rs.is_root(&ag) {
                let t = Q::from(solver.general(&ng, a)? * solver.general(b, &nd)?);
                s += t / solver.norm(&ag);
            }
            let v = s * solver.norm(&pos[xi]) / Q::from(n_ab);
            let v = to_i64(&v).ok_or_else(|| {
                Error::Inconsistent(format!("non-integral N for roots {gamma},{delta}"))
            })?;
            solver.pos.insert((gamma, delta), v);
            solver.pos.insert((delta, gamma), -v);
        }
    }
    let mut all = HashMap::new();
    let nr = rs.num_roots();
    for i in 0..nr {
        let x = rs.root(i);
        for j in 0..nr {
            let y = rs.root(j);
            if rs.is_root(&add(&x, &y)) {
                let v = solver.general(&x, &y)?;
                let p = string_down(rs, &x, &y);
                if v.abs() != p + 1 {
                    return Err(Error::Inconsistent(format!(
                        "|N| = {} but p+1 = {} for roots {i},{j}",
                        v.abs(),
                        p + 1
                    )));
                }
                all.insert((i, j), v);
            }
        }
    }
    Ok(all)
}

/// Builds the Chevalley basis and checks antisymmetry and the Jacobi identity.
pub fn chevalley_constants(rs: &RootSystem) -> Result<ChevalleyBasis> {
    let cb = ChevalleyBasis::from_constants(rs.clone(), structure_constants(rs)?);
    cb.check_jacobi()?;
    Ok(cb)
}

impl ChevalleyBasis {
    /// Assembles the bracket table from a full table of `N` constants.
    pub fn from_constants(rs: RootSystem, n: HashMap<(usize, usize), i64>) -> Self {
        let r = rs.rank();
        let np = rs.num_positive();
        let dim = rs.dim();
        let mut weights = Vec::with_capacity(dim);
        for b in 0..dim {
            weights.push(match Self::element_for(np, r, b) {
                BasisElement::Root(k) => rs.root_to_weight(&rs.root(k)),
                BasisElement::Cartan(_) => Weight::zero(r),
            });
        }
        let mut cb = ChevalleyBasis {
            rs,
            n,
            brackets: Vec::new(),
            weights,
        };
        cb.brackets = (0..dim)
            .map(|i| (0..dim).map(|j| cb.basis_bracket(i, j)).collect())
            .collect();
        cb
    }

    fn element_for(np: usize, r: usize, b: usize) -> BasisElement {
        if b < np {
            BasisElement::Root(b)
        } else if b < np + r {
            BasisElement::Cartan(b - np)
        } else {
            BasisElement::Root(b - r)
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.rs.dim()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn element(&self, b: usize) -> BasisElement {
        Self::element_for(self.rs.num_positive(), self.rs.rank(), b)
    }

    pub fn root_basis_index(&self, k: usize) -> usize {
        if k < self.rs.num_positive() {
            k
        } else {
            k + self.rs.rank()
        }
    }

    pub fn cartan_basis_index(&self, i: usize) -> usize {
        self.rs.num_positive() + i
    }

    /// Weight of the basis element (zero for Cartan elements).
    pub fn weight(&self, b: usize) -> &Weight {
        &self.weights[b]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// `N_{alpha,beta}` by root indices; zero when the sum is not a root.
    pub fn n(&self, a: usize, b: usize) -> i64 {
        self.n.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn constants(&self) -> &HashMap<(usize, usize), i64> {
        &self.n
    }

    /// Coroot `h_alpha` in the basis `h_1..h_r`, as basis-index coordinates.
    fn coroot(&self, k: usize) -> SparseVec {
        let root = self.rs.root(k);
        let d_alpha = self.rs.inner_roots(&root, &root) / Q::from(2);
        let pairs = root
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let coeff = Q::from(c * self.rs.symmetrizer()[i]) / &d_alpha;
                (self.cartan_basis_index(i), coeff)
            })
            .collect();
        SparseVec::from_pairs(pairs)
    }

    fn basis_bracket(&self, i: usize, j: usize) -> SparseVec {
        match (self.element(i), self.element(j)) {
            (BasisElement::Cartan(_), BasisElement::Cartan(_)) => SparseVec::new(),
            (BasisElement::Cartan(a), BasisElement::Root(_)) => {
                let c = self.weights[j].0[a];
                SparseVec::unit(j).scale(&Q::from(c))
            }
            (BasisElement::Root(_), BasisElement::Cartan(b)) => {
                let c = -self.weights[i].0[b];
                SparseVec::unit(i).scale(&Q::from(c))
            }
            (BasisElement::Root(a), BasisElement::Root(b)) => {
                if self.rs.negate_index(a) == b {
                    return self.coroot(a);
                }
                let s = add(&self.rs.root(a), &self.rs.root(b));
                match self.rs.root_index(&s) {
                    Some(k) => {
                        SparseVec::unit(self.root_basis_index(k)).scale(&Q::from(self.n(a, b)))
                    }
                    None => SparseVec::new(),
                }
            }
        }
    }

    /// `[x_i, x_j]` for basis elements.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.dim());
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                acc.add_scaled(&self.brackets[*i][*j], &(a * b));
            }
        }
        acc.take()
    }

    /// `[x_i, y]`.
    pub fn ad_basis(&self, i: usize, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.dim());
        for (j, b) in y.entries() {
            acc.add_scaled(&self.brackets[i][*j], b);
        }
        acc.take()
    }

    /// Exhaustive antisymmetry and Jacobi check on basis triples.
    pub fn check_jacobi(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            if !self.brackets[i][i].is_zero() {
                return Err(Error::Inconsistent(format!("[x_{i}, x_{i}] != 0")));
            }
            for j in i + 1..dim {
                if self.brackets[i][j] != self.brackets[j][i].scale(&Q::from(-1)) {
                    return Err(Error::Inconsistent(format!(
                        "bracket not antisymmetric at {i},{j}"
                    )));
                }
            }
        }
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    let mut acc = Accumulator::new(dim);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, x) in self.brackets[b][c].entries() {
                            acc.add_scaled(&self.brackets[a][*m], x);
                        }
                    }
                    if !acc.take().is_zero() {
                        return Err(Error::Inconsistent(format!("Jacobi fails on {i},{j},{k}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Simple generators `e_i`, `f_i`, `h_i` as basis indices.
    pub fn simple_generators(&self) -> Vec<usize> {
        let r = self.rank();
        let np = self.rs.num_positive();
        let mut out = Vec::with_capacity(3 * r);
        for i in 0..r {
            let mut simple = vec![0; r];
            simple[i] = 1;
            let k = self.rs.root_index(&simple).expect("simple root");
            out.push(self.root_basis_index(k));
            out.push(self.root_basis_index(k + np));
            out.push(self.cartan_basis_index(i));
        }
        out
    }
}

/// Adjoint representation together with the Killing (trace) form.
pub fn build_adjoint(cb: &ChevalleyBasis) -> (MatrixRep, SparseMatrix) {
    let dim = cb.dim();
    let gens: Vec<SparseMatrix> = (0..dim)
        .map(|i| SparseMatrix::from_columns(dim, cb.brackets[i].clone()))
        .collect();
    let mut t = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let wsum = cb.weight(i).add(cb.weight(j));
            if wsum.0.iter().any(|&x| x != 0) {
                continue;
            }
            let v = gens[i].trace_product(&gens[j]);
            if v != Q::ZERO {
                t.push((i, j, v));
            }
        }
    }
    let killing = SparseMatrix::from_triplets(dim, dim, t);
    (MatrixRep::new(dim, gens, Some(cb.weights.clone())), killing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn sl2_triple() {
        let rs = RootSystem::from_dynkin("A1").unwrap();
        let cb = chevalley_constants(&rs).unwrap();
        assert_eq!(cb.dim(), 3);
        // e, h, f
        assert_eq!(cb.bracket_basis(0, 2), &SparseVec::unit(1));
        assert_eq!(cb.bracket_basis(1, 0), &SparseVec::unit(0).scale(&q(2)));
        assert_eq!(cb.bracket_basis(1, 2), &SparseVec::unit(2).scale(&q(-2)));
        let (ad, b) = build_adjoint(&cb);
        assert_eq!(ad.dim(), 3);
        assert_eq!(b.get(1, 1), q(8));
        assert_eq!(b.get(0, 2), q(4));
    }

    #[test]
    fn a2_constants_are_unit_and_antisymmetric() {
        let rs = RootSystem::from_dynkin("A2").unwrap();
        let cb = chevalley_constants(&rs).unwrap();
        assert_eq!(cb.constants().len(), 12);
        for (&(a, b), &v) in cb.constants() {
            assert_eq!(v.abs(), 1);
            assert_eq!(cb.n(b, a), -v);
        }
    }

    #[test]
    fn non_simply_laced_jacobi() {
        for label in ["B3", "C3", "G2", "F4"] {
            let rs = RootSystem::from_dynkin(label).unwrap();
            let cb = chevalley_constants(&rs).unwrap();
            let max = cb.constants().values().map(|v| v.abs()).max().unwrap();
            assert!(max <= 3, "{label}");
        }
    }

    #[test]
    fn killing_form_invariant_b2() {
        let rs = RootSystem::from_dynkin("B2").unwrap();
        let cb = chevalley_constants(&rs).unwrap();
        let (ad, b) = build_adjoint(&cb);
        let n = cb.dim();
        for a in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let x = b.bilinear(cb.bracket_basis(a, c), &SparseVec::unit(d))
                        + b.bilinear(&SparseVec::unit(c), cb.bracket_basis(a, d));
                    assert_eq!(x, q(0));
                }
            }
        }
        assert_eq!(ad.span_rank(), n);
    }
}
