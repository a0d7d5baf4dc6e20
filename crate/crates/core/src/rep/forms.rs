//! Invariant pairing, the symmetric map `u o v`, and the constant `mu`.

use std::collections::HashMap;

use malachite_base::num::basic::traits::{One, Zero};
use rand::Rng;

use super::matrix::{MatrixRep, SparseMatrix};
use crate::arith::{random_vector, Q};
use crate::error::{Error, Result};
use crate::lie::Weight;
use crate::sparse::{kernel, pair_index, Accumulator, SparseVec};

/// Invariant skew form on `V`, stored as the full skew matrix `omega(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantPairing {
    matrix: SparseMatrix,
}

impl InvariantPairing {
    pub fn from_matrix(matrix: SparseMatrix) -> Result<Self> {
        if matrix.transpose() != matrix.scale(&Q::from(-1)) {
            return Err(Error::Invalid("pairing matrix is not skew".into()));
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn get(&self, a: usize, b: usize) -> Q {
        self.matrix.get(a, b)
    }

    pub fn pair(&self, u: &SparseVec, v: &SparseVec) -> Q {
        self.matrix.bilinear(u, v)
    }

    pub fn pair_dense(&self, u: &[Q], v: &[Q]) -> Q {
        let mv = self.matrix.apply_dense(v);
        u.iter()
            .zip(&mv)
            .filter(|(x, _)| **x != Q::ZERO)
            .map(|(x, y)| x * y)
            .sum()
    }

    /// `omega(., v)` as a covector, i.e. the identification `V -> V*`.
    pub fn lower(&self, v: &SparseVec) -> SparseVec {
        self.matrix.apply(v)
    }

    /// Number of (generator, basis pair) combinations where
    /// `<Xu, v> + <u, Xv>` is nonzero.
    pub fn invariance_failures(&self, rep: &MatrixRep) -> usize {
        let n = self.dim();
        let mut bad = 0;
        for x in rep.gens() {
            // X^T Omega + Omega X must vanish
            let m = x
                .transpose()
                .mul(&self.matrix)
                .add_scaled(&self.matrix.mul(x), &Q::ONE);
            bad += (0..n).map(|j| m.col(j).nnz()).sum::<usize>();
        }
        bad / 2
    }

    /// Whether the form is non-degenerate.
    pub fn is_nondegenerate(&self) -> bool {
        crate::sparse::rank(self.matrix.columns(), self.dim()) == self.dim()
    }
}

/// Solves the invariance equations on `Lambda^2 V*` and returns the unique
/// solution normalised so that the highest and lowest basis vectors pair to 1.
pub fn invariant_symplectic(rep: &MatrixRep) -> Result<InvariantPairing> {
    let n = rep.dim();
    if n < 2 {
        return Err(Error::SolutionSpace {
            what: "invariant skew forms",
            expected: 1,
            found: 0,
        });
    }
    let npairs = n * (n - 1) / 2;
    // coefficient of omega(c, d) as an unknown, with skew folding
    let push = |row: &mut Vec<(usize, Q)>, c: usize, d: usize, x: &Q| {
        if c < d {
            row.push((pair_index(n, c, d), x.clone()));
        } else if d < c {
            row.push((pair_index(n, d, c), -x));
        }
    };
    let mut rows = Vec::new();
    for x in rep.gens() {
        for a in 0..n {
            for b in a + 1..n {
                let mut row = Vec::new();
                for (c, v) in x.col(a).entries() {
                    push(&mut row, *c, b, v);
                }
                for (c, v) in x.col(b).entries() {
                    push(&mut row, a, *c, v);
                }
                let row = SparseVec::from_pairs(row);
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
    }
    let sol = kernel(&rows, npairs);
    if sol.len() != 1 {
        return Err(Error::SolutionSpace {
            what: "invariant skew forms",
            expected: 1,
            found: sol.len(),
        });
    }
    let v = &sol[0];
    let mut t = Vec::with_capacity(2 * v.nnz());
    for a in 0..n {
        for b in a + 1..n {
            let x = v.get(pair_index(n, a, b));
            if x != Q::ZERO {
                t.push((a, b, x.clone()));
                t.push((b, a, -x));
            }
        }
    }
    let m = SparseMatrix::from_triplets(n, n, t);
    let corner = m.get(0, n - 1);
    let m = if corner == Q::ZERO {
        m
    } else {
        m.scale(&(Q::ONE / corner))
    };
    InvariantPairing::from_matrix(m)
}

/// Symmetric equivariant map `V x V -> g`, defined by
/// `<rho(A)u, v> = lambda B(A, u o v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircProduct {
    n: usize,
    dim_g: usize,
    table: Vec<SparseVec>,
    lowered: Vec<SparseVec>,
    killing: SparseMatrix,
}

impl CircProduct {
    fn idx(&self, a: usize, b: usize) -> usize {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        a * self.n - a * (a + 1) / 2 + b
    }

    pub fn dim_v(&self) -> usize {
        self.n
    }

    pub fn dim_g(&self) -> usize {
        self.dim_g
    }

    /// `e_a o e_b` in algebra coordinates.
    pub fn get(&self, a: usize, b: usize) -> &SparseVec {
        &self.table[self.idx(a, b)]
    }

    /// `B(e_a o e_b, .)` as a covector on the algebra.
    pub fn lowered(&self, a: usize, b: usize) -> &SparseVec {
        &self.lowered[self.idx(a, b)]
    }

    pub fn killing(&self) -> &SparseMatrix {
        &self.killing
    }

    pub fn apply(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.dim_g);
        for (a, x) in u.entries() {
            for (b, y) in v.entries() {
                acc.add_scaled(self.get(*a, *b), &(x * y));
            }
        }
        acc.take()
    }

    pub fn apply_dense(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        self.apply(&SparseVec::from_dense(u), &SparseVec::from_dense(v))
            .to_dense(self.dim_g)
    }

    /// Copy with `e_a o e_b` shifted by `delta` times the algebra basis vector `k`.
    pub fn perturbed(&self, a: usize, b: usize, k: usize, delta: &Q) -> CircProduct {
        let mut out = self.clone();
        let i = self.idx(a, b);
        out.table[i] = out.table[i].add_scaled(&SparseVec::unit(k), delta);
        out.lowered[i] = self.killing.transpose().apply(&out.table[i]);
        out
    }

    /// Number of basis pairs where `e_a o e_b != e_b o e_a` when both orders are
    /// computed from the defining relation.
    pub fn symmetry_failures(rep: &MatrixRep, pairing: &InvariantPairing) -> usize {
        let n = rep.dim();
        let mut bad = 0;
        for a in 0..n {
            for b in a + 1..n {
                if defining_covector(rep, pairing, a, b) != defining_covector(rep, pairing, b, a) {
                    bad += 1;
                }
            }
        }
        bad
    }

    /// Checks `[A, u o v] = (Au) o v + u o (Av)` for every algebra basis element
    /// `A` and basis pair; `ad` is the adjoint representation. Returns the
    /// number of failures.
    pub fn equivariance_failures(&self, rep: &MatrixRep, ad: &MatrixRep) -> usize {
        let n = self.n;
        let mut bad = 0;
        for k in 0..ad.algebra_dim() {
            let x = rep.matrix(k);
            let adx = ad.matrix(k);
            for a in 0..n {
                for b in a..n {
                    let lhs = adx.apply(self.get(a, b));
                    let rhs = self
                        .apply(x.col(a), &SparseVec::unit(b))
                        .add_scaled(&self.apply(&SparseVec::unit(a), x.col(b)), &Q::ONE);
                    if lhs != rhs {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }
}

/// `(<rho(x_k) e_a, e_b>)_k`.
fn defining_covector(rep: &MatrixRep, pairing: &InvariantPairing, a: usize, b: usize) -> SparseVec {
    let col_b = pairing.matrix().col(b);
    SparseVec::from_pairs(
        rep.gens()
            .iter()
            .enumerate()
            .map(|(k, x)| (k, x.col(a).dot(col_b)))
            .collect(),
    )
}

pub fn circ_product(
    rep: &MatrixRep,
    killing: &SparseMatrix,
    killing_inv: &SparseMatrix,
    pairing: &InvariantPairing,
    lambda: &Q,
) -> CircProduct {
    let n = rep.dim();
    let dim_g = rep.algebra_dim();
    let inv_lambda = Q::ONE / lambda;
    let mut table = Vec::with_capacity(n * (n + 1) / 2);
    let mut lowered = Vec::with_capacity(n * (n + 1) / 2);
    for a in 0..n {
        for b in a..n {
            let t = defining_covector(rep, pairing, a, b).scale(&inv_lambda);
            table.push(killing_inv.apply(&t));
            lowered.push(t);
        }
    }
    CircProduct {
        n,
        dim_g,
        table,
        lowered,
        killing: killing.clone(),
    }
}

/// Right-hand side `2<u,s><v,t> + <u,t><v,s> + <u,v><s,t>` on basis vectors.
fn quartic_rhs(p: &InvariantPairing, u: usize, v: usize, s: usize, t: usize) -> Q {
    Q::from(2) * p.get(u, s) * p.get(v, t) + p.get(u, t) * p.get(v, s) + p.get(u, v) * p.get(s, t)
}

/// Left-hand side `B(u o v, s o t) - B(u o t, s o v)` on basis vectors.
fn quartic_lhs(c: &CircProduct, u: usize, v: usize, s: usize, t: usize) -> Q {
    c.lowered(u, v).dot(c.get(s, t)) - c.lowered(u, t).dot(c.get(s, v))
}

/// Solves the quartic identity for `mu` on the first basis quadruple with a
/// nonzero right-hand side.
pub fn derive_mu(pairing: &InvariantPairing, circ: &CircProduct) -> Result<Q> {
    let n = pairing.dim();
    // quadruples through the extremal pair (0, n-1) reach a nonzero right side fastest
    for u in 0..n {
        for s in (0..n).rev() {
            if pairing.get(u, s) == Q::ZERO {
                continue;
            }
            for v in 0..n {
                for t in 0..n {
                    let rhs = quartic_rhs(pairing, u, v, s, t);
                    if rhs != Q::ZERO {
                        let mu = quartic_lhs(circ, u, v, s, t) / rhs;
                        if mu == Q::ZERO {
                            return Err(Error::Inconsistent(
                                "quartic identity forces mu = 0".into(),
                            ));
                        }
                        return Ok(mu);
                    }
                }
            }
        }
    }
    Err(Error::Inconsistent("pairing vanishes identically".into()))
}

/// Fits `B(u o v, s o t) - B(u o t, s o v)` against the three products
/// `<u,s><v,t>`, `<u,t><v,s>`, `<u,v><s,t>` on up to `limit` basis quadruples.
/// Returns `[2, b, c, mu]` with the identity reading `mu (2 X1 + b X2 + c X3)`,
/// or `None` when the fit is not unique.
pub fn quartic_shape(
    pairing: &InvariantPairing,
    circ: &CircProduct,
    limit: usize,
) -> Option<[Q; 4]> {
    let n = pairing.dim();
    let p = pairing;
    let mut rows = Vec::new();
    'outer: for u in 0..n {
        for v in 0..n {
            for s in 0..n {
                for t in 0..n {
                    if rows.len() >= limit {
                        break 'outer;
                    }
                    let lhs = quartic_lhs(circ, u, v, s, t);
                    let row = SparseVec::from_pairs(vec![
                        (0, p.get(u, s) * p.get(v, t)),
                        (1, p.get(u, t) * p.get(v, s)),
                        (2, p.get(u, v) * p.get(s, t)),
                        (3, -lhs),
                    ]);
                    if !row.is_zero() {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let k = kernel(&rows, 4);
    if k.len() != 1 {
        return None;
    }
    // coefficients relative to the left-hand side
    let d = k[0].get(3);
    if d == Q::ZERO {
        return None;
    }
    let [a, b, c] = [0, 1, 2].map(|i| k[0].get(i) / &d);
    let m = &a / Q::from(2);
    if m == Q::ZERO {
        return None;
    }
    Some([Q::from(2), &b / &m, &c / &m, m])
}

/// Outcome of a quartic-identity sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticReport {
    pub checked: usize,
    pub failures: usize,
}

impl QuarticReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

/// Exhaustive sweep over basis quadruples. When basis weights are known only
/// quadruples of total weight zero are visited (all others vanish on both
/// sides by weight reasons).
pub fn quartic_sweep(
    pairing: &InvariantPairing,
    circ: &CircProduct,
    mu: &Q,
    weights: Option<&[Weight]>,
) -> QuarticReport {
    let n = pairing.dim();
    let mut checked = 0;
    let mut failures = 0;
    let mut check = |u, v, s, t| {
        checked += 1;
        if quartic_lhs(circ, u, v, s, t) != mu * quartic_rhs(pairing, u, v, s, t) {
            failures += 1;
        }
    };
    match weights {
        Some(ws) => {
            let mut by_sum: HashMap<Weight, Vec<(usize, usize)>> = HashMap::new();
            for s in 0..n {
                for t in 0..n {
                    by_sum.entry(ws[s].add(&ws[t])).or_default().push((s, t));
                }
            }
            for u in 0..n {
                for v in 0..n {
                    if let Some(list) = by_sum.get(&ws[u].add(&ws[v]).neg()) {
                        for &(s, t) in list {
                            check(u, v, s, t);
                        }
                    }
                }
            }
        }
        None => {
            for u in 0..n {
                for v in 0..n {
                    for s in 0..n {
                        for t in 0..n {
                            check(u, v, s, t);
                        }
                    }
                }
            }
        }
    }
    QuarticReport { checked, failures }
}

/// The quartic identity on `count` random rational quadruples.
pub fn quartic_random<R: Rng + ?Sized>(
    pairing: &InvariantPairing,
    circ: &CircProduct,
    mu: &Q,
    rng: &mut R,
    count: usize,
) -> QuarticReport {
    let n = pairing.dim();
    let b = circ.killing();
    let mut failures = 0;
    for _ in 0..count {
        let [u, v, s, t] = [0; 4].map(|_| SparseVec::from_dense(&random_vector(rng, n)));
        let form = |x: &SparseVec, y: &SparseVec| b.bilinear(x, y);
        let lhs = form(&circ.apply(&u, &v), &circ.apply(&s, &t))
            - form(&circ.apply(&u, &t), &circ.apply(&s, &v));
        let p = |x: &SparseVec, y: &SparseVec| pairing.pair(x, y);
        let rhs =
            Q::from(2) * p(&u, &s) * p(&v, &t) + p(&u, &t) * p(&v, &s) + p(&u, &v) * p(&s, &t);
        if lhs != mu * rhs {
            failures += 1;
        }
    }
    QuarticReport {
        checked: count,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn sl2_sym(k: usize) -> MatrixRep {
        // basis x^{k-i} y^i; e = x d/dy, f = y d/dx, h = x d/dx - y d/dy
        let n = k + 1;
        let mut e = Vec::new();
        let mut f = Vec::new();
        let mut h = Vec::new();
        for i in 0..n {
            h.push((i, i, q(k as i64 - 2 * i as i64)));
            if i > 0 {
                e.push((i - 1, i, q(i as i64)));
            }
            if i < k {
                f.push((i + 1, i, q((k - i) as i64)));
            }
        }
        MatrixRep::new(
            n,
            vec![
                SparseMatrix::from_triplets(n, n, e),
                SparseMatrix::from_triplets(n, n, h),
                SparseMatrix::from_triplets(n, n, f),
            ],
            None,
        )
    }

    #[test]
    fn sl2_area_form() {
        let p = invariant_symplectic(&sl2_sym(1)).unwrap();
        assert_eq!(p.get(0, 1), q(1));
        assert_eq!(p.get(1, 0), q(-1));
        assert_eq!(p.invariance_failures(&sl2_sym(1)), 0);
    }

    #[test]
    fn orthogonal_rep_has_no_skew_invariant() {
        match invariant_symplectic(&sl2_sym(2)) {
            Err(Error::SolutionSpace { found, .. }) => assert_eq!(found, 0),
            other => panic!("unexpected {other:?}"),
        }
        let p = invariant_symplectic(&sl2_sym(3)).unwrap();
        assert!(p.is_nondegenerate());
    }

    #[test]
    fn pair_index_is_dense() {
        let n = 5;
        let mut seen = vec![false; n * (n - 1) / 2];
        for a in 0..n {
            for b in a + 1..n {
                seen[pair_index(n, a, b)] = true;
            }
        }
        assert!(seen.into_iter().all(|x| x));
    }
}
