use malachite_base::num::basic::traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{random_vector, Q};
use crate::curvature::{CurvatureElement, TwoSlotCurvature};
use crate::rep::{InvariantPairing, MatrixRep};
use crate::sparse::{pair_from_index, pair_index, Accumulator, SparseVec};

/// `phi(p) = phi2(p, p) + tau <,>`, a map `g* -> Lambda^2 V*`.
///
/// The quadratic part is stored per pair `a < b` as terms `(k, l, c)`,
/// contributing `c p_k p_l` to `phi(p)(e_a, e_b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiMap {
    dim_g: usize,
    n: usize,
    quad: Vec<Vec<(usize, usize, Q)>>,
    tau: Q,
    pairing: InvariantPairing,
}

impl PhiMap {
    /// `phi2 = sum_k x_k (x) slice_k`.
    pub fn from_two_slot(phi2: &TwoSlotCurvature, pairing: &InvariantPairing, tau: Q) -> Self {
        let n = pairing.dim();
        let mut quad = vec![Vec::new(); n * n.saturating_sub(1) / 2];
        for (k, slice) in phi2.slices().iter().enumerate() {
            for (p, v) in slice.pair_values().iter().enumerate() {
                for (l, c) in v.entries() {
                    quad[p].push((k, *l, c.clone()));
                }
            }
        }
        Self {
            dim_g: phi2.dim_g(),
            n,
            quad,
            tau,
            pairing: pairing.clone(),
        }
    }

    /// The purely linear structure (`phi2 = 0`) shifted by `tau`.
    pub fn affine(dim_g: usize, pairing: &InvariantPairing, tau: Q) -> Self {
        let n = pairing.dim();
        Self {
            dim_g,
            n,
            quad: vec![Vec::new(); n * n.saturating_sub(1) / 2],
            tau,
            pairing: pairing.clone(),
        }
    }

    pub fn dim_g(&self) -> usize {
        self.dim_g
    }

    pub fn dim_v(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> &Q {
        &self.tau
    }

    pub fn pairing(&self) -> &InvariantPairing {
        &self.pairing
    }

    pub fn with_tau(&self, tau: Q) -> Self {
        Self {
            tau,
            ..self.clone()
        }
    }

    /// Copy with `delta p_k p_l` added to `phi(p)(e_a, e_b)`, `a < b`.
    pub fn perturbed(&self, a: usize, b: usize, k: usize, l: usize, delta: Q) -> Self {
        let mut out = self.clone();
        out.quad[pair_index(self.n, a, b)].push((k, l, delta));
        out
    }

    /// Pairs `a < b` with a nonzero quadratic part.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.quad
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
            .map(|(p, _)| pair_from_index(self.n, p))
    }

    /// Terms of the pair `(a, b)` with the sign of the orientation.
    fn terms(&self, a: usize, b: usize) -> Option<(&[(usize, usize, Q)], bool)> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some((&self.quad[pair_index(self.n, a, b)], false)),
            std::cmp::Ordering::Greater => Some((&self.quad[pair_index(self.n, b, a)], true)),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// Symmetrised `phi2(p, q)(e_a, e_b)` (without `tau`).
    pub fn quadratic_basis(&self, p: &[Q], q: &[Q], a: usize, b: usize) -> Q {
        let Some((terms, neg)) = self.terms(a, b) else {
            return Q::ZERO;
        };
        let mut s = Q::ZERO;
        for (k, l, c) in terms {
            let x = &p[*k] * &q[*l] + &q[*k] * &p[*l];
            if x != Q::ZERO {
                s += c * x;
            }
        }
        s /= Q::from(2);
        if neg {
            -s
        } else {
            s
        }
    }

    pub fn quadratic(&self, p: &[Q], q: &[Q], x: &SparseVec, y: &SparseVec) -> Q {
        let mut s = Q::ZERO;
        for (a, u) in x.entries() {
            for (b, v) in y.entries() {
                let t = self.quadratic_basis(p, q, *a, *b);
                if t != Q::ZERO {
                    s += t * u * v;
                }
            }
        }
        s
    }

    /// `phi(p)(x, y)`.
    pub fn value(&self, p: &[Q], x: &SparseVec, y: &SparseVec) -> Q {
        let mut s = self.quadratic(p, p, x, y);
        if self.tau != Q::ZERO {
            s += &self.tau * self.pairing.pair(x, y);
        }
        s
    }

    /// `dphi_p^*(e_a, e_b)` in algebra coordinates, added into `acc` with weight `c`.
    fn dual_differential_into(&self, p: &[Q], a: usize, b: usize, c: &Q, acc: &mut Accumulator) {
        let Some((terms, neg)) = self.terms(a, b) else {
            return;
        };
        let c = if neg { -c } else { c.clone() };
        for (k, l, t) in terms {
            let ct = &c * t;
            if p[*k] != Q::ZERO {
                acc.add(*l, &(&ct * &p[*k]));
            }
            if p[*l] != Q::ZERO {
                acc.add(*k, &(&ct * &p[*l]));
            }
        }
    }

    /// `dphi_p^*(x, y)`: the element `C` with `q(C) = dphi_p(q)(x, y)` for all `q`.
    pub fn dual_differential(&self, p: &[Q], x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.dim_g);
        for (a, u) in x.entries() {
            for (b, v) in y.entries() {
                self.dual_differential_into(p, *a, *b, &(u * v), &mut acc);
            }
        }
        acc.take()
    }

    /// `dphi_p^*` as a curvature element.
    pub fn dual_differential_element(&self, p: &[Q]) -> CurvatureElement {
        let mut acc = Accumulator::new(self.dim_g);
        let one = Q::from(1);
        CurvatureElement::from_fn(self.dim_g, self.n, |a, b| {
            self.dual_differential_into(p, a, b, &one, &mut acc);
            acc.take()
        })
    }
}

/// A point `p + nu` of `W* = g* + V*`, in coordinates dual to the bases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WPoint {
    #[serde(with = "crate::arith::qvec")]
    pub p: Vec<Q>,
    #[serde(with = "crate::arith::qvec")]
    pub nu: Vec<Q>,
}

impl WPoint {
    pub fn origin(dim_g: usize, n: usize) -> Self {
        Self {
            p: vec![Q::ZERO; dim_g],
            nu: vec![Q::ZERO; n],
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim_g: usize, n: usize) -> Self {
        Self {
            p: random_vector(rng, dim_g),
            nu: random_vector(rng, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.p.len() + self.nu.len()
    }

    /// Coordinate `i` of the concatenation `(p, nu)`.
    pub fn coord(&self, i: usize) -> &Q {
        if i < self.p.len() {
            &self.p[i]
        } else {
            &self.nu[i - self.p.len()]
        }
    }

    /// `self + c * other`.
    pub fn shifted(&self, other: &WPoint, c: &Q) -> WPoint {
        let add = |x: &[Q], y: &[Q]| x.iter().zip(y).map(|(a, b)| a + c * b).collect();
        WPoint {
            p: add(&self.p, &other.p),
            nu: add(&self.nu, &other.nu),
        }
    }

    pub fn is_origin(&self) -> bool {
        self.p.iter().chain(&self.nu).all(|x| *x == Q::ZERO)
    }
}

/// `rho(a) y` for sparse `a` and `y`.
pub(crate) fn act_vec(rep: &MatrixRep, a: &SparseVec, y: &SparseVec) -> SparseVec {
    let mut acc = Accumulator::new(rep.dim());
    for (k, c) in a.entries() {
        let m = rep.matrix(*k);
        for (j, x) in y.entries() {
            acc.add_scaled(m.col(*j), &(c * x));
        }
    }
    acc.take()
}

/// Linear observable on `W*`, identified with its constant differential
/// `A + x` in `W = g + V`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WVector {
    pub a: SparseVec,
    pub x: SparseVec,
}

impl WVector {
    pub fn new(a: SparseVec, x: SparseVec) -> Self {
        Self { a, x }
    }

    /// Basis vector `i` of `W`, algebra coordinates first.
    pub fn basis(dim_g: usize, i: usize) -> Self {
        if i < dim_g {
            Self::new(SparseVec::unit(i), SparseVec::new())
        } else {
            Self::new(SparseVec::new(), SparseVec::unit(i - dim_g))
        }
    }

    pub fn algebra(a: SparseVec) -> Self {
        Self::new(a, SparseVec::new())
    }

    pub fn module(x: SparseVec) -> Self {
        Self::new(SparseVec::new(), x)
    }

    /// Value of the observable at a point.
    pub fn eval(&self, pt: &WPoint) -> Q {
        self.a.dot_dense(&pt.p) + self.x.dot_dense(&pt.nu)
    }

    pub fn add_scaled(&self, other: &WVector, c: &Q) -> WVector {
        WVector::new(
            self.a.add_scaled(&other.a, c),
            self.x.add_scaled(&other.x, c),
        )
    }

    /// Random combination of `support` basis vectors of `W`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim_g: usize, n: usize, support: usize) -> Self {
        let mut out = WVector::default();
        for _ in 0..support {
            let i = rng.gen_range(0..dim_g + n);
            let c = crate::arith::random_rational(rng);
            out = out.add_scaled(&WVector::basis(dim_g, i), &c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::rep::SparseMatrix;

    fn pairing2() -> InvariantPairing {
        InvariantPairing::from_matrix(SparseMatrix::from_triplets(
            2,
            2,
            vec![(0, 1, q(1)), (1, 0, q(-1))],
        ))
        .unwrap()
    }

    #[test]
    fn affine_value_is_tau() {
        let phi = PhiMap::affine(3, &pairing2(), q(5));
        let p = vec![q(1), q(2), q(3)];
        let (x, y) = (SparseVec::unit(0), SparseVec::unit(1));
        assert_eq!(phi.value(&p, &x, &y), q(5));
        assert_eq!(phi.value(&p, &y, &x), q(-5));
        assert!(phi.dual_differential(&p, &x, &y).is_zero());
    }

    #[test]
    fn quadratic_differential() {
        // phi(p)(e0, e1) = p0 p2
        let phi = PhiMap::affine(3, &pairing2(), q(0)).perturbed(0, 1, 0, 2, q(1));
        let p = vec![q(2), q(7), q(3)];
        let (x, y) = (SparseVec::unit(0), SparseVec::unit(1));
        assert_eq!(phi.value(&p, &x, &y), q(6));
        let d = phi.dual_differential(&p, &x, &y);
        assert_eq!(d, SparseVec::from_pairs(vec![(0, q(3)), (2, q(2))]));
        assert_eq!(
            phi.dual_differential_element(&p).value(1, 0),
            d.scale(&q(-1))
        );
    }

    #[test]
    fn point_shift() {
        let a = WPoint::origin(2, 2);
        let b = WPoint {
            p: vec![q(1), q(2)],
            nu: vec![q(3), q(4)],
        };
        let c = a.shifted(&b, &q(-2));
        assert_eq!(c.coord(3), &q(-8));
        assert!(a.is_origin());
        assert!(!c.is_origin());
    }
}
