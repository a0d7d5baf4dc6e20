//! Curvature elements built from the invariant data of a [`SymplecticModel`].

use std::collections::BTreeMap;

use malachite_base::num::basic::traits::{One, Zero};

use crate::arith::Q;
use crate::error::{Error, Result};
use crate::rep::{SparseMatrix, SymplecticModel};
use crate::sparse::{kernel, pair_from_index, pair_index, Accumulator, Echelon, SparseVec};

use super::bruteforce::bianchi_failures;
use super::tensor::{CurvatureElement, SecondCurvature, TwoSlotCurvature};

/// `R_A(u, v) = 2 lambda mu <u,v> A + u o (A v) - v o (A u)` on basis vectors.
pub fn curvature_value(m: &SymplecticModel, a: &SparseVec, u: usize, v: usize) -> SparseVec {
    let act = m.rep.act(a);
    let mut acc = Accumulator::new(m.dim_g());
    let c = Q::from(2) * &m.lambda * &m.mu * m.pairing.get(u, v);
    acc.add_scaled(a, &c);
    for (w, x) in act.col(v).entries() {
        acc.add_scaled(m.circ.get(u, *w), x);
    }
    for (w, x) in act.col(u).entries() {
        acc.add_scaled(m.circ.get(v, *w), &-x);
    }
    acc.take()
}

pub fn curvature_element(m: &SymplecticModel, a: &SparseVec) -> CurvatureElement {
    let act = m.rep.act(a);
    let two_lm = Q::from(2) * &m.lambda * &m.mu;
    let mut acc = Accumulator::new(m.dim_g());
    CurvatureElement::from_fn(m.dim_g(), m.dim_v(), |u, v| {
        acc.add_scaled(a, &(&two_lm * m.pairing.get(u, v)));
        for (w, x) in act.col(v).entries() {
            acc.add_scaled(m.circ.get(u, *w), x);
        }
        for (w, x) in act.col(u).entries() {
            acc.add_scaled(m.circ.get(v, *w), &-x);
        }
        acc.take()
    })
}

/// `R_{x_k}` for every algebra basis element.
pub fn curvature_table(m: &SymplecticModel) -> Vec<CurvatureElement> {
    (0..m.dim_g())
        .map(|k| curvature_element(m, &SparseVec::unit(k)))
        .collect()
}

/// Indices of table elements with a nonzero first Bianchi residual.
pub fn bianchi_failures_table(m: &SymplecticModel, table: &[CurvatureElement]) -> Vec<usize> {
    table
        .iter()
        .enumerate()
        .filter(|(_, r)| bianchi_failures(&m.rep, r) != 0)
        .map(|(k, _)| k)
        .collect()
}

/// Exact rank of the flattened elements.
pub fn stacked_rank(elements: &[CurvatureElement]) -> usize {
    let Some(first) = elements.first() else {
        return 0;
    };
    let mut ech = Echelon::new(first.pair_values().len() * first.dim_g());
    for r in elements {
        ech.insert(&r.flatten());
    }
    ech.rank()
}

/// `(B . R)(u, v) = [B, R(u,v)] - R(Bu, v) - R(u, Bv)` for a basis element `B`.
fn act_on_curvature(m: &SymplecticModel, b: usize, r: &CurvatureElement) -> CurvatureElement {
    let n = m.dim_v();
    let bm = m.rep.matrix(b);
    let pairs = r.pair_values();
    let mut acc = Accumulator::new(m.dim_g());
    let subtract = |acc: &mut Accumulator, u: usize, v: usize, c: &Q| match u.cmp(&v) {
        std::cmp::Ordering::Less => acc.add_scaled(&pairs[pair_index(n, u, v)], &-c),
        std::cmp::Ordering::Greater => acc.add_scaled(&pairs[pair_index(n, v, u)], c),
        std::cmp::Ordering::Equal => {}
    };
    CurvatureElement::from_fn(m.dim_g(), n, |u, v| {
        for (k, x) in pairs[pair_index(n, u, v)].entries() {
            acc.add_scaled(m.algebra.bracket_basis(b, *k), x);
        }
        for (w, x) in bm.col(u).entries() {
            subtract(&mut acc, *w, v, x);
        }
        for (w, x) in bm.col(v).entries() {
            subtract(&mut acc, u, *w, x);
        }
        acc.take()
    })
}

/// Pairs `(b, k)` where `R_{[x_b, x_k]} != x_b . R_{x_k}`, for `b` in `gens`.
pub fn equivariance_failures(
    m: &SymplecticModel,
    table: &[CurvatureElement],
    gens: &[usize],
) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for &b in gens {
        for k in 0..m.dim_g() {
            let br = m.algebra.bracket_basis(b, k);
            let lhs = if br.is_zero() {
                CurvatureElement::zero(m.dim_g(), m.dim_v())
            } else {
                CurvatureElement::combination(table, br)
            };
            if lhs != act_on_curvature(m, b, &table[k]) {
                bad.push((b, k));
            }
        }
    }
    bad
}

/// `S_w(s; u, v) = R_{s o w}(u, v)`.
pub fn second_curvature_element(
    m: &SymplecticModel,
    table: &[CurvatureElement],
    w: &SparseVec,
) -> SecondCurvature {
    let slices = (0..m.dim_v())
        .map(|s| {
            let a = m.circ.apply(&SparseVec::unit(s), w);
            if a.is_zero() {
                CurvatureElement::zero(m.dim_g(), m.dim_v())
            } else {
                CurvatureElement::combination(table, &a)
            }
        })
        .collect();
    SecondCurvature::new(slices)
}

/// Triples `s < u < v` violating the second Bianchi identity for `S_{e_t}`,
/// evaluated without materializing the element.
pub fn second_bianchi_failures_basis(
    m: &SymplecticModel,
    table: &[CurvatureElement],
    t: usize,
) -> usize {
    let n = m.dim_v();
    let coeffs: Vec<&SparseVec> = (0..n).map(|s| m.circ.get(s, t)).collect();
    let mut acc = Accumulator::new(m.dim_g());
    let mut bad = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for (s, p, sign) in [
                    (a, pair_index(n, b, c), Q::ONE),
                    (b, pair_index(n, a, c), -Q::ONE),
                    (c, pair_index(n, a, b), Q::ONE),
                ] {
                    for (k, x) in coeffs[s].entries() {
                        acc.add_scaled(&table[*k].pair_values()[p], &(x * &sign));
                    }
                }
                if !acc.take().is_zero() {
                    bad += 1;
                }
            }
        }
    }
    bad
}

/// Rank of a family of second curvature elements, using only as many slices
/// as needed to certify full rank.
pub fn second_stacked_rank(elements: &[SecondCurvature]) -> usize {
    let Some(first) = elements.first() else {
        return 0;
    };
    let n = first.slices().len();
    let mut used = 1;
    loop {
        let slots: Vec<usize> = (0..used.min(n)).collect();
        let len: usize = slots
            .iter()
            .map(|&s| first.slice(s).pair_values().len() * first.slice(s).dim_g())
            .sum();
        let mut ech = Echelon::new(len);
        for e in elements {
            ech.insert(&e.flatten_slices(&slots));
        }
        if ech.rank() == elements.len() || used >= n {
            return ech.rank();
        }
        used *= 2;
    }
}

/// `phi_2 = sum_k x_k (x) R_{y_k}` with `y_k` the Killing dual basis, so that
/// `B(phi_2(C, .)(u,v), D) = B(R_C(u,v), D)` after lowering.
pub fn phi2_element(m: &SymplecticModel, table: &[CurvatureElement]) -> TwoSlotCurvature {
    let slices = (0..m.dim_g())
        .map(|k| {
            let y = m.killing_inv.transpose().col(k).clone();
            CurvatureElement::combination(table, &y)
        })
        .collect();
    TwoSlotCurvature::new(slices)
}

/// Entries where the defining formula is not skew in `(u, v)`.
pub fn skew_failures(m: &SymplecticModel, table: &[CurvatureElement]) -> usize {
    let n = m.dim_v();
    let mut bad = 0;
    for (k, r) in table.iter().enumerate() {
        let a = SparseVec::unit(k);
        for p in 0..r.pair_values().len() {
            let (u, v) = pair_from_index(n, p);
            let swapped = curvature_value(m, &a, v, u);
            if swapped.add_scaled(&r.pair_values()[p], &Q::ONE) != SparseVec::new() {
                bad += 1;
            }
        }
    }
    bad
}

/// Number of `(generator, pair)` combinations where the `g`-action on `phi`
/// is nonzero.
pub fn phi_invariance_failures(
    m: &SymplecticModel,
    phi: &TwoSlotCurvature,
    gens: &[usize],
) -> usize {
    let n = m.dim_v();
    let dg = m.dim_g();
    let npairs = n * n.saturating_sub(1) / 2;
    let entries: Vec<Vec<(usize, usize, Q)>> = (0..npairs)
        .map(|p| {
            phi.slices()
                .iter()
                .enumerate()
                .flat_map(|(k, r)| {
                    r.pair_values()[p]
                        .entries()
                        .iter()
                        .map(move |(l, x)| (k, *l, x.clone()))
                })
                .collect()
        })
        .collect();
    let mut acc = Accumulator::new(dg * dg);
    let subtract = |acc: &mut Accumulator, u: usize, v: usize, c: &Q| {
        if u == v {
            return;
        }
        let (p, c) = if u < v {
            (pair_index(n, u, v), -c)
        } else {
            (pair_index(n, v, u), c.clone())
        };
        for (k, l, x) in &entries[p] {
            acc.add(k * dg + l, &(x * &c));
        }
    };
    let mut bad = 0;
    for &b in gens {
        let bm = m.rep.matrix(b);
        for (p, ep) in entries.iter().enumerate() {
            let (u, v) = pair_from_index(n, p);
            for (k, l, x) in ep {
                for (i, y) in m.algebra.bracket_basis(b, *k).entries() {
                    acc.add(i * dg + l, &(x * y));
                }
                for (i, y) in m.algebra.bracket_basis(b, *l).entries() {
                    acc.add(k * dg + i, &(x * y));
                }
            }
            for (w, c) in bm.col(u).entries() {
                subtract(&mut acc, *w, v, c);
            }
            for (w, c) in bm.col(v).entries() {
                subtract(&mut acc, u, *w, c);
            }
            if !acc.take().is_zero() {
                bad += 1;
            }
        }
    }
    bad
}

/// `phi''(e^t)` for every `t`.
pub fn phi2_double_prime(m: &SymplecticModel, phi: &TwoSlotCurvature) -> Vec<SecondCurvature> {
    (0..m.dim_v())
        .map(|t| phi.contract_module(&m.rep, t))
        .collect()
}

/// Whether the values `R(u, v)` span the whole algebra.
pub fn k0_membership(r: &CurvatureElement) -> bool {
    r.dim_g() > 0 && r.span_rank() == r.dim_g()
}

/// Invariant tensors in `g (x) g`, solved on the weight-zero part against the
/// given generators. The zero-weight restriction is exactly invariance under
/// the Cartan subalgebra.
pub fn invariant_two_tensors(m: &SymplecticModel, gens: &[usize]) -> Vec<SparseMatrix> {
    let dg = m.dim_g();
    let w = m.algebra.weights();
    let unknowns: Vec<(usize, usize)> = (0..dg)
        .flat_map(|k| (0..dg).map(move |l| (k, l)))
        .filter(|&(k, l)| w[k].0.iter().zip(&w[l].0).all(|(a, b)| a + b == 0))
        .collect();
    let mut rows = Vec::new();
    for &b in gens {
        let mut eqs: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
        for (j, &(k, l)) in unknowns.iter().enumerate() {
            for (i, x) in m.algebra.bracket_basis(b, k).entries() {
                eqs.entry(i * dg + l).or_default().push((j, x.clone()));
            }
            for (i, x) in m.algebra.bracket_basis(b, l).entries() {
                eqs.entry(k * dg + i).or_default().push((j, x.clone()));
            }
        }
        rows.extend(eqs.into_values().map(SparseVec::from_pairs));
    }
    kernel(&rows, unknowns.len())
        .iter()
        .map(|v| {
            SparseMatrix::from_triplets(
                dg,
                dg,
                v.entries()
                    .iter()
                    .map(|(j, x)| (unknowns[*j].0, unknowns[*j].1, x.clone()))
                    .collect(),
            )
        })
        .collect()
}

/// Uniqueness of the symmetric invariant element of `g (x) K`: since
/// `A -> R_A` is an equivariant isomorphism onto `K`, such elements are
/// `sum c_kl x_k (x) R_{x_l}` with `c` invariant. Returns the invariant `c`
/// after checking the space is one-dimensional and proportional to `B^{-1}`.
pub fn p1_invariant_solve(m: &SymplecticModel, gens: &[usize]) -> Result<SparseMatrix> {
    let sols = invariant_two_tensors(m, gens);
    if sols.len() != 1 {
        return Err(Error::SolutionSpace {
            what: "invariant elements of g (x) g",
            expected: 1,
            found: sols.len(),
        });
    }
    let c = sols.into_iter().next().unwrap();
    let (i, j, x) = c.triplets().into_iter().next().expect("nonzero solution");
    let scale = &x / m.killing_inv.get(i, j);
    if c != m.killing_inv.scale(&scale) {
        return Err(Error::Inconsistent(
            "invariant tensor is not the Casimir".into(),
        ));
    }
    if c != c.transpose() || scale == Q::ZERO {
        return Err(Error::Inconsistent(
            "invariant tensor is not symmetric".into(),
        ));
    }
    Ok(c)
}
