//! Minuscule representations on the Weyl orbit of a fundamental weight.

use std::collections::HashMap;

use malachite_base::num::basic::traits::One;

use super::chevalley::ChevalleyBasis;
use super::matrix::{MatrixRep, SparseMatrix};
use crate::arith::Q;
use crate::error::{Error, Result};
use crate::lie::{dominant_multiplicities, Weight};
use crate::sparse::SparseVec;

/// Builds `V(omega_node)` (1-based node) for a minuscule fundamental weight.
///
/// The basis is the Weyl orbit of the highest weight, ordered by depth below
/// it; simple root vectors act by 0/1 matrices, the remaining root vectors
/// are obtained as commutators along extraspecial pairs.
pub fn build_minuscule(cb: &ChevalleyBasis, node: usize) -> Result<MatrixRep> {
    let rs = cb.root_system();
    let r = rs.rank();
    if node == 0 || node > r {
        return Err(Error::Invalid(format!("node {node} out of range 1..={r}")));
    }
    let hw = Weight::fundamental(r, node);
    if dominant_multiplicities(rs, &hw)?.len() != 1 {
        return Err(Error::NotMinuscule { node });
    }
    let mut basis: Vec<(i64, Weight)> = rs
        .weyl_orbit(&hw)
        .into_iter()
        .map(|w| {
            let depth = rs
                .as_nonneg_root_combination(&hw.sub(&w))
                .expect("orbit lies below the highest weight")
                .iter()
                .sum();
            (depth, w)
        })
        .collect();
    basis.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
    let weights: Vec<Weight> = basis.into_iter().map(|(_, w)| w).collect();
    let dim = weights.len();
    let index: HashMap<&Weight, usize> = weights.iter().enumerate().map(|(i, w)| (w, i)).collect();

    let np = rs.num_positive();
    let mut gens: Vec<Option<SparseMatrix>> = vec![None; cb.dim()];
    for i in 0..r {
        let h = (0..dim)
            .map(|a| (a, a, Q::from(weights[a].0[i])))
            .filter(|(_, _, x)| *x != Q::from(0))
            .collect();
        gens[cb.cartan_basis_index(i)] = Some(SparseMatrix::from_triplets(dim, dim, h));
        let alpha = rs.simple_root_weight(i);
        let mut up = Vec::new();
        let mut down = Vec::new();
        for (a, w) in weights.iter().enumerate() {
            match w.0[i] {
                -1 => up.push((index[&w.add(&alpha)], a, Q::ONE)),
                1 => down.push((index[&w.sub(&alpha)], a, Q::ONE)),
                _ => {}
            }
        }
        let mut simple = vec![0; r];
        simple[i] = 1;
        let k = rs.root_index(&simple).unwrap();
        gens[cb.root_basis_index(k)] = Some(SparseMatrix::from_triplets(dim, dim, up));
        gens[cb.root_basis_index(k + np)] = Some(SparseMatrix::from_triplets(dim, dim, down));
    }
    let pos = rs.positive_roots();
    for xi in 0..np {
        if gens[cb.root_basis_index(xi)].is_some() {
            continue;
        }
        let (alpha, beta) = (0..xi)
            .find_map(|a| {
                let rest: Vec<i64> = pos[xi].iter().zip(&pos[a]).map(|(x, y)| x - y).collect();
                rs.root_index(&rest).filter(|&b| b < np).map(|b| (a, b))
            })
            .expect("non-simple root decomposes");
        for (x, y, z) in [(alpha, beta, xi), (alpha + np, beta + np, xi + np)] {
            let n = Q::from(cb.n(x, y));
            let m = {
                let gx = gens[cb.root_basis_index(x)].as_ref().unwrap();
                let gy = gens[cb.root_basis_index(y)].as_ref().unwrap();
                gx.commutator(gy).scale(&(Q::ONE / n))
            };
            gens[cb.root_basis_index(z)] = Some(m);
        }
    }
    let rep = MatrixRep::new(
        dim,
        gens.into_iter().map(Option::unwrap).collect(),
        Some(weights),
    );
    check_homomorphism(cb, &rep)?;
    Ok(rep)
}

/// Verifies `[rho(x_i), rho(x_j)] = rho([x_i, x_j])` on all basis pairs.
pub fn check_homomorphism(cb: &ChevalleyBasis, rep: &MatrixRep) -> Result<()> {
    let dim = cb.dim();
    if rep.algebra_dim() != dim {
        return Err(Error::Invalid(
            "representation has the wrong number of generators".into(),
        ));
    }
    let n = rep.dim();
    for i in 0..dim {
        for j in i + 1..dim {
            let lhs = rep.matrix(i).commutator(rep.matrix(j));
            let mut rhs = SparseMatrix::zero(n, n);
            for (k, c) in cb.bracket_basis(i, j).entries() {
                rhs = rhs.add_scaled(rep.matrix(*k), c);
            }
            if lhs != rhs {
                return Err(Error::Inconsistent(format!(
                    "commutation relation fails for basis elements {i}, {j} ({:?}, {:?})",
                    cb.element(i),
                    cb.element(j)
                )));
            }
        }
    }
    Ok(())
}

/// Whether each `rho(h_i)` is diagonal with the labelled weights.
pub fn check_weight_basis(cb: &ChevalleyBasis, rep: &MatrixRep) -> bool {
    let Some(ws) = rep.weights() else {
        return false;
    };
    (0..cb.rank()).all(|i| {
        let h = rep.matrix(cb.cartan_basis_index(i));
        ws.iter()
            .enumerate()
            .all(|(a, w)| *h.col(a) == SparseVec::from_pairs(vec![(a, Q::from(w.0[i]))]))
    })
}
