use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::Q;
use crate::caps::Caps;
use crate::curvature::{SparseTensor, SubspaceBasis};
use crate::error::{Error, Result};
use crate::rep::{MatrixRep, SparseMatrix};
use crate::sparse::{Echelon, SparseVec};

/// Solutions `rho: V -> W` of `A rho B = B rho A` for all `A, B` in the algebra.
#[derive(Debug, Clone)]
pub struct SchurSolution {
    /// Elements of shape `[dim W, dim V]`.
    pub space: SubspaceBasis,
    /// Both modules are nontrivial, so the vanishing statement applies.
    pub nontrivial: bool,
    pub rank_basis_pairs: usize,
    /// Rank after adding the pairs `(x_s, [x_t, x_u])`; equal to the above.
    pub rank_with_brackets: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SchurSummary {
    pub dim_v: usize,
    pub dim_w: usize,
    pub solution_dim: usize,
    pub nontrivial: bool,
    pub redundancy_consistent: bool,
}

impl SchurSolution {
    pub fn summary(&self) -> SchurSummary {
        let shape = self.space.shape();
        SchurSummary {
            dim_v: shape[1],
            dim_w: shape[0],
            solution_dim: self.space.dim(),
            nontrivial: self.nontrivial,
            redundancy_consistent: self.rank_basis_pairs == self.rank_with_brackets,
        }
    }
}

/// Rows of `Wa rho Vb - Wb rho Va = 0`; unknown `rho[k][l]` sits at `k * dim V + l`.
fn pair_rows(
    wa: &SparseMatrix,
    va: &SparseMatrix,
    wb: &SparseMatrix,
    vb: &SparseMatrix,
    nv: usize,
) -> Vec<SparseVec> {
    let mut eqs: BTreeMap<(usize, usize), Vec<(usize, Q)>> = BTreeMap::new();
    let mut add = |wm: &SparseMatrix, vm: &SparseMatrix, sign: &Q| {
        for (i, k, x) in wm.triplets() {
            for (l, j, y) in vm.triplets() {
                eqs.entry((i, j))
                    .or_default()
                    .push((k * nv + l, sign * &x * y));
            }
        }
    };
    add(wa, vb, &Q::from(1));
    add(wb, va, &Q::from(-1));
    eqs.into_values()
        .map(SparseVec::from_pairs)
        .filter(|r| !r.is_zero())
        .collect()
}

pub fn schur_solver(v: &MatrixRep, w: &MatrixRep, caps: &Caps) -> Result<SchurSolution> {
    if v.algebra_dim() != w.algebra_dim() {
        return Err(Error::Invalid(format!(
            "representations of algebras of different dimension ({} and {})",
            v.algebra_dim(),
            w.algebra_dim()
        )));
    }
    let (nv, nw, d) = (v.dim(), w.dim(), v.algebra_dim());
    caps.check_bruteforce("Schur solver unknowns", nv * nw)?;
    let mut ech = Echelon::new(nv * nw);
    for s in 0..d {
        for t in s + 1..d {
            for r in pair_rows(w.matrix(s), v.matrix(s), w.matrix(t), v.matrix(t), nv) {
                ech.insert(&r);
            }
        }
    }
    let rank_basis_pairs = ech.rank();
    let mut with_brackets = ech.clone();
    for t in 0..d {
        for u in t + 1..d {
            let wb = w.matrix(t).commutator(w.matrix(u));
            let vb = v.matrix(t).commutator(v.matrix(u));
            for s in 0..d {
                for r in pair_rows(w.matrix(s), v.matrix(s), &wb, &vb, nv) {
                    with_brackets.insert(&r);
                }
            }
        }
    }
    let shape = vec![nw, nv];
    let elements = ech
        .kernel()
        .into_iter()
        .map(|k| SparseTensor::from_flat(shape.clone(), k))
        .collect();
    let nontrivial = v.gens().iter().any(|g| !g.is_zero()) && w.gens().iter().any(|g| !g.is_zero());
    Ok(SchurSolution {
        space: SubspaceBasis::new(shape, elements)?,
        nontrivial,
        rank_basis_pairs,
        rank_with_brackets: with_brackets.rank(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{sl2_symmetric_power, so_n, zero_algebra};

    #[test]
    fn irreducible_pairs_have_no_solutions() {
        let caps = Caps::default();
        for (k, l) in [(1, 1), (1, 2), (2, 3), (2, 2)] {
            let s = schur_solver(
                &sl2_symmetric_power(k, false),
                &sl2_symmetric_power(l, false),
                &caps,
            )
            .unwrap();
            assert_eq!(s.space.dim(), 0, "({k}, {l})");
            assert!(s.nontrivial);
            assert_eq!(s.rank_basis_pairs, s.rank_with_brackets);
        }
        let so3 = so_n(3);
        assert_eq!(schur_solver(&so3, &so3, &caps).unwrap().space.dim(), 0);
    }

    #[test]
    fn trivial_action_allows_everything() {
        let triv = MatrixRep::new(1, vec![SparseMatrix::zero(1, 1); 3], None);
        let s = schur_solver(&triv, &triv, &Caps::default()).unwrap();
        assert_eq!(s.space.dim(), 1);
        assert!(!s.nontrivial);
        let z = zero_algebra(2);
        assert_eq!(
            schur_solver(&z, &z, &Caps::default()).unwrap().space.dim(),
            4
        );
    }

    #[test]
    fn cap_and_mismatch_refused() {
        let caps = Caps {
            bruteforce: 3,
            ..Caps::default()
        };
        let r = sl2_symmetric_power(1, false);
        assert!(matches!(
            schur_solver(&r, &r, &caps),
            Err(Error::CapExceeded { .. })
        ));
        assert!(schur_solver(&r, &so_n(4), &Caps::default()).is_err());
    }
}
