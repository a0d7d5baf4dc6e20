use malachite_base::num::basic::traits::One;

use super::chevalley::{build_adjoint, chevalley_constants, ChevalleyBasis};
use super::forms::{circ_product, derive_mu, invariant_symplectic, CircProduct, InvariantPairing};
use super::matrix::{MatrixRep, SparseMatrix};
use super::minuscule::build_minuscule;
use crate::arith::Q;
use crate::error::{Error, Result};
use crate::lie::RootSystem;
use crate::sparse::inverse;

/// A simple algebra `g` with a minuscule symplectic module `V` and all the
/// invariant data built on it: Killing form `B`, pairing `<,>`, the map
/// `u o v` and the constants `lambda` (fixed to 1) and `mu`.
#[derive(Debug, Clone)]
pub struct SymplecticModel {
    pub algebra: ChevalleyBasis,
    pub adjoint: MatrixRep,
    pub killing: SparseMatrix,
    pub killing_inv: SparseMatrix,
    pub node: usize,
    pub rep: MatrixRep,
    pub pairing: InvariantPairing,
    pub circ: CircProduct,
    pub lambda: Q,
    pub mu: Q,
}

impl SymplecticModel {
    /// Builds everything from scratch, e.g. `("E7", 7)` for the 56.
    pub fn build(label: &str, node: usize) -> Result<Self> {
        let rs = RootSystem::from_dynkin(label)?;
        let cb = chevalley_constants(&rs)?;
        let rep = build_minuscule(&cb, node)?;
        Self::assemble(cb, node, rep, None)
    }

    /// Completes a model from a Chevalley basis and module matrices; `pairing`
    /// is solved for when not supplied.
    pub fn assemble(
        algebra: ChevalleyBasis,
        node: usize,
        rep: MatrixRep,
        pairing: Option<InvariantPairing>,
    ) -> Result<Self> {
        let (adjoint, killing) = build_adjoint(&algebra);
        let killing_inv = SparseMatrix::from_dense(
            &inverse(&killing.to_dense())
                .ok_or_else(|| Error::Inconsistent("Killing form is degenerate".into()))?,
        );
        let pairing = match pairing {
            Some(p) => p,
            None => invariant_symplectic(&rep)?,
        };
        let lambda = Q::ONE;
        let circ = circ_product(&rep, &killing, &killing_inv, &pairing, &lambda);
        let mu = derive_mu(&pairing, &circ)?;
        Ok(Self {
            algebra,
            adjoint,
            killing,
            killing_inv,
            node,
            rep,
            pairing,
            circ,
            lambda,
            mu,
        })
    }

    pub fn label(&self) -> String {
        self.algebra.root_system().label()
    }

    pub fn dim_g(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dim_v(&self) -> usize {
        self.rep.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::rep::forms::{quartic_random, quartic_shape, quartic_sweep};
    use rand::SeedableRng;

    #[test]
    fn sl2_model() {
        let m = SymplecticModel::build("A1", 1).unwrap();
        assert_eq!((m.dim_g(), m.dim_v()), (3, 2));
        assert_ne!(m.mu, q(0));
        let sweep = quartic_sweep(&m.pairing, &m.circ, &m.mu, m.rep.weights());
        assert!(sweep.passed(), "{sweep:?}");
        let full = quartic_sweep(&m.pairing, &m.circ, &m.mu, None);
        assert_eq!(full.checked, 16);
        assert!(full.passed());
    }

    #[test]
    fn freudenthal_series_models() {
        for (label, node) in [("A5", 3), ("D6", 6)] {
            let m = SymplecticModel::build(label, node).unwrap();
            assert_eq!(CircProduct::symmetry_failures(&m.rep, &m.pairing), 0);
            assert_eq!(m.circ.equivariance_failures(&m.rep, &m.adjoint), 0);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            let r = quartic_random(&m.pairing, &m.circ, &m.mu, &mut rng, 10);
            assert!(r.passed(), "{label}: {r:?}");
        }
    }

    #[test]
    fn perturbed_circ_breaks_quartic() {
        let m = SymplecticModel::build("A5", 3).unwrap();
        assert!(quartic_sweep(&m.pairing, &m.circ, &m.mu, None).passed());
        let k = m.circ.get(0, 19).entries()[0].0;
        let bad = m.circ.perturbed(0, 19, k, &q(1));
        assert!(!quartic_sweep(&m.pairing, &bad, &m.mu, None).passed());
    }

    #[test]
    fn quartic_shape_is_rigid() {
        for (label, node) in [("C2", 1), ("A5", 3)] {
            let m = SymplecticModel::build(label, node).unwrap();
            let shape = quartic_shape(&m.pairing, &m.circ, 5000).unwrap();
            assert_eq!(shape[..3], [q(2), q(1), q(1)], "{label}");
            assert_eq!(shape[3], m.mu, "{label}");
        }
    }
}
