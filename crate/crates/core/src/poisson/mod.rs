//! The deformed Poisson structure on `W* = g* + V*` induced by
//! `phi = phi2 + tau`, pointwise checks, the Schur-type solver, and 2-jets of
//! the induced torsion-free connection.

mod jet;
mod phi;
mod schur;
mod structure;
mod suite;

pub use jet::{jet_verify, killing_dual, regular_semisimple_covector, JetConnection, JetReport};
pub use phi::{PhiMap, WPoint, WVector};
pub use schur::{schur_solver, SchurSolution, SchurSummary};
pub use structure::{Poisson, PolyObservable};
pub use suite::{
    jet_center, jet_directions, run_poisson_suite, sample_points, PoissonCheck, PoissonOptions,
    PoissonReport, Witness,
};

use crate::arith::Q;
use crate::curvature::{curvature_table, phi2_element};
use crate::rep::SymplecticModel;

/// `phi2 + tau <,>` built from the model's curvature formula.
pub fn phi_from_model(m: &SymplecticModel, tau: Q) -> PhiMap {
    let table = curvature_table(m);
    PhiMap::from_two_slot(&phi2_element(m, &table), &m.pairing, tau)
}
