//! Explicit matrix models: Chevalley bases, adjoint and minuscule
//! representations, the invariant pairing and the map `u o v`.

mod chevalley;
mod forms;
mod matrix;
mod minuscule;
mod model;
mod oracle;

pub use chevalley::{build_adjoint, chevalley_constants, BasisElement, ChevalleyBasis};
pub use forms::{
    circ_product, derive_mu, invariant_symplectic, quartic_random, quartic_shape, quartic_sweep,
    CircProduct, InvariantPairing, QuarticReport,
};
pub use matrix::{MatrixRep, SparseMatrix};
pub use minuscule::{build_minuscule, check_homomorphism, check_weight_basis};
pub use model::SymplecticModel;
pub use oracle::{gl_n, oracle_rep, sl2_symmetric_power, so_n, zero_algebra};
