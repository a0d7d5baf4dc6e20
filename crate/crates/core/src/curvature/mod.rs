//! Prolongations and curvature spaces: brute-force kernels for small
//! representations and explicit formula-based elements for symplectic models.

mod bruteforce;
mod formula;
mod tensor;

pub use bruteforce::{
    bianchi_failures, bianchi_residual, curvature_space_bruteforce, p1_bruteforce, prolongation,
    second_curvature_bruteforce, spencer_boundary,
};
pub use formula::{
    bianchi_failures_table, curvature_element, curvature_table, curvature_value,
    equivariance_failures, invariant_two_tensors, k0_membership, p1_invariant_solve,
    phi2_double_prime, phi2_element, phi_invariance_failures, second_bianchi_failures_basis,
    second_curvature_element, second_stacked_rank, skew_failures, stacked_rank,
};
pub use tensor::{
    flat_index, unflatten, CheckResult, CurvatureElement, SecondCurvature, SpaceReport,
    SparseTensor, SubspaceBasis, TwoSlotCurvature,
};
