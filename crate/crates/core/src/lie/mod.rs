//! Root systems, weights and characters of simple complex Lie algebras.

mod decompose;
mod root_system;
mod weights;

pub use decompose::{
    decompose_character, exterior_power_decompose, power_character, symmetric_power_decompose,
    tensor_decompose, Decomposition,
};
pub use root_system::{generate_roots, CartanMatrix, RootSystem, Weight};
pub use weights::{dominant_multiplicities, weight_list, weight_multiplicities};
