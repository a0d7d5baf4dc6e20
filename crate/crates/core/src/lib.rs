//! Exact computations around the 56-dimensional representation of E7 as a
//! holonomy algebra: root data and characters, explicit matrix models,
//! curvature spaces, Bott-Borel-Weil cohomology and the deformed Poisson
//! structure on `g* + V*`.

pub mod arith;
pub mod bbw;
pub mod cache;
pub mod caps;
pub mod curvature;
pub mod error;
pub mod lie;
pub mod poisson;
pub mod rep;
pub mod sparse;

pub use caps::Caps;
pub use error::{Error, Result};
