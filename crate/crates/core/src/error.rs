use thiserror::Error;

use crate::lie::Weight;

#[derive(Debug, Error)]
pub enum Error {
    #[error("Cartan matrix is not of finite type: {0}")]
    NotFiniteType(String),

    #[error("unknown Dynkin type {0:?} (expected e.g. A1, B3, E7)")]
    UnknownType(String),

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("node {node} does not carry a minuscule fundamental weight")]
    NotMinuscule { node: usize },

    #[error("node {node} does not define a cominuscule parabolic")]
    NotCominuscule { node: usize },

    #[error("{what}: ambient dimension {needed} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        needed: usize,
        cap: usize,
    },

    #[error("{what}: expected a {expected}-dimensional solution space, found {found}")]
    SolutionSpace {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("dimension {0} does not fit in 64 bits")]
    Overflow(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
