//! Derivation complexes `Der⁺(L(H^{⊕n}))` and `Der⁺(L(H^{⊕n}) ‖ ω_n)` with differential
//! `[d, -]`, and their homology.
//!
//! Both complexes live in the same pointed coordinates (one block `L_{|g|+k}` per
//! generator `g`). A [`ComplexMode`] picks the subspace; modes are registered by name in
//! a [`ModeRegistry`] and everything else in this module is shared.

mod engine;
mod mode;
mod slice;

pub use engine::{ArityData, Engine, HomologySlice};
pub use mode::{Boundary, ComplexMode, ModeRegistry, Pointed};
pub use slice::{DerSlice, Derivation, PointedLayout, SliceBasis};

use thiserror::Error;

use crate::gradedlie::{GradedLieError, Violation};
use crate::ratlinalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerError {
    #[error("invalid model: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidModel(Vec<Violation>),
    #[error(transparent)]
    Lie(#[from] GradedLieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("degree {0} is not allowed here")]
    InvalidDegree(u32),
    #[error("mode `{mode}` requires a model with a pairing and ambient_dim")]
    ModeRequiresPairing { mode: &'static str },
    #[error("unknown mode `{0}`")]
    UnknownMode(String),
    #[error("image leaves the subcomplex at arity {arity}, degree {degree} ({context})")]
    ClosureViolation {
        arity: usize,
        degree: u32,
        context: &'static str,
    },
    #[error("vector is not a cycle at arity {arity}, degree {degree}")]
    NotACycle { arity: usize, degree: u32 },
    #[error("cell at arity {arity}, degree {degree} has dimension {dim} above the cap {cap}")]
    CellTooLarge {
        arity: usize,
        degree: u32,
        dim: usize,
        cap: usize,
    },
}
