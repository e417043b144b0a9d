//! Free graded Lie algebras `L(H^{⊕n})` inside the tensor algebra.
//!
//! Bases are super-Lyndon: standard bracketings of Lyndon words plus `[w,w]` for
//! odd-degree Lyndon `w`. Brackets, differentials and derivations are computed on
//! tensor expansions and read back through the leading-word triangularity of the basis.

mod algebra;
mod generators;
mod lyndon;
mod model;
mod parse;
mod pbw;
mod tensor;

pub use algebra::{FreeLie, LieBasisElement, LieCell, LieElement};
pub use generators::{GeneratorSet, MAX_GENERATORS};
pub use lyndon::{for_each_lyndon, is_lyndon, lyndon_words, standard_factorization};
pub use model::{Generator, ModelSpec, Pairing, Violation};
pub use parse::{parse_model, ParseError};
pub use pbw::{lie_dims, lie_operad_dim, pbw_series, pbw_series_check, schur_lie_dims, tensor_series, PbwOutcome};
pub use tensor::{Tensor, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedLieError {
    #[error("tensor in degree {degree} is not in the Lie span (stuck at word {word:?})")]
    BasisExpressionFailure { degree: u32, word: Word },
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("{0} generators exceed the supported maximum of 255")]
    TooManyGenerators(usize),
    #[error("model has no pairing")]
    MissingPairing,
    #[error("pairing matrix is singular")]
    SingularPairing,
    #[error("omega is not a cycle")]
    OmegaNotCycle,
    #[error("omega is not invariant under the transposition ({}, {})", .transposition.0, .transposition.1)]
    InvarianceFailure { transposition: (usize, usize) },
}
