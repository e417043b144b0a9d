//! Exact linear algebra over the rationals.
//!
//! Everything downstream (Lie bases, derivation complexes, homology, group
//! actions) reduces to the handful of operations here: rank, kernel, image,
//! span membership and quotients of subspaces. Elimination is fraction-free
//! on primitive integer rows, and every subspace is stored in its canonical
//! reduced row echelon form so that results are reproducible bit for bit.

mod echelon;
mod sparse;

pub use echelon::{image_basis, kernel_basis, quotient_basis, rank, Quotient, SubspaceBasis};
pub use sparse::{SparseMatrix, SparseVec};

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

/// An exact rational number in lowest terms.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

/// `(-1)^e` as a scalar.
pub fn sign(e: u64) -> Scalar {
    if e.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("boundary vector {index} is not contained in the cycle space")]
    ContainmentViolation { index: usize },
    #[error("vector is not in the span of the basis")]
    NotInSpan,
}
