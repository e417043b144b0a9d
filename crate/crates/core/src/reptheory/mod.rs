//! Symmetric group characters, decompositions and representation-stability reports.

mod character;
mod partition;
mod stability;

pub use character::{decompose, factorial, hook_length_dim, irr_character, irr_dim, ClassFunction, Decomposition};
pub use partition::{pad, partitions, unpad, Partition};
pub use stability::{generation_check, stability_report, verdict, StabilityReport, StabilityRow, Verdict};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("{0:?} is not a partition")]
    InvalidPartition(Vec<u32>),
    #[error("cannot pad {partition} to weight {n}")]
    PaddingInvalid { partition: Partition, n: u32 },
    #[error("multiplicity of {partition} is {multiplicity}, so the character is not a representation")]
    NotARepresentation { partition: Partition, multiplicity: String },
}
