//! Exact linear algebra over the rationals for partitioning vector families
//! into linearly independent sets.
//!
//! Indices into a [`VectorFamily`] are 1-based throughout the public API.

pub mod cli;
pub mod document;
pub mod error;
pub mod family;
pub mod fundamental;
pub mod linalg;
pub mod oracle;
pub mod rado_horn;
pub mod young;

pub use document::FamilyDocument;
pub use error::{Error, Result};
pub use family::{
    index_set, majorizes, validate_ordered, IndexSet, OrderedPartition, PartitionProfile,
    VectorFamily,
};
pub use fundamental::{
    construct_fundamental, find_transversal, is_fundamental, max_ratio_subset, StageTrace,
    Transversal,
};
pub use linalg::{Rational, RationalVector};
pub use oracle::{Oracle, OracleBudget};
pub use rado_horn::{
    check_inequality, generalized_check, partition_into_k, redundant_witness, RadoHornCertificate,
    Verdict,
};
