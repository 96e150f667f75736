use std::path::PathBuf;

/// Errors raised by the library.
///
/// Indices carried by variants are 1-based family indices unless noted.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vectors are linearly dependent")]
    DependentSet,

    #[error("vector lies outside the span of the given set")]
    NotInSpan,

    #[error("pivot {pivot} has a zero expansion coefficient")]
    ZeroPivot { pivot: usize },

    #[error("index {index} is not part of the family (size {size})")]
    UnknownIndex { index: usize, size: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("profile totals differ: {left} vs {right}")]
    TotalMismatch { left: usize, right: usize },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("family is empty")]
    EmptyFamily,

    #[error("family contains zero vectors at indices {indices:?}")]
    Degenerate { indices: Vec<usize> },

    #[error("partition has a single block; there is no later block to seed a chain")]
    NoSeedBlock,

    #[error("span containment fails: target is not inside the span of block {block}")]
    ContainmentFails { block: usize },

    #[error("transversal order {t} must be positive and below the block count {blocks}")]
    TransversalOrder { t: usize, blocks: usize },

    #[error("anchor {anchor} lies in block {block}, which is not past the first {t} blocks")]
    AnchorTooEarly {
        anchor: usize,
        block: usize,
        t: usize,
    },

    #[error("transversals differ in order or underlying partition")]
    TransversalMismatch,

    #[error("family can be partitioned into {k} independent sets; no redundancy witness exists")]
    Feasible { k: usize },

    #[error("oracle budget exceeded: family size {size} above limit {limit}")]
    BudgetExceeded { size: usize, limit: usize },

    #[error("family of size {size} exceeds the supported maximum of {max}")]
    TooLarge { size: usize, max: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
