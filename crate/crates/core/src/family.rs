//! Indexed vector families, ordered partitions, majorization and the
//! span-preserving exchange move.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, RationalVector, SpanBasis};

/// A set of 1-based family indices.
pub type IndexSet = BTreeSet<usize>;

/// Builds an [`IndexSet`] from a slice of indices.
pub fn index_set(indices: &[usize]) -> IndexSet {
    indices.iter().copied().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyEntry {
    pub label: String,
    pub vector: RationalVector,
}

/// The family `phi_1..phi_M`. Indices are 1-based and contiguous; entry
/// `i` lives at position `i - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFamily {
    dimension: usize,
    entries: Vec<FamilyEntry>,
}

impl VectorFamily {
    pub fn new(dimension: usize, entries: Vec<FamilyEntry>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        for e in &entries {
            if e.vector.dimension() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: e.vector.dimension(),
                });
            }
        }
        Ok(Self { dimension, entries })
    }

    /// A family with default labels `phi1, phi2, ...`.
    pub fn from_vectors(dimension: usize, vectors: Vec<RationalVector>) -> Result<Self> {
        let entries = vectors
            .into_iter()
            .enumerate()
            .map(|(i, vector)| FamilyEntry {
                label: format!("phi{}", i + 1),
                vector,
            })
            .collect();
        Self::new(dimension, entries)
    }

    /// Convenience constructor from integer rows; the dimension is taken
    /// from the first row.
    pub fn from_integer_rows(rows: &[&[i64]]) -> Result<Self> {
        let dimension = rows.first().map_or(0, |r| r.len());
        let vectors = rows
            .iter()
            .map(|r| RationalVector::from_integers(r.iter().copied()))
            .collect();
        Self::from_vectors(dimension, vectors)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[FamilyEntry] {
        &self.entries
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.entries.len()
    }

    pub fn all(&self) -> IndexSet {
        self.indices().collect()
    }

    pub fn contains_index(&self, index: usize) -> bool {
        (1..=self.entries.len()).contains(&index)
    }

    /// # Panics
    /// If `index` is not in `1..=len()`.
    pub fn vector(&self, index: usize) -> &RationalVector {
        &self.entries[index - 1].vector
    }

    /// # Panics
    /// If `index` is not in `1..=len()`.
    pub fn label(&self, index: usize) -> &str {
        &self.entries[index - 1].label
    }

    pub fn labels<'a>(&'a self, set: &'a IndexSet) -> Vec<String> {
        set.iter().map(|&i| self.label(i).to_owned()).collect()
    }

    pub fn check_indices(&self, set: &IndexSet) -> Result<()> {
        match set.iter().find(|&&i| !self.contains_index(i)) {
            Some(&index) => Err(Error::UnknownIndex {
                index,
                size: self.len(),
            }),
            None => Ok(()),
        }
    }

    pub fn vectors<'a>(
        &'a self,
        set: &'a IndexSet,
    ) -> impl Iterator<Item = &'a RationalVector> + 'a {
        set.iter().map(move |&i| self.vector(i))
    }

    pub fn rank_of(&self, set: &IndexSet) -> usize {
        linalg::bareiss_rank(
            set.iter()
                .map(|&i| self.vector(i).to_integer_row())
                .collect(),
        )
    }

    pub fn is_independent_set(&self, set: &IndexSet) -> bool {
        self.rank_of(set) == set.len()
    }

    pub fn span_basis(&self, set: &IndexSet) -> SpanBasis {
        let mut basis = SpanBasis::new(self.dimension);
        for v in self.vectors(set) {
            basis.insert(v);
        }
        basis
    }

    /// Every family index whose vector lies in `span(set)`.
    pub fn span_closure(&self, set: &IndexSet) -> IndexSet {
        let basis = self.span_basis(set);
        self.indices()
            .filter(|&i| basis.contains(self.vector(i)))
            .collect()
    }

    pub fn spans_equal(&self, a: &IndexSet, b: &IndexSet) -> bool {
        let ra = self.rank_of(a);
        ra == self.rank_of(b) && ra == self.rank_of(&(a | b))
    }

    /// `span(inner) ⊆ span(outer)`.
    pub fn span_within(&self, inner: &IndexSet, outer: &IndexSet) -> bool {
        self.rank_of(outer) == self.rank_of(&(inner | outer))
    }

    pub fn zero_indices(&self) -> Vec<usize> {
        self.indices()
            .filter(|&i| self.vector(i).is_zero())
            .collect()
    }
}

/// Blocks of family indices. The type itself does not enforce the
/// ordered-partition invariants so that invalid inputs can be reported by
/// [`validate_ordered`]; [`OrderedPartition::canonical`] produces the
/// normalised form used for all library outputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    blocks: Vec<IndexSet>,
}

impl OrderedPartition {
    pub fn new(blocks: Vec<IndexSet>) -> Self {
        Self { blocks }
    }

    /// Sorts blocks by size (descending), breaking ties by ascending
    /// smallest index. Empty blocks are dropped.
    pub fn canonical(mut blocks: Vec<IndexSet>) -> Self {
        blocks.retain(|b| !b.is_empty());
        blocks.sort_by(|a, b| {
            b.len()
                .cmp(&a.len())
                .then_with(|| a.first().cmp(&b.first()))
        });
        Self { blocks }
    }

    pub fn blocks(&self) -> &[IndexSet] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<IndexSet> {
        self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// 1-based block number containing `index`.
    pub fn block_of(&self, index: usize) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.contains(&index))
            .map(|p| p + 1)
    }

    /// Block sizes, sorted non-increasing.
    pub fn profile(&self) -> PartitionProfile {
        let mut sizes: Vec<usize> = self.blocks.iter().map(IndexSet::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        PartitionProfile { sizes }
    }

    pub fn element_count(&self) -> usize {
        self.blocks.iter().map(IndexSet::len).sum()
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b:?}")?;
        }
        f.write_str("]")
    }
}

/// Non-increasing block sizes of an ordered partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionProfile {
    sizes: Vec<usize>,
}

impl PartitionProfile {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidProfile(format!(
                "{sizes:?} is not non-increasing"
            )));
        }
        Ok(Self { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    fn prefix(&self, j: usize) -> usize {
        self.sizes.iter().take(j).sum()
    }
}

impl fmt::Display for PartitionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.sizes)
    }
}

/// `p` majorizes `q`: every prefix sum of `p` dominates the matching prefix
/// sum of `q`, the shorter profile padded with zeros. With equal totals
/// this already forces `p` to have no more blocks than `q`.
pub fn majorizes(p: &PartitionProfile, q: &PartitionProfile) -> Result<bool> {
    if p.total() != q.total() {
        return Err(Error::TotalMismatch {
            left: p.total(),
            right: q.total(),
        });
    }
    let n = p.len().max(q.len());
    Ok((1..=n).all(|j| p.prefix(j) >= q.prefix(j)))
}

/// One reason an ordered partition is invalid. Block numbers are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionDefect {
    EmptyBlock {
        block: usize,
    },
    UnknownIndex {
        block: usize,
        index: usize,
    },
    Overlap {
        index: usize,
        first: usize,
        second: usize,
    },
    Missing {
        index: usize,
    },
    SizeIncrease {
        block: usize,
        previous: usize,
        size: usize,
    },
    Dependent {
        block: usize,
    },
}

impl fmt::Display for PartitionDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyBlock { block } => write!(f, "block {block} is empty"),
            Self::UnknownIndex { block, index } => {
                write!(f, "block {block} references unknown index {index}")
            }
            Self::Overlap {
                index,
                first,
                second,
            } => write!(f, "index {index} appears in blocks {first} and {second}"),
            Self::Missing { index } => write!(f, "index {index} is not covered"),
            Self::SizeIncrease {
                block,
                previous,
                size,
            } => write!(
                f,
                "block {block} has size {size} after a block of size {previous}"
            ),
            Self::Dependent { block } => write!(f, "block {block} is linearly dependent"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub defects: Vec<PartitionDefect>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.defects.is_empty()
    }

    /// Structural validity, ignoring independence.
    pub fn is_ordered_partition(&self) -> bool {
        self.defects
            .iter()
            .all(|d| matches!(d, PartitionDefect::Dependent { .. }))
    }

    pub fn dependent_blocks(&self) -> Vec<usize> {
        self.defects
            .iter()
            .filter_map(|d| match d {
                PartitionDefect::Dependent { block } => Some(*block),
                _ => None,
            })
            .collect()
    }

    /// Drops coverage defects, for partitions of a subfamily.
    pub(crate) fn ignoring_coverage(mut self) -> Self {
        self.defects
            .retain(|d| !matches!(d, PartitionDefect::Missing { .. }));
        self
    }

    pub(crate) fn into_result(self) -> Result<()> {
        if self.is_valid() {
            return Ok(());
        }
        let msg = self
            .defects
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; ");
        Err(Error::InvalidPartition(msg))
    }
}

/// Checks disjointness, coverage, size ordering and per-block independence.
pub fn validate_ordered(family: &VectorFamily, partition: &OrderedPartition) -> ValidationReport {
    let mut defects = Vec::new();
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (b, block) in partition.blocks().iter().enumerate() {
        let block_no = b + 1;
        if block.is_empty() {
            defects.push(PartitionDefect::EmptyBlock { block: block_no });
        }
        for &index in block {
            if !family.contains_index(index) {
                defects.push(PartitionDefect::UnknownIndex {
                    block: block_no,
                    index,
                });
            } else if let Some(&first) = owner.get(&index) {
                defects.push(PartitionDefect::Overlap {
                    index,
                    first,
                    second: block_no,
                });
            } else {
                owner.insert(index, block_no);
            }
        }
    }
    for index in family.indices() {
        if !owner.contains_key(&index) {
            defects.push(PartitionDefect::Missing { index });
        }
    }
    for (b, w) in partition.blocks().windows(2).enumerate() {
        if w[0].len() < w[1].len() {
            defects.push(PartitionDefect::SizeIncrease {
                block: b + 2,
                previous: w[0].len(),
                size: w[1].len(),
            });
        }
    }
    for (b, block) in partition.blocks().iter().enumerate() {
        let known: IndexSet = block
            .iter()
            .copied()
            .filter(|&i| family.contains_index(i))
            .collect();
        if !family.is_independent_set(&known) {
            defects.push(PartitionDefect::Dependent { block: b + 1 });
        }
    }
    ValidationReport { defects }
}

/// Swaps `incoming` into an independent `block` in place of `pivot`.
///
/// `incoming` must lie in the span of the block and `pivot` must carry a
/// nonzero coefficient in its expansion; the result is then independent
/// with the same span.
pub fn exchange(
    family: &VectorFamily,
    block: &IndexSet,
    incoming: usize,
    pivot: usize,
) -> Result<IndexSet> {
    family.check_indices(block)?;
    family.check_indices(&index_set(&[incoming, pivot]))?;
    if block.contains(&incoming) {
        return Err(Error::InvalidArgument(format!(
            "incoming index {incoming} is already in the block"
        )));
    }
    let Some(position) = block.iter().position(|&i| i == pivot) else {
        return Err(Error::InvalidArgument(format!(
            "pivot {pivot} is not in the block"
        )));
    };
    let coefficients =
        linalg::expansion_coefficients(family.vector(incoming), family.vectors(block))?;
    if coefficients
        .get(position + 1)
        .is_none_or(num_traits::Zero::is_zero)
    {
        return Err(Error::ZeroPivot { pivot });
    }
    let mut out = block.clone();
    out.remove(&pivot);
    out.insert(incoming);
    Ok(out)
}
