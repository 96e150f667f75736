//! Fundamental partitions and transversals.
//!
//! A fundamental partition `F_1..F_l` is an ordered partition into
//! independent sets that majorizes every other such partition. A
//! `t`-transversal picks `S_i ⊆ F_i` for `i <= t` with all `span(S_i)`
//! equal. Transversals are found by the support chain of
//! [`chain_states`]; fundamental partitions are built stage by stage from
//! maximizers of `|J| / dim span(J)`, projecting the remainder onto the
//! orthogonal complement of each stage.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::family::{validate_ordered, IndexSet, OrderedPartition, VectorFamily};
use crate::linalg::{self, ComplementProjector, Rational, RationalVector, SpanBasis};
use crate::oracle::{ratio_order, Oracle, OracleBudget};
use crate::young::CellLabels;

/// Family size up to which [`is_fundamental`] compares against exhaustive
/// enumeration; larger families are checked by transversal certificate.
pub const ORACLE_THRESHOLD: usize = 9;

/// Largest family the subspace search can index.
pub const MAX_SEARCH_SIZE: usize = 64;

/// Subsets `S_1..S_t` of the first `t` blocks of a partition, all with the
/// same span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    slices: Vec<IndexSet>,
    partition: OrderedPartition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransversalDefect {
    WrongOrder { t: usize, blocks: usize },
    EmptySlice { slice: usize },
    OutsideBlock { slice: usize, index: usize },
    DependentSlice { slice: usize },
    SpanMismatch { slice: usize },
}

impl Transversal {
    pub fn new(slices: Vec<IndexSet>, partition: OrderedPartition) -> Self {
        Self { slices, partition }
    }

    pub fn t(&self) -> usize {
        self.slices.len()
    }

    pub fn slices(&self) -> &[IndexSet] {
        &self.slices
    }

    pub fn partition(&self) -> &OrderedPartition {
        &self.partition
    }

    /// All indices in the transversal.
    pub fn indices(&self) -> IndexSet {
        self.slices.iter().flatten().copied().collect()
    }

    /// `dim span(T)`, the common rank of the slices.
    pub fn rank(&self, family: &VectorFamily) -> usize {
        family.rank_of(&self.indices())
    }

    /// Checks the definition directly: nonempty independent slices inside
    /// their blocks, pairwise span-equal.
    pub fn check(&self, family: &VectorFamily) -> Vec<TransversalDefect> {
        let mut defects = Vec::new();
        let blocks = self.partition.blocks();
        if self.t() == 0 || self.t() > blocks.len() {
            defects.push(TransversalDefect::WrongOrder {
                t: self.t(),
                blocks: blocks.len(),
            });
            return defects;
        }
        for (i, (slice, block)) in self.slices.iter().zip(blocks).enumerate() {
            let slice_no = i + 1;
            if slice.is_empty() {
                defects.push(TransversalDefect::EmptySlice { slice: slice_no });
            }
            if let Some(&index) = slice.iter().find(|x| !block.contains(x)) {
                defects.push(TransversalDefect::OutsideBlock {
                    slice: slice_no,
                    index,
                });
                continue;
            }
            if !family.is_independent_set(slice) {
                defects.push(TransversalDefect::DependentSlice { slice: slice_no });
            }
        }
        if let Some(first) = self.slices.first() {
            for (i, slice) in self.slices.iter().enumerate().skip(1) {
                if family.check_indices(slice).is_ok() && !family.spans_equal(first, slice) {
                    defects.push(TransversalDefect::SpanMismatch { slice: i + 1 });
                }
            }
        }
        defects
    }

    pub fn is_valid(&self, family: &VectorFamily) -> bool {
        self.check(family).is_empty()
    }
}

/// One step of the support chain: `sets[i]` is the smallest subset of
/// block `i + 1` whose span contains the current target, and `carrier` is
/// the (1-based) block holding a largest such set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainState {
    pub step: usize,
    pub sets: Vec<IndexSet>,
    pub carrier: usize,
}

impl ChainState {
    pub fn carrier_set(&self) -> &IndexSet {
        &self.sets[self.carrier - 1]
    }
}

/// The unique smallest `S ⊆ within_block` with
/// `span(target) ⊆ span(S)`: the union of the expansion supports of the
/// target vectors over the independent block.
pub fn minimal_support(
    family: &VectorFamily,
    target: &IndexSet,
    within_block: &IndexSet,
) -> Result<IndexSet> {
    family.check_indices(target)?;
    family.check_indices(within_block)?;
    let block: Vec<usize> = within_block.iter().copied().collect();
    let vectors: Vec<&RationalVector> = block.iter().map(|&i| family.vector(i)).collect();
    if !linalg::is_independent(vectors.iter().copied())? {
        return Err(Error::DependentSet);
    }
    let mut support = IndexSet::new();
    for &g in target {
        let coefficients =
            linalg::expansion_coefficients(family.vector(g), vectors.iter().copied()).map_err(
                |e| match e {
                    Error::NotInSpan => Error::ContainmentFails { block: 0 },
                    other => other,
                },
            )?;
        support.extend(coefficients.support().map(|p| block[p - 1]));
    }
    Ok(support)
}

fn support_in_block(
    family: &VectorFamily,
    target: &IndexSet,
    blocks: &[IndexSet],
    block_no: usize,
) -> Result<IndexSet> {
    minimal_support(family, target, &blocks[block_no - 1]).map_err(|e| match e {
        Error::ContainmentFails { .. } => Error::ContainmentFails { block: block_no },
        other => other,
    })
}

/// The full support chain seeded at `seed` in the last block, up to and
/// including its fixpoint (the first step whose carrier set is no larger
/// than the previous one's). The partition may cover only part of the
/// family.
pub fn chain_states(
    family: &VectorFamily,
    partition: &OrderedPartition,
    seed: usize,
) -> Result<Vec<ChainState>> {
    validate_ordered(family, partition)
        .ignoring_coverage()
        .into_result()?;
    let blocks = partition.blocks();
    let l = blocks.len();
    if l < 2 {
        return Err(Error::NoSeedBlock);
    }
    if !blocks[l - 1].contains(&seed) {
        return Err(Error::InvalidArgument(format!(
            "seed {seed} is not in the last block"
        )));
    }
    let front = &blocks[..l - 1];
    let mut target = support_in_block(family, &IndexSet::from([seed]), blocks, l - 1)?;
    let mut states: Vec<ChainState> = Vec::new();
    // Carrier sizes strictly grow until the fixpoint and are bounded by the
    // dimension, so this bound is never reached on valid input.
    for step in 1..=family.dimension() + 2 {
        let sets = (1..=front.len())
            .map(|b| support_in_block(family, &target, blocks, b))
            .collect::<Result<Vec<_>>>()?;
        let carrier = largest(&sets);
        let state = ChainState {
            step,
            sets,
            carrier,
        };
        let done = states
            .last()
            .is_some_and(|prev| prev.carrier_set().len() == state.carrier_set().len());
        target = state.carrier_set().clone();
        states.push(state);
        if done {
            return Ok(states);
        }
    }
    Err(Error::Internal(
        "support chain did not reach a fixpoint".into(),
    ))
}

/// 1-based position of the first largest set.
fn largest(sets: &[IndexSet]) -> usize {
    let mut best = 0;
    for (i, s) in sets.iter().enumerate() {
        if s.len() > sets[best].len() {
            best = i;
        }
    }
    best + 1
}

/// The support chain's fixpoint.
pub fn build_chain(
    family: &VectorFamily,
    partition: &OrderedPartition,
    seed: usize,
) -> Result<ChainState> {
    let mut states = chain_states(family, partition, seed)?;
    Ok(states.pop().expect("chain has at least one state"))
}

/// A `t`-transversal of the first `t` blocks whose common span contains
/// `anchor`, which must sit in a block past `t`.
pub fn find_transversal(
    family: &VectorFamily,
    partition: &OrderedPartition,
    t: usize,
    anchor: usize,
) -> Result<Transversal> {
    let blocks = partition.blocks();
    if t == 0 || t >= blocks.len() {
        return Err(Error::TransversalOrder {
            t,
            blocks: blocks.len(),
        });
    }
    let block = partition.block_of(anchor).ok_or(Error::UnknownIndex {
        index: anchor,
        size: family.len(),
    })?;
    if block <= t {
        return Err(Error::AnchorTooEarly { anchor, block, t });
    }
    // Dropping the blocks between t and the anchor's block, and those after
    // it, leaves a fundamental partition of the remaining vectors.
    let mut reduced: Vec<IndexSet> = blocks[..t].to_vec();
    reduced.push(blocks[block - 1].clone());
    let fixpoint = build_chain(family, &OrderedPartition::new(reduced), anchor)?;
    let transversal = Transversal::new(fixpoint.sets, partition.clone());
    let defects = transversal.check(family);
    if !defects.is_empty() {
        return Err(Error::Internal(format!(
            "chain fixpoint is not a transversal: {defects:?}"
        )));
    }
    Ok(transversal)
}

/// Slice-wise union of two transversals of the same partition.
pub fn merge_transversals(a: &Transversal, b: &Transversal) -> Result<Transversal> {
    if a.t() != b.t() || a.partition != b.partition {
        return Err(Error::TransversalMismatch);
    }
    let slices = a.slices.iter().zip(&b.slices).map(|(x, y)| x | y).collect();
    Ok(Transversal::new(slices, a.partition.clone()))
}

/// Union of the `t`-transversals anchored at every index in `anchors`.
pub fn merged_transversal(
    family: &VectorFamily,
    partition: &OrderedPartition,
    t: usize,
    anchors: &IndexSet,
) -> Result<Transversal> {
    let mut merged: Option<Transversal> = None;
    for &anchor in anchors {
        let next = find_transversal(family, partition, t, anchor)?;
        merged = Some(match merged {
            None => next,
            Some(m) => merge_transversals(&m, &next)?,
        });
    }
    merged.ok_or_else(|| Error::InvalidArgument("no anchors given".into()))
}

fn screen(vectors: &[&RationalVector], family_len: usize) -> Result<()> {
    if vectors.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if family_len > MAX_SEARCH_SIZE {
        return Err(Error::TooLarge {
            size: family_len,
            max: MAX_SEARCH_SIZE,
        });
    }
    let zeros: Vec<usize> = vectors
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_zero())
        .map(|(i, _)| i + 1)
        .collect();
    if !zeros.is_empty() {
        return Err(Error::Degenerate { indices: zeros });
    }
    Ok(())
}

/// Maximizer of `|J| / dim span(J)` over positions `1..=n` of `vectors`.
///
/// Only span-closed sets need to be examined, and those are exactly the
/// closures of subspaces spanned by family vectors. They are enumerated
/// breadth-first from single vectors, extending each closed set by one
/// outside vector and closing again.
fn max_ratio_positions(vectors: &[&RationalVector]) -> Result<(IndexSet, Rational)> {
    screen(vectors, vectors.len())?;
    let n = vectors.len();
    let dimension = vectors[0].dimension();
    let close = |basis: &SpanBasis| -> u64 {
        (0..n)
            .filter(|&i| basis.contains(vectors[i]))
            .fold(0u64, |m, i| m | 1 << i)
    };

    let mut seen: HashSet<u64> = HashSet::new();
    let mut frontier: Vec<(u64, SpanBasis)> = Vec::new();
    for v in vectors {
        let mut basis = SpanBasis::new(dimension);
        basis.insert(v);
        let mask = close(&basis);
        if seen.insert(mask) {
            frontier.push((mask, basis));
        }
    }

    let mut best: Option<(Rational, IndexSet)> = None;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (mask, basis) in frontier {
            let set: IndexSet = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| i + 1)
                .collect();
            let ratio = Rational::new((set.len() as i64).into(), (basis.rank() as i64).into());
            let better = match &best {
                None => true,
                Some((r, s)) => ratio_order(&ratio, &set, r, s).is_gt(),
            };
            if better {
                best = Some((ratio, set));
            }
            for (i, v) in vectors.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    continue;
                }
                let mut grown = basis.clone();
                grown.insert(v);
                let grown_mask = close(&grown);
                if seen.insert(grown_mask) {
                    next.push((grown_mask, grown));
                }
            }
        }
        frontier = next;
    }
    let (ratio, set) = best.expect("nonempty family has a closed subset");
    Ok((set, ratio))
}

/// The span-closed subset maximizing `|J| / dim span(J)`; among maximizers
/// the largest wins (the maximizers are closed under union, so it is
/// unique), then the lexicographically smallest.
pub fn max_ratio_subset(family: &VectorFamily) -> Result<(IndexSet, Rational)> {
    let vectors: Vec<&RationalVector> = family.entries().iter().map(|e| &e.vector).collect();
    max_ratio_positions(&vectors)
}

/// One stage of the construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    /// `T_j`, original family indices.
    pub transversal: IndexSet,
    /// `T_j1..T_jk`: `k - 1` bases of the stage span, then the remainder.
    pub slices: Vec<IndexSet>,
    /// Rank of the stage transversal within the projected family.
    pub t: usize,
    pub k: usize,
    pub s: usize,
    /// Projected vectors `Φ_j`, keyed by original index.
    pub projected: Vec<(usize, RationalVector)>,
}

impl Stage {
    fn projected_vector(&self, index: usize) -> Option<&RationalVector> {
        self.projected
            .iter()
            .find(|(i, _)| *i == index)
            .map(|(_, v)| v)
    }

    fn rank_of(&self, set: &IndexSet) -> usize {
        let vectors: Vec<&RationalVector> = set
            .iter()
            .filter_map(|&i| self.projected_vector(i))
            .collect();
        linalg::rank(vectors).unwrap_or(0)
    }

    /// Re-checks the slice conditions and the stage arithmetic against the
    /// projected vectors.
    pub fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Internal(msg));
        let n = self.transversal.len();
        if self.t == 0 || self.k != n.div_ceil(self.t) || self.s != n - (self.k - 1) * self.t {
            return fail(format!(
                "stage arithmetic broken: |T|={n} t={} k={} s={}",
                self.t, self.k, self.s
            ));
        }
        if !(1..=self.t).contains(&self.s) || self.rank_of(&self.transversal) != self.t {
            return fail("stage remainder out of range".into());
        }
        if self.slices.len() != self.k {
            return fail("wrong slice count".into());
        }
        let union: IndexSet = self.slices.iter().flatten().copied().collect();
        if union != self.transversal || self.slices.iter().map(IndexSet::len).sum::<usize>() != n {
            return fail("slices do not partition the stage".into());
        }
        for (i, slice) in self.slices.iter().enumerate() {
            let want = if i + 1 < self.k { self.t } else { self.s };
            if slice.len() != want || self.rank_of(slice) != want {
                return fail(format!(
                    "slice {} has the wrong size or is dependent",
                    i + 1
                ));
            }
        }
        Ok(())
    }
}

/// Records that stage `stage` absorbed the following stage's transversal
/// because both had the same `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeEvent {
    pub stage: usize,
    pub absorbed: IndexSet,
    pub merged: IndexSet,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StageTrace {
    pub stages: Vec<Stage>,
    pub merges: Vec<MergeEvent>,
}

impl StageTrace {
    /// `Σ t_j`, the dimension spanned by the whole family.
    pub fn total_dim(&self) -> usize {
        self.stages.iter().map(|s| s.t).sum()
    }

    /// The number of disjoint spanning sets the family admits: `k_r` for
    /// the last stage when its remainder is full, `k_r - 1` otherwise.
    pub fn max_spanning_sets(&self) -> usize {
        match self.stages.last() {
            None => 0,
            Some(last) if last.s == last.t => last.k,
            Some(last) => last.k - 1,
        }
    }

    /// Labels each cell of `partition`'s diagram with the stage (`T1`,
    /// `T2`, ...) its vector came from, earlier stages first in each row.
    pub fn cell_labels(&self, partition: &OrderedPartition) -> CellLabels {
        let mut labels = CellLabels::new();
        for (r, block) in partition.blocks().iter().enumerate() {
            let mut col = 0;
            for (j, stage) in self.stages.iter().enumerate() {
                for _ in block.intersection(&stage.transversal) {
                    col += 1;
                    labels.insert((r + 1, col), format!("T{}", j + 1));
                }
            }
        }
        labels
    }
}

/// Splits `members` into `k - 1` bases of their span (size `t`) and an
/// independent remainder of size `s`. Elements are placed in ascending
/// order, each into the first slice that stays independent, backtracking
/// when a dead end is reached.
fn split_stage(
    members: &[(usize, &RationalVector)],
    dimension: usize,
    t: usize,
    k: usize,
    s: usize,
) -> Option<Vec<IndexSet>> {
    struct Slot {
        capacity: usize,
        members: Vec<usize>,
        basis: SpanBasis,
    }

    fn place(members: &[(usize, &RationalVector)], pos: usize, slots: &mut [Slot]) -> bool {
        let Some(&(index, vector)) = members.get(pos) else {
            return true;
        };
        let mut tried_empty: Vec<usize> = Vec::new();
        for i in 0..slots.len() {
            let slot = &slots[i];
            if slot.members.len() == slot.capacity {
                continue;
            }
            if slot.members.is_empty() {
                // Empty slots of equal capacity are interchangeable.
                if tried_empty.contains(&slot.capacity) {
                    continue;
                }
                tried_empty.push(slot.capacity);
            }
            let mut grown = slot.basis.clone();
            if !grown.insert(vector) {
                continue;
            }
            let saved = std::mem::replace(&mut slots[i].basis, grown);
            slots[i].members.push(index);
            if place(members, pos + 1, slots) {
                return true;
            }
            slots[i].members.pop();
            slots[i].basis = saved;
        }
        false
    }

    let mut slots: Vec<Slot> = (0..k)
        .map(|i| Slot {
            capacity: if i + 1 < k { t } else { s },
            members: Vec::new(),
            basis: SpanBasis::new(dimension),
        })
        .collect();
    place(members, 0, &mut slots).then(|| {
        slots
            .into_iter()
            .map(|s| s.members.into_iter().collect())
            .collect()
    })
}

fn make_stage(projected: Vec<(usize, RationalVector)>, transversal: IndexSet) -> Result<Stage> {
    let members: Vec<(usize, &RationalVector)> = projected
        .iter()
        .filter(|(i, _)| transversal.contains(i))
        .map(|(i, v)| (*i, v))
        .collect();
    let dimension = members
        .first()
        .map(|(_, v)| v.dimension())
        .ok_or_else(|| Error::Internal("empty stage transversal".into()))?;
    let t = linalg::rank(members.iter().map(|(_, v)| *v))?;
    if t == 0 {
        return Err(Error::Internal("stage transversal spans nothing".into()));
    }
    let n = members.len();
    let k = n.div_ceil(t);
    let s = n - (k - 1) * t;
    let slices = split_stage(&members, dimension, t, k, s)
        .ok_or_else(|| Error::Internal(format!("no slice assembly for stage {transversal:?}")))?;
    let stage = Stage {
        transversal,
        slices,
        t,
        k,
        s,
        projected,
    };
    stage.check()?;
    Ok(stage)
}

/// Removes the stage transversal and projects what is left onto the
/// orthogonal complement of the stage span.
fn project_past(stage: &Stage) -> Result<Vec<(usize, RationalVector)>> {
    let projector = ComplementProjector::new(
        stage
            .projected
            .iter()
            .filter(|(i, _)| stage.transversal.contains(i))
            .map(|(_, v)| v),
    )?;
    let mut out = Vec::new();
    for (i, v) in &stage.projected {
        if stage.transversal.contains(i) {
            continue;
        }
        let p = projector.project(v)?;
        if p.is_zero() {
            return Err(Error::Internal(format!(
                "vector {i} projected to zero outside its stage"
            )));
        }
        out.push((*i, p));
    }
    Ok(out)
}

fn stage_maximizer(projected: &[(usize, RationalVector)]) -> Result<IndexSet> {
    let vectors: Vec<&RationalVector> = projected.iter().map(|(_, v)| v).collect();
    let (positions, _) = max_ratio_positions(&vectors)?;
    Ok(positions.iter().map(|&p| projected[p - 1].0).collect())
}

/// Builds a fundamental partition stage by stage and returns it with the
/// trace of `T_j, t_j, k_j, s_j`.
///
/// Stage `j` takes the largest maximizer `T_j` of the projected family,
/// splits it into `k_j - 1` bases and a remainder, and projects everything
/// else past `span(T_j)`. When a new stage ties the previous one on `k`,
/// its transversal is absorbed into the previous stage, which is then
/// rebuilt. Block `i` of the result collects slice `i` of every stage.
pub fn construct_fundamental(family: &VectorFamily) -> Result<(OrderedPartition, StageTrace)> {
    let zeros = family.zero_indices();
    if !zeros.is_empty() {
        return Err(Error::Degenerate { indices: zeros });
    }
    if family.len() > MAX_SEARCH_SIZE {
        return Err(Error::TooLarge {
            size: family.len(),
            max: MAX_SEARCH_SIZE,
        });
    }
    let mut trace = StageTrace::default();
    let mut remaining: Vec<(usize, RationalVector)> = family
        .entries()
        .iter()
        .enumerate()
        .map(|(i, e)| (i + 1, e.vector.clone()))
        .collect();

    while !remaining.is_empty() {
        let transversal = stage_maximizer(&remaining)?;
        let mut stage = make_stage(remaining, transversal)?;
        if let Some(prev) = trace.stages.last() {
            if prev.k < stage.k {
                return Err(Error::Internal("stage k increased".into()));
            }
            if prev.k == stage.k {
                let prev = trace.stages.pop().expect("checked above");
                let merged = &prev.transversal | &stage.transversal;
                trace.merges.push(MergeEvent {
                    stage: trace.stages.len() + 1,
                    absorbed: stage.transversal.clone(),
                    merged: merged.clone(),
                });
                stage = make_stage(prev.projected, merged)?;
                if stage.k != prev.k {
                    return Err(Error::Internal("merge changed k".into()));
                }
            }
        }
        remaining = project_past(&stage)?;
        trace.stages.push(stage);
    }

    let blocks = trace.stages.first().map_or(0, |s| s.k);
    let assembled: Vec<IndexSet> = (0..blocks)
        .map(|i| {
            trace
                .stages
                .iter()
                .filter_map(|s| s.slices.get(i))
                .flatten()
                .copied()
                .collect()
        })
        .collect();
    let partition = OrderedPartition::canonical(assembled);
    validate_ordered(family, &partition)
        .into_result()
        .map_err(|e| Error::Internal(format!("assembled partition invalid: {e}")))?;
    Ok((partition, trace))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMethod {
    /// Compared with every independent partition.
    Exhaustive,
    /// For each `j`, a merged `j`-transversal of the first `j` blocks spans
    /// every later vector. This bounds the union of any `j` independent
    /// sets by the first `j` blocks, so it proves fundamentality.
    Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FundamentalCheck {
    pub fundamental: bool,
    pub method: CheckMethod,
}

/// Whether `partition` is a fundamental partition of `family`, by
/// exhaustive enumeration up to `threshold` vectors and by transversal
/// certificate above it.
pub fn check_fundamental(
    family: &VectorFamily,
    partition: &OrderedPartition,
    threshold: usize,
) -> FundamentalCheck {
    let method = if family.len() <= threshold {
        CheckMethod::Exhaustive
    } else {
        CheckMethod::Certificate
    };
    let valid = validate_ordered(family, partition).is_valid() && family.zero_indices().is_empty();
    let fundamental = valid
        && match method {
            CheckMethod::Exhaustive => {
                let budget = OracleBudget {
                    max_family_size: threshold.max(family.len()),
                    ..OracleBudget::default()
                };
                Oracle::new(budget)
                    .fundamental_profile(family)
                    .is_ok_and(|p| p == partition.profile())
            }
            CheckMethod::Certificate => certificate_holds(family, partition),
        };
    FundamentalCheck {
        fundamental,
        method,
    }
}

fn certificate_holds(family: &VectorFamily, partition: &OrderedPartition) -> bool {
    let blocks = partition.blocks();
    (1..blocks.len()).all(|j| {
        let tail: IndexSet = blocks[j..].iter().flatten().copied().collect();
        match merged_transversal(family, partition, j, &tail) {
            Ok(t) => t.is_valid(family) && family.span_within(&tail, &t.indices()),
            Err(_) => false,
        }
    })
}

pub fn is_fundamental(family: &VectorFamily, partition: &OrderedPartition) -> bool {
    check_fundamental(family, partition, ORACLE_THRESHOLD).fundamental
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::index_set;
    use crate::linalg::ratio;

    fn fam(rows: &[&[i64]]) -> VectorFamily {
        VectorFamily::from_integer_rows(rows).unwrap()
    }
    fn fam_a() -> VectorFamily {
        fam(&[&[1, 0], &[0, 1], &[1, 1]])
    }
    fn fam_b() -> VectorFamily {
        fam(&[&[1, 0], &[2, 0], &[3, 0]])
    }
    fn fam_c() -> VectorFamily {
        fam(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]])
    }
    fn fam_d() -> VectorFamily {
        fam(&[&[1, 0], &[2, 0], &[0, 1], &[0, 2]])
    }
    fn part(blocks: &[&[usize]]) -> OrderedPartition {
        OrderedPartition::new(blocks.iter().map(|b| index_set(b)).collect())
    }

    #[test]
    fn minimal_support_examples() {
        let f = fam_a();
        assert_eq!(
            minimal_support(&f, &index_set(&[3]), &index_set(&[1, 2])).unwrap(),
            index_set(&[1, 2])
        );
        let f = fam(&[&[1, 0], &[0, 1], &[1, 0]]);
        assert_eq!(
            minimal_support(&f, &index_set(&[3]), &index_set(&[1, 2])).unwrap(),
            index_set(&[1])
        );
        assert_eq!(
            minimal_support(&f, &index_set(&[1, 2]), &index_set(&[1, 2])).unwrap(),
            index_set(&[1, 2])
        );
    }

    #[test]
    fn minimal_support_containment_failure() {
        let f = fam(&[&[1, 0], &[0, 1]]);
        assert!(matches!(
            minimal_support(&f, &index_set(&[2]), &index_set(&[1])),
            Err(Error::ContainmentFails { .. })
        ));
    }

    #[test]
    fn chain_examples() {
        let s = build_chain(&fam_a(), &part(&[&[1, 2], &[3]]), 3).unwrap();
        assert_eq!(s.sets, vec![index_set(&[1, 2])]);

        let s = build_chain(&fam_b(), &part(&[&[1], &[2], &[3]]), 3).unwrap();
        assert_eq!(s.sets, vec![index_set(&[1]), index_set(&[2])]);

        let basis = fam(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(matches!(
            build_chain(&basis, &part(&[&[1, 2, 3]]), 3),
            Err(Error::NoSeedBlock)
        ));
    }

    #[test]
    fn chain_rejects_invalid_partition() {
        assert!(matches!(
            build_chain(&fam_b(), &part(&[&[1, 2], &[3]]), 3),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn transversal_examples() {
        let t = find_transversal(&fam_a(), &part(&[&[1, 2], &[3]]), 1, 3).unwrap();
        assert_eq!(t.slices(), &[index_set(&[1, 2])]);

        let t = find_transversal(&fam_b(), &part(&[&[1], &[2], &[3]]), 2, 3).unwrap();
        assert_eq!(t.slices(), &[index_set(&[1]), index_set(&[2])]);

        let t = find_transversal(&fam_c(), &part(&[&[1, 2, 4], &[3]]), 1, 3).unwrap();
        assert_eq!(t.slices(), &[index_set(&[1, 2])]);
    }

    #[test]
    fn transversal_argument_errors() {
        let p = part(&[&[1], &[2], &[3]]);
        assert!(matches!(
            find_transversal(&fam_b(), &p, 3, 3),
            Err(Error::TransversalOrder { t: 3, blocks: 3 })
        ));
        assert!(matches!(
            find_transversal(&fam_b(), &p, 2, 2),
            Err(Error::AnchorTooEarly {
                anchor: 2,
                block: 2,
                t: 2
            })
        ));
        assert!(find_transversal(&fam_b(), &p, 0, 3).is_err());
    }

    #[test]
    fn merge_examples() {
        // e1, e2 in the first block; e1, e2 again in the second.
        let f = fam(&[&[1, 0], &[0, 1], &[2, 0], &[0, 2]]);
        let p = part(&[&[1, 2], &[3, 4]]);
        let a = Transversal::new(vec![index_set(&[1])], p.clone());
        let b = Transversal::new(vec![index_set(&[2])], p.clone());
        assert_eq!(merge_transversals(&a, &a).unwrap(), a);
        let m = merge_transversals(&a, &b).unwrap();
        assert_eq!(m.slices(), &[index_set(&[1, 2])]);
        assert!(m.is_valid(&f));

        let big = Transversal::new(vec![index_set(&[1, 2])], p.clone());
        assert_eq!(merge_transversals(&a, &big).unwrap(), big);

        let other = Transversal::new(vec![index_set(&[1])], part(&[&[1, 3], &[2, 4]]));
        assert!(matches!(
            merge_transversals(&a, &other),
            Err(Error::TransversalMismatch)
        ));
    }

    #[test]
    fn max_ratio_examples() {
        assert_eq!(
            max_ratio_subset(&fam_a()).unwrap(),
            (index_set(&[1, 2, 3]), ratio(3, 2))
        );
        assert_eq!(
            max_ratio_subset(&fam_b()).unwrap(),
            (index_set(&[1, 2, 3]), ratio(3, 1))
        );
        assert_eq!(
            max_ratio_subset(&fam_d()).unwrap(),
            (index_set(&[1, 2, 3, 4]), ratio(2, 1))
        );
    }

    #[test]
    fn max_ratio_errors() {
        let empty = VectorFamily::from_vectors(2, vec![]).unwrap();
        assert!(matches!(max_ratio_subset(&empty), Err(Error::EmptyFamily)));
        assert!(matches!(
            max_ratio_subset(&fam(&[&[1, 0], &[0, 0]])),
            Err(Error::Degenerate { indices }) if indices == vec![2]
        ));
    }

    fn stage_numbers(trace: &StageTrace) -> Vec<(usize, usize, usize)> {
        trace.stages.iter().map(|s| (s.t, s.k, s.s)).collect()
    }

    #[test]
    fn construct_fam_a() {
        let (p, trace) = construct_fundamental(&fam_a()).unwrap();
        assert_eq!(stage_numbers(&trace), vec![(2, 2, 1)]);
        assert_eq!(p, part(&[&[1, 2], &[3]]));
    }

    #[test]
    fn construct_fam_c() {
        let (p, trace) = construct_fundamental(&fam_c()).unwrap();
        assert_eq!(stage_numbers(&trace), vec![(2, 2, 1), (1, 1, 1)]);
        assert_eq!(trace.stages[0].transversal, index_set(&[1, 2, 3]));
        assert_eq!(p, part(&[&[1, 2, 4], &[3]]));
    }

    #[test]
    fn construct_fam_d() {
        let (p, trace) = construct_fundamental(&fam_d()).unwrap();
        assert_eq!(stage_numbers(&trace), vec![(2, 2, 2)]);
        assert_eq!(trace.stages[0].transversal, index_set(&[1, 2, 3, 4]));
        assert_eq!(p.profile().sizes(), &[2, 2]);
    }

    #[test]
    fn merge_rule_fires_when_stages_tie() {
        // Stage 1: five vectors in the plane of e1, e2 (ratio 5/2, k = 3).
        // Stage 2: seven vectors whose projections fill e3..e5 (ratio 7/3,
        // also k = 3), so the two stages merge.
        let f = fam(&[
            &[1, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0],
            &[1, 1, 0, 0, 0],
            &[1, 2, 0, 0, 0],
            &[2, 1, 0, 0, 0],
            &[0, 0, 1, 0, 0],
            &[0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 1],
            &[1, 0, 1, 1, 0],
            &[0, 1, 0, 1, 1],
            &[0, 0, 1, 1, 1],
            &[1, 1, 1, 2, 3],
        ]);
        let (p, trace) = construct_fundamental(&f).unwrap();
        assert_eq!(trace.merges.len(), 1);
        assert_eq!(stage_numbers(&trace), vec![(5, 3, 2)]);
        assert_eq!(p.profile().sizes(), &[5, 5, 2]);
        assert!(check_fundamental(&f, &p, 0).fundamental);
    }

    #[test]
    fn construct_rejects_zero_vectors() {
        assert!(matches!(
            construct_fundamental(&fam(&[&[0, 0], &[1, 0]])),
            Err(Error::Degenerate { indices }) if indices == vec![1]
        ));
    }

    #[test]
    fn is_fundamental_examples() {
        assert!(is_fundamental(&fam_a(), &part(&[&[1, 2], &[3]])));
        assert!(is_fundamental(&fam_a(), &part(&[&[1, 3], &[2]])));
        assert!(!is_fundamental(&fam_c(), &part(&[&[1, 2], &[3, 4]])));
    }

    #[test]
    fn certificate_mode_agrees_on_fixtures() {
        for (f, good, bad) in [
            (fam_a(), part(&[&[1, 2], &[3]]), part(&[&[1], &[2], &[3]])),
            (
                fam_c(),
                part(&[&[1, 2, 4], &[3]]),
                part(&[&[1, 2], &[3, 4]]),
            ),
            (
                fam_d(),
                part(&[&[1, 3], &[2, 4]]),
                part(&[&[1, 3], &[2], &[4]]),
            ),
        ] {
            let g = check_fundamental(&f, &good, 0);
            assert_eq!(g.method, CheckMethod::Certificate);
            assert!(g.fundamental);
            assert!(!check_fundamental(&f, &bad, 0).fundamental);
        }
    }

    #[test]
    fn spanning_numbers_from_trace() {
        let (_, t) = construct_fundamental(&fam_a()).unwrap();
        assert_eq!((t.total_dim(), t.max_spanning_sets()), (2, 1));
        let (_, t) = construct_fundamental(&fam_d()).unwrap();
        assert_eq!((t.total_dim(), t.max_spanning_sets()), (2, 2));
    }

    #[test]
    fn cell_labels_follow_stages() {
        let (p, t) = construct_fundamental(&fam_c()).unwrap();
        let labels = t.cell_labels(&p);
        assert_eq!(labels[&(1, 1)], "T1");
        assert_eq!(labels[&(1, 3)], "T2");
        assert_eq!(labels[&(2, 1)], "T1");
        assert_eq!(labels.len(), 4);
    }
}
