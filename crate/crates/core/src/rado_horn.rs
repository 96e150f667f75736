//! Partitioning into `k` independent sets, with certificates.
//!
//! A family splits into `k` independent sets exactly when every subset `J`
//! has `|J| / dim span(J) <= k`. Positive answers carry a partition;
//! negative ones carry a subset `J` violating the bound, built from a
//! transversal of the fundamental partition.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::family::{IndexSet, OrderedPartition, VectorFamily};
use crate::fundamental::{
    construct_fundamental, find_transversal, max_ratio_subset, merged_transversal, Transversal,
};
use crate::linalg::{Rational, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroScreen {
    Clean,
    /// Zero vectors belong to no independent set, so every verdict is
    /// negative; the ratio `|{0}| / dim span{0}` is reported as infinite.
    Degenerate(Vec<usize>),
}

pub fn screen_zero_vectors(family: &VectorFamily) -> ZeroScreen {
    let zeros = family.zero_indices();
    if zeros.is_empty() {
        ZeroScreen::Clean
    } else {
        ZeroScreen::Degenerate(zeros)
    }
}

fn require_clean(family: &VectorFamily) -> Result<()> {
    match screen_zero_vectors(family) {
        ZeroScreen::Clean => Ok(()),
        ZeroScreen::Degenerate(indices) => Err(Error::Degenerate { indices }),
    }
}

fn require_positive(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(())
}

fn ratio_of(numer: usize, denom: usize) -> Rational {
    Rational::new((numer as i64).into(), (denom as i64).into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Satisfiable,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadoHornCertificate {
    pub verdict: Verdict,
    pub k: usize,
    /// The subset `J` (violated) or the maximizer (satisfiable inequality
    /// check).
    pub witness: Option<IndexSet>,
    /// `|J| / dim span(J)`.
    pub ratio: Option<Rational>,
    pub partition: Option<OrderedPartition>,
    /// The `k`-transversal behind a violation found by [`partition_into_k`].
    pub transversal: Option<Transversal>,
    /// `dim span(T)` for that transversal.
    pub transversal_rank: Option<usize>,
}

impl RadoHornCertificate {
    pub fn is_satisfiable(&self) -> bool {
        self.verdict == Verdict::Satisfiable
    }
}

/// Decides the inequality directly: violated iff the largest ratio exceeds
/// `k`. The maximizer is reported either way.
pub fn check_inequality(family: &VectorFamily, k: usize) -> Result<RadoHornCertificate> {
    require_positive(k)?;
    require_clean(family)?;
    if family.is_empty() {
        return Ok(RadoHornCertificate {
            verdict: Verdict::Satisfiable,
            k,
            witness: None,
            ratio: None,
            partition: None,
            transversal: None,
            transversal_rank: None,
        });
    }
    let (set, ratio) = max_ratio_subset(family)?;
    let verdict = if ratio > ratio_of(k, 1) {
        Verdict::Violated
    } else {
        Verdict::Satisfiable
    };
    Ok(RadoHornCertificate {
        verdict,
        k,
        witness: Some(set),
        ratio: Some(ratio),
        partition: None,
        transversal: None,
        transversal_rank: None,
    })
}

/// Partitions into at most `k` independent sets, or certifies that this is
/// impossible with `J = T ∪ {φ}` where `T` is a `k`-transversal whose span
/// contains `φ` from the last fundamental block. Then
/// `|J| / dim span(J) = k + 1 / dim span(T)`.
pub fn partition_into_k(family: &VectorFamily, k: usize) -> Result<RadoHornCertificate> {
    require_positive(k)?;
    require_clean(family)?;
    let (fundamental, _) = construct_fundamental(family)?;
    let l = fundamental.len();
    if l <= k {
        return Ok(RadoHornCertificate {
            verdict: Verdict::Satisfiable,
            k,
            witness: None,
            ratio: None,
            partition: Some(fundamental),
            transversal: None,
            transversal_rank: None,
        });
    }
    let anchor = *fundamental.blocks()[l - 1]
        .first()
        .ok_or_else(|| Error::Internal("empty fundamental block".into()))?;
    let transversal = find_transversal(family, &fundamental, k, anchor)?;
    let rank_t = transversal.rank(family);
    let mut witness = transversal.indices();
    witness.insert(anchor);
    let ratio = ratio_of(witness.len(), family.rank_of(&witness));
    let expected = ratio_of(k, 1) + ratio_of(1, rank_t);
    if ratio != expected {
        return Err(Error::Internal(format!(
            "violation ratio {ratio} differs from k + 1/dim span(T) = {expected}"
        )));
    }
    Ok(RadoHornCertificate {
        verdict: Verdict::Violated,
        k,
        witness: Some(witness),
        ratio: Some(ratio),
        partition: None,
        transversal: Some(transversal),
        transversal_rank: Some(rank_t),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RemovalVerdict {
    Feasible,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovalReport {
    pub k: usize,
    pub l: usize,
    pub verdict: RemovalVerdict,
    /// `H` with `|H| = L` when feasible.
    pub removed: Option<IndexSet>,
    /// The partition of the family minus `H` into at most `k` independent
    /// sets.
    pub partition: Option<OrderedPartition>,
    /// `J` with `(|J| - L) / dim span(J) > k` when infeasible.
    pub witness: Option<IndexSet>,
    pub ratio: Option<Rational>,
}

/// Whether removing some `L` vectors leaves a family that splits into `k`
/// independent sets.
///
/// Feasible iff the blocks past the first `k` of a fundamental partition
/// hold at most `L` vectors; `H` is that tail topped up with the highest
/// indices of the last kept blocks. Otherwise `J` is a `k`-transversal of
/// the first `k + 1` blocks spanning `F_{k+1}`, together with every block
/// past `k`.
pub fn generalized_check(family: &VectorFamily, k: usize, l: usize) -> Result<RemovalReport> {
    require_positive(k)?;
    require_clean(family)?;
    if l > family.len() {
        return Err(Error::InvalidArgument(format!(
            "cannot remove {l} vectors from a family of {}",
            family.len()
        )));
    }
    let (fundamental, _) = construct_fundamental(family)?;
    let blocks = fundamental.blocks();
    let kept = k.min(blocks.len());
    let tail: IndexSet = blocks[kept..].iter().flatten().copied().collect();

    if tail.len() <= l {
        let mut removed = tail;
        let mut remaining: Vec<IndexSet> = blocks[..kept].to_vec();
        for block in remaining.iter_mut().rev() {
            while removed.len() < l {
                let Some(top) = block.pop_last() else { break };
                removed.insert(top);
            }
        }
        return Ok(RemovalReport {
            k,
            l,
            verdict: RemovalVerdict::Feasible,
            removed: Some(removed),
            partition: Some(OrderedPartition::canonical(remaining)),
            witness: None,
            ratio: None,
        });
    }

    let transversal = merged_transversal(family, &fundamental, k, &blocks[k])?;
    let mut witness = transversal.indices();
    witness.extend(tail.iter().copied());
    let ratio = ratio_of(witness.len() - l, family.rank_of(&witness));
    if ratio <= ratio_of(k, 1) {
        return Err(Error::Internal(format!(
            "removal witness ratio {ratio} does not exceed {k}"
        )));
    }
    Ok(RemovalReport {
        k,
        l,
        verdict: RemovalVerdict::Infeasible,
        removed: None,
        partition: None,
        witness: Some(witness),
        ratio: Some(ratio),
    })
}

/// Witness for a family that does not split into `k` independent sets: a
/// `k`-block partition `A` and a subspace `S` spanned inside every block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedundantWitness {
    pub k: usize,
    /// `F_1, ..., F_{k-1}, F_k ∪ ... ∪ F_l`; the last block is generally
    /// dependent.
    pub partition: Vec<IndexSet>,
    pub subspace_basis: Vec<RationalVector>,
    /// `S_i = T ∩ A_i`. In the merged form the last slice also takes the
    /// first few vectors past block `k`, as many as needed to make
    /// `A_k \ S_k` independent.
    pub slices: Vec<IndexSet>,
    /// Every index whose vector lies in `S`.
    pub saturated: IndexSet,
    pub transversal: Transversal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RedundantConditions {
    /// `span(S_i) = S` for every block.
    pub equal_spans: bool,
    /// `|J| / dim S > k`.
    pub ratio_exceeds_k: bool,
    /// `A_i \ S_i` is independent for every block.
    pub remainders_independent: bool,
}

impl RedundantConditions {
    pub fn all(&self) -> bool {
        self.equal_spans && self.ratio_exceeds_k && self.remainders_independent
    }
}

impl RedundantWitness {
    pub fn dim(&self) -> usize {
        self.subspace_basis.len()
    }

    pub fn ratio(&self) -> Rational {
        if self.dim() == 0 {
            return Rational::zero();
        }
        ratio_of(self.saturated.len(), self.dim())
    }

    /// Re-derives every condition by direct rank computation.
    pub fn conditions(&self, family: &VectorFamily) -> RedundantConditions {
        let dim = crate::linalg::rank(&self.subspace_basis).unwrap_or(0);
        let equal_spans = dim == self.subspace_basis.len()
            && self.slices.iter().all(|s| {
                let slice: Vec<&RationalVector> = family.vectors(s).collect();
                let joint = crate::linalg::rank(slice.iter().copied().chain(&self.subspace_basis));
                crate::linalg::rank(slice.iter().copied()).ok() == Some(dim)
                    && joint.ok() == Some(dim)
            });
        let saturated_dim = family.rank_of(&self.saturated);
        let ratio_exceeds_k = saturated_dim > 0
            && ratio_of(self.saturated.len(), saturated_dim) > ratio_of(self.k, 1);
        let remainders_independent = self
            .partition
            .iter()
            .zip(&self.slices)
            .all(|(a, s)| family.is_independent_set(&(a - s)));
        RedundantConditions {
            equal_spans,
            ratio_exceeds_k,
            remainders_independent,
        }
    }
}

/// Builds the redundancy witness. With `merge_all_anchors` the transversal
/// is the union over every vector past block `k`, which also makes each
/// `A_i \ S_i` independent; without it a single anchor from the last block
/// is used.
pub fn redundant_witness_with(
    family: &VectorFamily,
    k: usize,
    merge_all_anchors: bool,
) -> Result<RedundantWitness> {
    require_positive(k)?;
    require_clean(family)?;
    let (fundamental, _) = construct_fundamental(family)?;
    let blocks = fundamental.blocks();
    let l = blocks.len();
    if l <= k {
        return Err(Error::Feasible { k });
    }
    let anchors: IndexSet = if merge_all_anchors {
        blocks[k..].iter().flatten().copied().collect()
    } else {
        blocks[l - 1].iter().take(1).copied().collect()
    };
    let transversal = merged_transversal(family, &fundamental, k, &anchors)?;

    let mut partition: Vec<IndexSet> = blocks[..k - 1].to_vec();
    partition.push(blocks[k - 1..].iter().flatten().copied().collect());
    let mut slices: Vec<IndexSet> = partition
        .iter()
        .map(|a| a & &transversal.indices())
        .collect();
    if merge_all_anchors {
        // The tail lies in span(T), so moving tail vectors into the last
        // slice keeps its span. Once the whole tail is in, what is left
        // outside sits in F_k and is independent.
        for &i in &anchors {
            if family.is_independent_set(&(&partition[k - 1] - &slices[k - 1])) {
                break;
            }
            slices[k - 1].insert(i);
        }
    }
    let subspace_basis: Vec<RationalVector> =
        family.vectors(&transversal.slices()[0]).cloned().collect();
    let saturated = family.span_closure(&transversal.slices()[0]);
    Ok(RedundantWitness {
        k,
        partition,
        subspace_basis,
        slices,
        saturated,
        transversal,
    })
}

pub fn redundant_witness(family: &VectorFamily, k: usize) -> Result<RedundantWitness> {
    redundant_witness_with(family, k, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanningSummary {
    pub total_dim: usize,
    pub max_spanning_sets: usize,
}

/// Dimension spanned by the family and the largest number of disjoint
/// spanning subsets, read off the construction trace.
pub fn spanning_summary(family: &VectorFamily) -> Result<SpanningSummary> {
    require_clean(family)?;
    if family.is_empty() {
        return Ok(SpanningSummary {
            total_dim: 0,
            max_spanning_sets: 0,
        });
    }
    let (_, trace) = construct_fundamental(family)?;
    Ok(SpanningSummary {
        total_dim: trace.total_dim(),
        max_spanning_sets: trace.max_spanning_sets(),
    })
}

/// `k + 1/d` split into its parts, for reporting a violation ratio.
pub fn violation_decomposition(k: usize, transversal_rank: usize) -> (Rational, Rational) {
    (
        ratio_of(k, 1),
        Rational::one() / ratio_of(transversal_rank, 1),
    )
}
