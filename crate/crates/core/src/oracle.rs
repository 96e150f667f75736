//! Exhaustive ground truth at desk scale.
//!
//! Nothing here is clever: partitions are enumerated outright and subsets
//! are scanned by bitmask, with ranks memoised per mask. Inputs above the
//! budget are refused, never truncated.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::family::{IndexSet, OrderedPartition, PartitionProfile, VectorFamily};
use crate::linalg::{bareiss_rank, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest family for partition enumeration and minimum-part search.
    pub max_family_size: usize,
    /// Largest family for the all-subsets ratio scan.
    pub max_subset_scan: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_family_size: 10,
            max_subset_scan: 20,
        }
    }
}

/// Per-mask independence table for a small family.
pub(crate) struct MaskTable {
    size: usize,
    independent: Vec<bool>,
}

impl MaskTable {
    pub(crate) fn new(family: &VectorFamily) -> Self {
        let rows: Vec<Vec<BigInt>> = family
            .entries()
            .iter()
            .map(|e| e.vector.to_integer_row())
            .collect();
        let size = rows.len();
        let mut independent = vec![false; 1 << size];
        independent[0] = true;
        for mask in 1usize..1 << size {
            let low = mask & mask.wrapping_neg();
            // Supersets of dependent sets stay dependent.
            if !independent[mask ^ low] {
                continue;
            }
            let chosen = (0..size)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| rows[b].clone())
                .collect();
            independent[mask] = bareiss_rank(chosen) == mask.count_ones() as usize;
        }
        Self { size, independent }
    }

    pub(crate) fn is_independent(&self, mask: usize) -> bool {
        self.independent[mask]
    }

    /// Least number of independent sets covering `mask`.
    pub(crate) fn min_cover(&self) -> Vec<usize> {
        let full = (1usize << self.size) - 1;
        let mut best = vec![usize::MAX; full + 1];
        best[0] = 0;
        for mask in 1..=full {
            let low = mask & mask.wrapping_neg();
            let rest = mask ^ low;
            // Enumerate sub ⊆ rest; the block is sub | low.
            let mut sub = rest;
            loop {
                let block = sub | low;
                if self.independent[block] && best[mask ^ block] != usize::MAX {
                    best[mask] = best[mask].min(best[mask ^ block] + 1);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        best
    }
}

pub(crate) fn mask_to_set(mask: usize) -> IndexSet {
    (0..usize::BITS as usize)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

/// Brute-force oracle with an explicit budget.
#[derive(Clone, Copy, Debug, Default)]
pub struct Oracle {
    pub budget: OracleBudget,
}

impl Oracle {
    pub fn new(budget: OracleBudget) -> Self {
        Self { budget }
    }

    fn check(&self, family: &VectorFamily, limit: usize) -> Result<()> {
        if family.len() > limit {
            return Err(Error::BudgetExceeded {
                size: family.len(),
                limit,
            });
        }
        let zeros = family.zero_indices();
        if !zeros.is_empty() {
            return Err(Error::Degenerate { indices: zeros });
        }
        Ok(())
    }

    /// Calls `visit` once per set partition of the family whose blocks are
    /// all independent, each normalised to canonical ordered form.
    pub fn for_each_independent_partition<F>(
        &self,
        family: &VectorFamily,
        mut visit: F,
    ) -> Result<()>
    where
        F: FnMut(OrderedPartition),
    {
        self.check(family, self.budget.max_family_size)?;
        let table = MaskTable::new(family);
        let mut blocks: Vec<usize> = Vec::new();
        extend(
            &table,
            0,
            family.len(),
            &mut blocks,
            &mut |blocks: &[usize]| {
                visit(OrderedPartition::canonical(
                    blocks.iter().map(|&m| mask_to_set(m)).collect(),
                ))
            },
        );
        Ok(())
    }

    pub fn enumerate_independent_partitions(
        &self,
        family: &VectorFamily,
    ) -> Result<Vec<OrderedPartition>> {
        let mut out = Vec::new();
        self.for_each_independent_partition(family, |p| out.push(p))?;
        Ok(out)
    }

    /// The fundamental partition by iterated suprema over the enumeration:
    /// maximise the first block size, then the second among those, and so
    /// on. Among partitions with the optimal profile the lexicographically
    /// least block list is returned.
    pub fn fundamental(&self, family: &VectorFamily) -> Result<OrderedPartition> {
        let mut best: Option<(Vec<usize>, OrderedPartition)> = None;
        self.for_each_independent_partition(family, |p| {
            let sizes = p.profile().sizes().to_vec();
            let better = match &best {
                None => true,
                Some((s, q)) => sup_order(&sizes, s).then_with(|| q.cmp(&p)).is_gt(),
            };
            if better {
                best = Some((sizes, p));
            }
        })?;
        best.map(|(_, p)| p)
            .ok_or_else(|| Error::Internal("no independent partition enumerated".into()))
    }

    pub fn fundamental_profile(&self, family: &VectorFamily) -> Result<PartitionProfile> {
        Ok(self.fundamental(family)?.profile())
    }

    /// Scans every nonempty subset for the largest `|J| / dim span(J)`.
    /// Ties go to the larger subset, then the lexicographically smaller
    /// index list.
    pub fn max_ratio(&self, family: &VectorFamily) -> Result<(IndexSet, Rational)> {
        self.check(family, self.budget.max_subset_scan)?;
        if family.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let rows: Vec<Vec<BigInt>> = family
            .entries()
            .iter()
            .map(|e| e.vector.to_integer_row())
            .collect();
        let m = family.len();
        let mut best: Option<(Rational, IndexSet)> = None;
        for mask in 1usize..1 << m {
            let chosen = (0..m)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| rows[b].clone())
                .collect();
            let rank = bareiss_rank(chosen);
            let ratio = Rational::new((mask.count_ones() as i64).into(), (rank as i64).into());
            let set = mask_to_set(mask);
            let better = match &best {
                None => true,
                Some((r, s)) => ratio_order(&ratio, &set, r, s).is_gt(),
            };
            if better {
                best = Some((ratio, set));
            }
        }
        let (ratio, set) = best.expect("nonempty family");
        Ok((set, ratio))
    }

    /// Least `k` such that the family splits into `k` independent sets.
    pub fn min_parts(&self, family: &VectorFamily) -> Result<usize> {
        self.check(family, self.budget.max_family_size)?;
        if family.is_empty() {
            return Ok(0);
        }
        let table = MaskTable::new(family);
        let cover = table.min_cover();
        Ok(cover[cover.len() - 1])
    }
}

fn extend(
    table: &MaskTable,
    element: usize,
    size: usize,
    blocks: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if element == size {
        visit(blocks);
        return;
    }
    let bit = 1usize << element;
    for b in 0..blocks.len() {
        if table.is_independent(blocks[b] | bit) {
            blocks[b] |= bit;
            extend(table, element + 1, size, blocks, visit);
            blocks[b] &= !bit;
        }
    }
    blocks.push(bit);
    extend(table, element + 1, size, blocks, visit);
    blocks.pop();
}

/// Lexicographic comparison of size sequences, the order in which the
/// iterated supremum picks a winner.
fn sup_order(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.cmp(b)
}

/// Order on maximizer candidates: larger ratio, then larger set, then the
/// lexicographically smaller index list. `Greater` means preferred.
pub(crate) fn ratio_order(
    ratio: &Rational,
    set: &IndexSet,
    other_ratio: &Rational,
    other_set: &IndexSet,
) -> std::cmp::Ordering {
    ratio
        .cmp(other_ratio)
        .then_with(|| set.len().cmp(&other_set.len()))
        .then_with(|| other_set.iter().cmp(set.iter()))
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

    fn blocks(p: &OrderedPartition) -> Vec<Vec<usize>> {
        p.blocks()
            .iter()
            .map(|b| b.iter().copied().collect())
            .collect()
    }

    #[test]
    fn enumerate_fam_a() {
        let mut got: Vec<_> = Oracle::default()
            .enumerate_independent_partitions(&fam_a())
            .unwrap()
            .iter()
            .map(blocks)
            .collect();
        got.sort();
        let mut want = vec![
            vec![vec![1, 2], vec![3]],
            vec![vec![1, 3], vec![2]],
            vec![vec![2, 3], vec![1]],
            vec![vec![1], vec![2], vec![3]],
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn enumerate_small_cases() {
        let o = Oracle::default();
        let got = o.enumerate_independent_partitions(&fam_b()).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(blocks(&got[0]), vec![vec![1], vec![2], vec![3]]);

        let got = o
            .enumerate_independent_partitions(&fam(&[&[5, 7]]))
            .unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(blocks(&got[0]), vec![vec![1]]);
    }

    #[test]
    fn fundamental_profiles() {
        let o = Oracle::default();
        assert_eq!(o.fundamental_profile(&fam_a()).unwrap().sizes(), &[2, 1]);
        assert_eq!(o.fundamental_profile(&fam_b()).unwrap().sizes(), &[1, 1, 1]);
        assert_eq!(o.fundamental_profile(&fam_c()).unwrap().sizes(), &[3, 1]);
        assert_eq!(o.fundamental_profile(&fam_d()).unwrap().sizes(), &[2, 2]);
        // Lexicographically least realisation.
        assert_eq!(
            blocks(&o.fundamental(&fam_a()).unwrap()),
            vec![vec![1, 2], vec![3]]
        );
    }

    #[test]
    fn max_ratio_examples() {
        let o = Oracle::default();
        assert_eq!(
            o.max_ratio(&fam_a()).unwrap(),
            (index_set(&[1, 2, 3]), ratio(3, 2))
        );
        assert_eq!(
            o.max_ratio(&fam_b()).unwrap(),
            (index_set(&[1, 2, 3]), ratio(3, 1))
        );
        assert_eq!(
            o.max_ratio(&fam_d()).unwrap(),
            (index_set(&[1, 2, 3, 4]), ratio(2, 1))
        );
    }

    #[test]
    fn min_parts_examples() {
        let o = Oracle::default();
        assert_eq!(o.min_parts(&fam_a()).unwrap(), 2);
        assert_eq!(o.min_parts(&fam_b()).unwrap(), 3);
        assert_eq!(
            o.min_parts(&fam(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]))
                .unwrap(),
            1
        );
    }

    #[test]
    fn budget_is_enforced() {
        let rows: Vec<Vec<i64>> = (0..11).map(|i| vec![1, i]).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let big = fam(&refs);
        let o = Oracle::default();
        assert!(matches!(
            o.enumerate_independent_partitions(&big),
            Err(Error::BudgetExceeded {
                size: 11,
                limit: 10
            })
        ));
        assert!(matches!(
            o.min_parts(&big),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(o.max_ratio(&big).is_ok());
    }

    #[test]
    fn zero_vectors_are_refused() {
        let o = Oracle::default();
        assert!(matches!(
            o.min_parts(&fam(&[&[1, 0], &[0, 0]])),
            Err(Error::Degenerate { indices }) if indices == vec![2]
        ));
    }
}
