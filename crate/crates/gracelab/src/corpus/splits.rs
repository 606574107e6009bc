//! Split construction for a GRACE run.

use super::{CorpusError, DocumentSet, SplitPlan};
use crate::rng::{mix, seeded_rng};
use rand::seq::SliceRandom;

/// Label of the pooled retraining split.
pub const RETRAIN_POOL_LABEL: &str = "retrain_pool";
/// Label of the pooled dev split.
pub const DEV_SET_LABEL: &str = "dev_set";

/// Splits the target corpus into an unlearning set of exactly `unlearn_count`
/// documents plus a held-out evaluation set, and partitions the pooled
/// non-target corpora 9:1 into a retraining pool and a dev set. Sampling is a
/// seeded shuffle without replacement; the 9:1 rounding favors the retraining
/// pool. The four outputs are pairwise disjoint and jointly cover the inputs.
pub fn make_splits(
    target: &DocumentSet,
    non_target: &[DocumentSet],
    unlearn_count: usize,
    seed: u64,
) -> Result<SplitPlan, CorpusError> {
    if target.len() < unlearn_count + 1 {
        return Err(CorpusError::NotEnoughSequences {
            needed: unlearn_count + 1,
            available: target.len(),
        });
    }
    for set in non_target {
        if set.domain == target.domain {
            return Err(CorpusError::DomainMismatch {
                expected: "non-target domains".to_string(),
                found: set.domain.clone(),
            });
        }
    }

    let mut target_idx: Vec<usize> = (0..target.len()).collect();
    target_idx.shuffle(&mut seeded_rng(mix(seed, 0)));
    let unlearn_seqs = target_idx[..unlearn_count]
        .iter()
        .map(|&i| target.sequences[i].clone())
        .collect();
    let eval_seqs = target_idx[unlearn_count..]
        .iter()
        .map(|&i| target.sequences[i].clone())
        .collect();

    let pooled: Vec<_> = non_target
        .iter()
        .flat_map(|set| set.sequences.iter().cloned())
        .collect();
    let dev_count = pooled.len() / 10;
    if dev_count == 0 {
        return Err(CorpusError::NotEnoughSequences {
            needed: 10,
            available: pooled.len(),
        });
    }
    let mut pool_idx: Vec<usize> = (0..pooled.len()).collect();
    pool_idx.shuffle(&mut seeded_rng(mix(seed, 1)));
    let dev_seqs: Vec<_> = pool_idx[..dev_count].iter().map(|&i| pooled[i].clone()).collect();
    let retrain_seqs: Vec<_> = pool_idx[dev_count..].iter().map(|&i| pooled[i].clone()).collect();

    Ok(SplitPlan {
        unlearn_set: DocumentSet::homogeneous(target.domain.clone(), unlearn_seqs)?,
        target_eval_set: DocumentSet::homogeneous(target.domain.clone(), eval_seqs)?,
        retrain_pool: DocumentSet::mixed(RETRAIN_POOL_LABEL, retrain_seqs),
        dev_set: DocumentSet::mixed(DEV_SET_LABEL, dev_seqs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::TokenSequence;
    use std::collections::BTreeSet;

    /// Documents whose single token encodes a unique id, so set algebra over
    /// splits is exact.
    fn counted_set(domain: &str, count: usize, offset: u32) -> DocumentSet {
        let seqs = (0..count)
            .map(|i| TokenSequence::new(domain, vec![offset + i as u32]).unwrap())
            .collect();
        DocumentSet::homogeneous(domain, seqs).unwrap()
    }

    fn ids(set: &DocumentSet) -> BTreeSet<u32> {
        set.sequences.iter().map(|s| s.tokens[0]).collect()
    }

    #[test]
    fn split_sizes_match_contract() {
        let target = counted_set("t", 100, 0);
        let non_target = vec![counted_set("a", 60, 1000), counted_set("b", 40, 2000)];
        let plan = make_splits(&target, &non_target, 80, 7).unwrap();
        assert_eq!(plan.unlearn_set.len(), 80);
        assert_eq!(plan.target_eval_set.len(), 20);
        assert_eq!(plan.retrain_pool.len(), 90);
        assert_eq!(plan.dev_set.len(), 10);
    }

    #[test]
    fn rounding_favors_retrain_pool() {
        let target = counted_set("t", 5, 0);
        let non_target = vec![counted_set("a", 101, 1000)];
        let plan = make_splits(&target, &non_target, 2, 7).unwrap();
        assert_eq!(plan.dev_set.len(), 10);
        assert_eq!(plan.retrain_pool.len(), 91);
    }

    #[test]
    fn splits_partition_their_inputs() {
        let target = counted_set("t", 50, 0);
        let non_target = vec![counted_set("a", 30, 1000), counted_set("b", 30, 2000)];
        let plan = make_splits(&target, &non_target, 40, 3).unwrap();

        let unlearn = ids(&plan.unlearn_set);
        let eval = ids(&plan.target_eval_set);
        let retrain = ids(&plan.retrain_pool);
        let dev = ids(&plan.dev_set);

        assert!(unlearn.is_disjoint(&eval));
        assert!(retrain.is_disjoint(&dev));
        assert!(unlearn.is_disjoint(&retrain));
        assert!(unlearn.is_disjoint(&dev));
        assert!(eval.is_disjoint(&retrain));
        assert!(eval.is_disjoint(&dev));

        let target_union: BTreeSet<u32> = unlearn.union(&eval).copied().collect();
        assert_eq!(target_union, ids(&target));
        let pool_union: BTreeSet<u32> = retrain.union(&dev).copied().collect();
        assert_eq!(pool_union.len(), 60);
    }

    #[test]
    fn exhausting_the_target_is_rejected() {
        let target = counted_set("t", 20, 0);
        let non_target = vec![counted_set("a", 30, 1000)];
        assert!(matches!(
            make_splits(&target, &non_target, 20, 1),
            Err(CorpusError::NotEnoughSequences { .. })
        ));
    }

    #[test]
    fn target_domain_in_non_target_is_rejected() {
        let target = counted_set("t", 20, 0);
        let non_target = vec![counted_set("t", 30, 1000)];
        assert!(make_splits(&target, &non_target, 10, 1).is_err());
    }

    #[test]
    fn paper_scale_unlearn_count() {
        let target = counted_set("t", 2100, 0);
        let non_target = vec![counted_set("a", 100, 10000)];
        let plan = make_splits(&target, &non_target, 2000, 1).unwrap();
        assert_eq!(plan.unlearn_set.len(), 2000);
        assert_eq!(plan.target_eval_set.len(), 100);
    }

    #[test]
    fn deterministic_under_seed() {
        let target = counted_set("t", 30, 0);
        let non_target = vec![counted_set("a", 30, 1000)];
        let p1 = make_splits(&target, &non_target, 10, 5).unwrap();
        let p2 = make_splits(&target, &non_target, 10, 5).unwrap();
        assert_eq!(p1.unlearn_set, p2.unlearn_set);
        assert_eq!(p1.target_eval_set, p2.target_eval_set);
        assert_eq!(p1.retrain_pool, p2.retrain_pool);
        assert_eq!(p1.dev_set, p2.dev_set);
    }
}
