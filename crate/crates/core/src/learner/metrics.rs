use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::rng::stream;

use rand::seq::SliceRandom;

/// Gini impurity `1 - Σ f_i²` of a class-fraction tuple.
///
/// # Panics
/// If a fraction is negative or the fractions do not sum to 1 (within 1e-9).
pub fn gini(fractions: &[f64]) -> f64 {
    assert!(
        fractions.iter().all(|&f| f >= 0.0),
        "fractions must be non-negative"
    );
    let sum: f64 = fractions.iter().sum();
    assert!((sum - 1.0).abs() < 1e-9, "fractions sum to {sum}, not 1");
    1.0 - fractions.iter().map(|f| f * f).sum::<f64>()
}

/// Area under the ROC curve as the Mann–Whitney statistic: the fraction of
/// (positive, negative) pairs ranked correctly, ties counting one half.
/// `None` when either class is absent.
pub fn auc(scores: &[f64], truths: &[bool]) -> Option<f64> {
    assert_eq!(
        scores.len(),
        truths.len(),
        "scores and truths differ in length"
    );
    let n_pos = truths.iter().filter(|&&t| t).count();
    let n_neg = truths.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return None;
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    // Sum of midranks of the positives.
    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        let midrank = (i + j) as f64 / 2.0 + 1.0;
        rank_sum += midrank * order[i..=j].iter().filter(|&&k| truths[k]).count() as f64;
        i = j + 1;
    }
    let (p, n) = (n_pos as f64, n_neg as f64);
    Some((rank_sum - p * (p + 1.0) / 2.0) / (p * n))
}

/// Per-class shuffled split. Each class sends `round(fraction · count)` rows
/// (half up) to training, clamped so both sides get at least one. Returned
/// indices are ascending.
pub fn stratified_indices(
    d: &LabeledDataset,
    train_fraction: f64,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(0.0..=1.0).contains(&train_fraction) {
        return Err(Error::InvalidParameter(format!(
            "train fraction {train_fraction} not in [0, 1]"
        )));
    }
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (c, mut members) in d.indices_by_class().into_iter().enumerate() {
        if members.is_empty() {
            continue;
        }
        if members.len() < 2 {
            return Err(Error::ClassTooSmall {
                class: d.class_names[c].clone(),
                count: members.len(),
                needed: 2,
            });
        }
        members.shuffle(&mut stream(seed, c as u64));
        let want = (train_fraction * members.len() as f64 + 0.5 + 1e-9).floor() as usize;
        let k = want.clamp(1, members.len() - 1);
        train.extend_from_slice(&members[..k]);
        test.extend_from_slice(&members[k..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

pub fn stratified_split(
    d: &LabeledDataset,
    train_fraction: f64,
    seed: u64,
) -> Result<(LabeledDataset, LabeledDataset)> {
    let (tr, te) = stratified_indices(d, train_fraction, seed)?;
    Ok((d.subset(&tr), d.subset(&te)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gini_identities() {
        assert_eq!(gini(&[1.0]), 0.0);
        assert_eq!(gini(&[0.5, 0.5]), 0.5);
        assert!((gini(&[1.0 / 3.0, 2.0 / 3.0]) - 4.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    #[should_panic(expected = "sum")]
    fn gini_rejects_unnormalized() {
        gini(&[0.5, 0.6]);
    }

    #[test]
    fn auc_hand_cases() {
        let t = [true, true, false, false];
        assert_eq!(auc(&[0.9, 0.8, 0.2, 0.1], &t), Some(1.0));
        assert_eq!(auc(&[0.4; 4], &t), Some(0.5));
        assert_eq!(auc(&[0.8, 0.3, 0.5, 0.1], &t), Some(0.75));
        assert_eq!(auc(&[0.1, 0.2], &[true, true]), None);
    }

    fn counts_dataset(counts: &[(&str, usize)]) -> LabeledDataset {
        let rows = counts
            .iter()
            .flat_map(|&(l, n)| (0..n).map(move |i| (l, vec![i as f64])));
        LabeledDataset::from_rows(vec!["x".into()], rows).unwrap()
    }

    #[test]
    fn split_sizes() {
        let (tr, te) = stratified_split(&counts_dataset(&[("A", 10)]), 0.7, 1).unwrap();
        assert_eq!((tr.len(), te.len()), (7, 3));
        let (tr, te) = stratified_split(&counts_dataset(&[("A", 2)]), 0.7, 1).unwrap();
        assert_eq!((tr.len(), te.len()), (1, 1));
        let (tr, _) = stratified_split(&counts_dataset(&[("A", 10), ("B", 20)]), 0.7, 1).unwrap();
        assert_eq!(tr.class_counts(), vec![7, 14]);
    }

    #[test]
    fn split_partitions_rows() {
        let d = counts_dataset(&[("A", 13), ("B", 9), ("C", 7)]);
        let (tr, te) = stratified_indices(&d, 0.7, 5).unwrap();
        let mut all: Vec<_> = tr.iter().chain(&te).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..d.len()).collect::<Vec<_>>());
    }

    #[test]
    fn split_rejects_singleton_class() {
        let err = stratified_split(&counts_dataset(&[("A", 5), ("solo", 1)]), 0.7, 0).unwrap_err();
        assert!(matches!(err, Error::ClassTooSmall { ref class, .. } if class == "solo"));
    }
}
