use serde::{Deserialize, Serialize};

/// Confusion counts averaged element-wise over repeated runs, with the
/// row-normalized and max-symmetrized derivatives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfusionAggregate {
    pub class_names: Vec<String>,
    pub runs: usize,
    /// `c[true][predicted]` summed over runs.
    pub total_counts: Vec<Vec<u64>>,
    pub mean_counts: Vec<Vec<f64>>,
    pub row_normalized: Vec<Vec<f64>>,
    /// `max(row_normalized[i][j], row_normalized[j][i])`.
    pub similarity: Vec<Vec<f64>>,
    /// Classes that never appeared in a test split; their rows are all zero.
    pub zero_rows: Vec<bool>,
    /// Mean one-vs-rest AUC per class over the runs where it was defined.
    pub ovr_auc: Vec<Option<f64>>,
}

impl ConfusionAggregate {
    /// Build from integer totals accumulated over `runs` runs.
    pub fn from_totals(class_names: Vec<String>, total_counts: Vec<Vec<u64>>, runs: usize) -> Self {
        let c = class_names.len();
        let div = runs.max(1) as f64;
        let mean_counts: Vec<Vec<f64>> = total_counts
            .iter()
            .map(|row| row.iter().map(|&v| v as f64 / div).collect())
            .collect();
        let mut zero_rows = vec![false; c];
        let row_normalized: Vec<Vec<f64>> = total_counts
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let sum: u64 = row.iter().sum();
                if sum == 0 {
                    zero_rows[i] = true;
                    vec![0.0; c]
                } else {
                    row.iter().map(|&v| v as f64 / sum as f64).collect()
                }
            })
            .collect();
        let similarity = symmetrize_max(&row_normalized);
        ConfusionAggregate {
            class_names,
            runs,
            total_counts,
            mean_counts,
            row_normalized,
            similarity,
            zero_rows,
            ovr_auc: vec![None; c],
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.class_names.len())
            .map(|i| self.row_normalized[i][i])
            .collect()
    }
}

pub fn symmetrize_max(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let c = m.len();
    let mut s = vec![vec![0.0; c]; c];
    for i in 0..c {
        for j in 0..c {
            s[i][j] = m[i][j].max(m[j][i]);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_symmetry() {
        let agg = ConfusionAggregate::from_totals(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![6, 2, 0], vec![1, 3, 0], vec![0, 0, 0]],
            2,
        );
        assert_eq!(agg.mean_counts[0], vec![3.0, 1.0, 0.0]);
        assert_eq!(agg.row_normalized[0], vec![0.75, 0.25, 0.0]);
        assert_eq!(agg.row_normalized[1], vec![0.25, 0.75, 0.0]);
        assert_eq!(agg.zero_rows, vec![false, false, true]);
        assert_eq!(agg.similarity[0][1], 0.25);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(agg.similarity[i][j], agg.similarity[j][i]);
            }
        }
    }
}
