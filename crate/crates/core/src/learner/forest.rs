use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tree::{majority, train_tree_on, Tree, TreeConfig};
use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::rng::{stream, NetRng};

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestConfig {
    pub trees: usize,
    /// Features per split; `None` means `ceil(sqrt(p))`.
    pub max_features: Option<usize>,
    pub max_depth: Option<usize>,
    pub min_leaf: usize,
}

impl Default for ForestConfig {
    fn default() -> Self {
        ForestConfig {
            trees: 100,
            max_features: None,
            max_depth: None,
            min_leaf: 1,
        }
    }
}

impl ForestConfig {
    pub fn tree_config(&self, n_features: usize) -> TreeConfig {
        let sqrt = (n_features as f64).sqrt().ceil() as usize;
        TreeConfig {
            max_features: self
                .max_features
                .unwrap_or(sqrt)
                .clamp(1, n_features.max(1)),
            max_depth: self.max_depth,
            min_leaf: self.min_leaf.max(1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestModel {
    pub format_version: u32,
    pub config: ForestConfig,
    pub seed: u64,
    pub feature_names: Vec<String>,
    pub class_names: Vec<String>,
    pub trees: Vec<Tree>,
    /// Accumulated impurity decrease per feature over all trees.
    pub impurity_decrease: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub label: usize,
    /// Fraction of trees voting for each class.
    pub scores: Vec<f64>,
}

/// `n` row indices drawn uniformly with replacement.
pub fn bootstrap_rows(n: usize, rng: &mut NetRng) -> Vec<usize> {
    (0..n).map(|_| rng.random_range(0..n)).collect()
}

/// Train a random forest: each tree sees a bootstrap sample of size `n` and
/// draws a fresh feature subset at every split. Tree `t` uses the RNG stream
/// `(seed, t)`.
pub fn train_forest(data: &LabeledDataset, cfg: &ForestConfig, seed: u64) -> Result<ForestModel> {
    if data.is_empty() {
        return Err(Error::InvalidParameter(
            "cannot train on an empty dataset".into(),
        ));
    }
    if cfg.trees == 0 {
        return Err(Error::InvalidParameter(
            "forest needs at least one tree".into(),
        ));
    }
    let tcfg = cfg.tree_config(data.n_features());
    let n = data.len();
    let trained: Vec<_> = (0..cfg.trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, t as u64);
            let rows = bootstrap_rows(n, &mut rng);
            train_tree_on(data, &rows, &tcfg, &mut rng)
        })
        .collect();
    let mut impurity_decrease = vec![0.0; data.n_features()];
    let mut trees = Vec::with_capacity(trained.len());
    for t in trained {
        for (acc, v) in impurity_decrease.iter_mut().zip(&t.importance) {
            *acc += v;
        }
        trees.push(t.tree);
    }
    Ok(ForestModel {
        format_version: MODEL_FORMAT_VERSION,
        config: cfg.clone(),
        seed,
        feature_names: data.feature_names.clone(),
        class_names: data.class_names.clone(),
        trees,
        impurity_decrease,
    })
}

impl ForestModel {
    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    /// Plurality vote of the trees; ties go to the lowest label.
    ///
    /// # Panics
    /// If `x` does not have one value per feature.
    pub fn predict(&self, x: &[f64]) -> Prediction {
        assert_eq!(x.len(), self.feature_names.len(), "feature arity mismatch");
        let mut votes = vec![0usize; self.n_classes().max(1)];
        for t in &self.trees {
            votes[t.predict(x)] += 1;
        }
        let label = majority(&votes);
        let b = self.trees.len() as f64;
        Prediction {
            label,
            scores: votes.iter().map(|&v| v as f64 / b).collect(),
        }
    }

    /// Mean decrease in impurity, normalized to sum to 1 (all zero when no
    /// split was ever made).
    pub fn importances(&self) -> Vec<f64> {
        let total: f64 = self.impurity_decrease.iter().sum();
        if total > 0.0 {
            self.impurity_decrease.iter().map(|v| v / total).collect()
        } else {
            vec![0.0; self.impurity_decrease.len()]
        }
    }

    /// Feature ids by descending importance; ties by feature id.
    pub fn importance_ranking(&self) -> Vec<usize> {
        let imp = self.importances();
        let mut order: Vec<usize> = (0..imp.len()).collect();
        order.sort_by(|&a, &b| imp[b].total_cmp(&imp[a]).then(a.cmp(&b)));
        order
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("forest serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: ForestModel = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("bad model document: {e}")))?;
        if m.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::InvalidParameter(format!(
                "unsupported model format version {}",
                m.format_version
            )));
        }
        Ok(m)
    }
}
