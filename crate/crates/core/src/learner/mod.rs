//! Gini decision trees, bagged random forests with impurity-based feature
//! importance, and the evaluation helpers used by the protocols.

mod forest;
mod metrics;
mod tree;

pub use forest::{
    bootstrap_rows, train_forest, ForestConfig, ForestModel, Prediction, MODEL_FORMAT_VERSION,
};
pub use metrics::{auc, gini, stratified_indices, stratified_split};
pub use tree::{train_tree, train_tree_on, TrainedTree, Tree, TreeConfig, TreeNode};

/// Confusion counts `c[true][predicted]` of `model` on `test`.
pub fn confusion_counts(
    model: &ForestModel,
    test: &crate::dataset::LabeledDataset,
) -> Vec<Vec<u64>> {
    let c = model.n_classes();
    let mut m = vec![vec![0u64; c]; c];
    for s in &test.samples {
        m[s.label][model.predict(&s.features).label] += 1;
    }
    m
}
