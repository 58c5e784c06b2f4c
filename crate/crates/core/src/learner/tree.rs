use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::dataset::LabeledDataset;
use crate::rng::NetRng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeConfig {
    /// Features examined per split; the search continues past this many only
    /// if none of them yields a valid split.
    pub max_features: usize,
    pub max_depth: Option<usize>,
    /// Minimum samples on each side of a split.
    pub min_leaf: usize,
}

impl TreeConfig {
    pub fn all_features(n_features: usize) -> Self {
        TreeConfig {
            max_features: n_features,
            max_depth: None,
            min_leaf: 1,
        }
    }
}

/// Flat node storage; children are indices into [`Tree::nodes`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeNode {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        /// Training samples per class that reached this leaf.
        counts: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<TreeNode>,
}

/// Label with the most votes; ties go to the lowest label.
pub(crate) fn majority<T: PartialOrd + Copy>(votes: &[T]) -> usize {
    let mut best = 0;
    for (i, v) in votes.iter().enumerate().skip(1) {
        if *v > votes[best] {
            best = i;
        }
    }
    best
}

impl Tree {
    fn leaf(&self, x: &[f64]) -> &[usize] {
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    i = if x[*feature] <= *threshold {
                        *left
                    } else {
                        *right
                    }
                }
                TreeNode::Leaf { counts } => return counts,
            }
        }
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        majority(self.leaf(x))
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[TreeNode], i: usize) -> usize {
            match &nodes[i] {
                TreeNode::Split { left, right, .. } => {
                    1 + walk(nodes, *left).max(walk(nodes, *right))
                }
                TreeNode::Leaf { .. } => 0,
            }
        }
        walk(&self.nodes, 0)
    }
}

/// Result of training one tree.
#[derive(Debug, Clone)]
pub struct TrainedTree {
    pub tree: Tree,
    /// Count-weighted impurity decrease per feature, divided by the number of
    /// training rows.
    pub importance: Vec<f64>,
}

#[derive(Clone, Copy)]
struct Candidate {
    feature: usize,
    threshold: f64,
    /// `Σ c_L²/n_L + Σ c_R²/n_R`; larger is better.
    score: f64,
}

fn sum_sq(counts: &[usize]) -> f64 {
    counts.iter().map(|&c| (c * c) as f64).sum()
}

struct Builder<'a> {
    data: &'a LabeledDataset,
    cfg: &'a TreeConfig,
    n_classes: usize,
    nodes: Vec<TreeNode>,
    importance: Vec<f64>,
    buf: Vec<(f64, usize)>,
}

impl Builder<'_> {
    fn counts(&self, rows: &[usize]) -> Vec<usize> {
        let mut c = vec![0; self.n_classes];
        for &r in rows {
            c[self.data.samples[r].label] += 1;
        }
        c
    }

    fn best_for_feature(
        &mut self,
        rows: &[usize],
        feature: usize,
        total: &[usize],
    ) -> Option<Candidate> {
        let min_leaf = self.cfg.min_leaf.max(1);
        self.buf.clear();
        self.buf.extend(rows.iter().map(|&r| {
            (
                self.data.samples[r].features[feature],
                self.data.samples[r].label,
            )
        }));
        self.buf.sort_by(|a, b| a.0.total_cmp(&b.0));
        let n = self.buf.len();
        let mut left = vec![0usize; self.n_classes];
        let mut right = total.to_vec();
        let (mut sq_l, mut sq_r) = (0.0f64, sum_sq(total));
        let mut best: Option<Candidate> = None;
        for i in 0..n - 1 {
            let (v, y) = self.buf[i];
            sq_l += (2 * left[y] + 1) as f64;
            sq_r -= (2 * right[y] - 1) as f64;
            left[y] += 1;
            right[y] -= 1;
            let next = self.buf[i + 1].0;
            let n_l = i + 1;
            if next <= v || n_l < min_leaf || n - n_l < min_leaf {
                continue;
            }
            let score = sq_l / n_l as f64 + sq_r / (n - n_l) as f64;
            if best.is_none_or(|b| score > b.score) {
                let mut threshold = v + (next - v) / 2.0;
                if threshold >= next {
                    threshold = v;
                }
                best = Some(Candidate {
                    feature,
                    threshold,
                    score,
                });
            }
        }
        best
    }

    fn build(
        &mut self,
        rows: &mut [usize],
        depth: usize,
        rng: &mut NetRng,
        total_rows: f64,
    ) -> usize {
        let counts = self.counts(rows);
        let id = self.nodes.len();
        self.nodes.push(TreeNode::Leaf {
            counts: counts.clone(),
        });
        let impure = counts.iter().filter(|&&c| c > 0).count() > 1;
        let depth_ok = self.cfg.max_depth.is_none_or(|d| depth < d);
        if !impure || !depth_ok || rows.len() < 2 * self.cfg.min_leaf.max(1) {
            return id;
        }

        let p = self.data.n_features();
        let mut order: Vec<usize> = (0..p).collect();
        order.shuffle(rng);
        let mtry = self.cfg.max_features.clamp(1, p);
        let mut best: Option<Candidate> = None;
        for (visited, &f) in order.iter().enumerate() {
            if visited >= mtry && best.is_some() {
                break;
            }
            if let Some(c) = self.best_for_feature(rows, f, &counts) {
                // Exact ties keep the feature drawn first, so duplicated
                // columns share splits evenly across nodes.
                if best.is_none_or(|b| c.score > b.score) {
                    best = Some(c);
                }
            }
        }
        let Some(split) = best else {
            return id;
        };

        let n = rows.len() as f64;
        // n·G(parent) − n_L·G(L) − n_R·G(R); non-negative by concavity of G.
        let decrease = (split.score - sum_sq(&counts) / n).max(0.0);
        debug_assert!(split.score - sum_sq(&counts) / n > -1e-9);
        self.importance[split.feature] += decrease / total_rows;

        let samples = &self.data.samples;
        let mut mid = 0;
        for i in 0..rows.len() {
            if samples[rows[i]].features[split.feature] <= split.threshold {
                rows.swap(i, mid);
                mid += 1;
            }
        }
        let (l_rows, r_rows) = rows.split_at_mut(mid);
        let left = self.build(l_rows, depth + 1, rng, total_rows);
        let right = self.build(r_rows, depth + 1, rng, total_rows);
        self.nodes[id] = TreeNode::Split {
            feature: split.feature,
            threshold: split.threshold,
            left,
            right,
        };
        id
    }
}

/// Grow a Gini decision tree on the rows `rows` of `data` (repeats allowed).
pub fn train_tree_on(
    data: &LabeledDataset,
    rows: &[usize],
    cfg: &TreeConfig,
    rng: &mut NetRng,
) -> TrainedTree {
    let mut b = Builder {
        data,
        cfg,
        n_classes: data.n_classes().max(1),
        nodes: Vec::new(),
        importance: vec![0.0; data.n_features()],
        buf: Vec::with_capacity(rows.len()),
    };
    let mut rows = rows.to_vec();
    let total = rows.len().max(1) as f64;
    b.build(&mut rows, 0, rng, total);
    TrainedTree {
        tree: Tree { nodes: b.nodes },
        importance: b.importance,
    }
}

/// Grow a tree on every row of `data`.
pub fn train_tree(data: &LabeledDataset, cfg: &TreeConfig, seed: u64) -> TrainedTree {
    let rows: Vec<usize> = (0..data.len()).collect();
    train_tree_on(data, &rows, cfg, &mut crate::rng::rng_from_seed(seed))
}
