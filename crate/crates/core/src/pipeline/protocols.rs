//! Repeated-run experiments: the one-vs-rest importance study and the
//! multiclass confusion study.
//!
//! Run `r` derives its seed from `(master, r)`; within a run the split,
//! sampling and forest draw from separate child streams. Runs execute in
//! parallel and are reduced in run order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::confusion::ConfusionAggregate;
use crate::dataset::{LabeledDataset, Standardizer};
use crate::error::{Error, Result};
use crate::learner::{auc, confusion_counts, stratified_indices, train_forest, ForestConfig};
use crate::rng::derive_seed;
use crate::sampling::Sampling;

pub const DEFAULT_RUNS: usize = 1000;
pub const DEFAULT_MIN_CLASS_SIZE: usize = 7;
pub const DEFAULT_TRAIN_FRACTION: f64 = 0.7;

const SPLIT_STREAM: u64 = 0;
const SAMPLING_STREAM: u64 = 1;
const FOREST_STREAM: u64 = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolOptions {
    pub train_fraction: f64,
    /// Classes with fewer samples are dropped before a multiclass study and
    /// rejected as a binary target.
    pub min_class_size: usize,
}

impl Default for ProtocolOptions {
    fn default() -> Self {
        ProtocolOptions {
            train_fraction: DEFAULT_TRAIN_FRACTION,
            min_class_size: DEFAULT_MIN_CLASS_SIZE,
        }
    }
}

/// How often each feature occupied each importance rank.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankHistogram {
    pub target: String,
    pub feature_names: Vec<String>,
    pub runs: usize,
    /// `counts[feature][rank]`, rank 0 being the most important.
    pub counts: Vec<Vec<u64>>,
    pub mean_auc: f64,
}

impl RankHistogram {
    /// Number of runs in which `feature` ranked first.
    pub fn top_count(&self, feature: usize) -> u64 {
        self.counts[feature][0]
    }
}

/// What one multiclass run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub confusion: Vec<Vec<u64>>,
    pub ovr_auc: Vec<Option<f64>>,
    /// Provenance ids of the test rows, in dataset order.
    pub test_ids: Vec<usize>,
    /// Class counts of the training data after sampling.
    pub train_counts: Vec<usize>,
}

/// One multiclass run: stratified split, standardization fitted on the
/// training rows, sampling of the training rows only, forest, test confusion.
pub fn multiclass_run(
    data: &LabeledDataset,
    sampling: Sampling,
    cfg: &ForestConfig,
    run_seed: u64,
    opts: &ProtocolOptions,
) -> Result<RunResult> {
    let (tr, te) = stratified_indices(
        data,
        opts.train_fraction,
        derive_seed(run_seed, SPLIT_STREAM),
    )?;
    let (train, test) = (data.subset(&tr), data.subset(&te));
    let scaler = Standardizer::fit(&train);
    let (train, test) = (scaler.apply(&train), scaler.apply(&test));
    let train = sampling.apply(&train, derive_seed(run_seed, SAMPLING_STREAM))?;
    let model = train_forest(&train, cfg, derive_seed(run_seed, FOREST_STREAM))?;

    let confusion = confusion_counts(&model, &test);
    let scores: Vec<Vec<f64>> = test
        .samples
        .iter()
        .map(|s| model.predict(&s.features).scores)
        .collect();
    let ovr_auc = (0..data.n_classes())
        .map(|c| {
            let sc: Vec<f64> = scores.iter().map(|s| s[c]).collect();
            let truth: Vec<bool> = test.samples.iter().map(|s| s.label == c).collect();
            auc(&sc, &truth)
        })
        .collect();
    Ok(RunResult {
        confusion,
        ovr_auc,
        test_ids: test.samples.iter().map(|s| s.id).collect(),
        train_counts: train.class_counts(),
    })
}

/// Multiclass confusion study. Classes below `opts.min_class_size` are
/// dropped first; at least two must remain.
pub fn run_multiclass_confusion(
    data: &LabeledDataset,
    sampling: Sampling,
    runs: usize,
    cfg: &ForestConfig,
    seed: u64,
    opts: &ProtocolOptions,
) -> Result<ConfusionAggregate> {
    if runs == 0 {
        return Err(Error::InvalidParameter("runs must be positive".into()));
    }
    let (data, dropped) = data.drop_small_classes(opts.min_class_size);
    if data.n_classes() < 2 {
        return Err(Error::TooFewClasses { dropped });
    }
    let results: Vec<RunResult> = (0..runs)
        .into_par_iter()
        .map(|r| multiclass_run(&data, sampling, cfg, derive_seed(seed, r as u64), opts))
        .collect::<Result<_>>()?;

    let c = data.n_classes();
    let mut totals = vec![vec![0u64; c]; c];
    let mut auc_sum = vec![0.0; c];
    let mut auc_n = vec![0usize; c];
    for r in &results {
        for i in 0..c {
            for j in 0..c {
                totals[i][j] += r.confusion[i][j];
            }
            if let Some(a) = r.ovr_auc[i] {
                auc_sum[i] += a;
                auc_n[i] += 1;
            }
        }
    }
    let mut agg = ConfusionAggregate::from_totals(data.class_names.clone(), totals, runs);
    agg.ovr_auc = (0..c)
        .map(|i| (auc_n[i] > 0).then(|| auc_sum[i] / auc_n[i] as f64))
        .collect();
    Ok(agg)
}

/// One-vs-rest importance study for `target`: per run a stratified split, a
/// forest on the training rows, test AUC and the importance ranking.
pub fn run_binary_importance(
    data: &LabeledDataset,
    target: &str,
    runs: usize,
    cfg: &ForestConfig,
    seed: u64,
    opts: &ProtocolOptions,
) -> Result<RankHistogram> {
    if runs == 0 {
        return Err(Error::InvalidParameter("runs must be positive".into()));
    }
    let t = data
        .class_index(target)
        .ok_or_else(|| Error::UnknownClass(target.to_owned()))?;
    let count = data.class_counts()[t];
    if count < opts.min_class_size {
        return Err(Error::ClassTooSmall {
            class: target.to_owned(),
            count,
            needed: opts.min_class_size,
        });
    }
    let binary = data.one_vs_rest(target)?;
    let outcomes: Vec<(f64, Vec<usize>)> = (0..runs)
        .into_par_iter()
        .map(|r| {
            let run_seed = derive_seed(seed, r as u64);
            let (tr, te) = stratified_indices(
                &binary,
                opts.train_fraction,
                derive_seed(run_seed, SPLIT_STREAM),
            )?;
            let (train, test) = (binary.subset(&tr), binary.subset(&te));
            let model = train_forest(&train, cfg, derive_seed(run_seed, FOREST_STREAM))?;
            let scores: Vec<f64> = test
                .samples
                .iter()
                .map(|s| model.predict(&s.features).scores[1])
                .collect();
            let truth: Vec<bool> = test.samples.iter().map(|s| s.label == 1).collect();
            let a = auc(&scores, &truth).ok_or_else(|| {
                Error::InvalidParameter("test split lacks one of the classes".into())
            })?;
            Ok((a, model.importance_ranking()))
        })
        .collect::<Result<_>>()?;

    let p = data.n_features();
    let mut counts = vec![vec![0u64; p]; p];
    let mut auc_sum = 0.0;
    for (a, ranking) in &outcomes {
        auc_sum += a;
        for (rank, &f) in ranking.iter().enumerate() {
            counts[f][rank] += 1;
        }
    }
    Ok(RankHistogram {
        target: target.to_owned(),
        feature_names: data.feature_names.clone(),
        runs,
        counts,
        mean_auc: auc_sum / runs as f64,
    })
}
