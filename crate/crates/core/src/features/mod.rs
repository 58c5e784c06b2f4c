//! The eight scale-invariant features of a network: global clustering,
//! degree assortativity and the six 4-node motif significance profiles.

mod census;
mod metrics;

pub use census::{census_with_mode, motif_census, CensusMode, Motif, MotifCensus};
pub use metrics::{clustering_coefficient, degree_assortativity, triangle_count};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Graph;
use crate::null_model::{ensemble_member, EnsembleSpec};

/// Column names of a feature vector, in order.
pub const FEATURE_NAMES: [&str; 8] = [
    "clustering",
    "assortativity",
    "sp1",
    "sp2",
    "sp3",
    "sp4",
    "sp5",
    "sp6",
];

/// Magnitude assigned to a z-score whose ensemble has zero spread but whose
/// original count differs from the ensemble mean.
pub const ZSCORE_CLAMP: f64 = 1e6;

/// How z-scores are scaled into a significance profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileNorm {
    /// `Z_i / sqrt(Σ Z_j²)`: unit Euclidean length.
    #[default]
    UnitLength,
    /// `Z_i / Σ Z_j²`, without the square root.
    SumOfSquares,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FeatureOptions {
    pub census: CensusMode,
    pub norm: ProfileNorm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZScoreReport {
    pub original: MotifCensus,
    pub ensemble_mean: [f64; 6],
    pub ensemble_std: [f64; 6],
    pub z: [f64; 6],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub clustering: f64,
    /// `None` when undefined (no edges, or every edge end has equal degree).
    pub assortativity: Option<f64>,
    pub sp: [f64; 6],
}

impl FeatureVector {
    /// The eight values, with undefined assortativity imputed as 0.
    pub fn to_array(&self) -> [f64; 8] {
        let mut out = [0.0; 8];
        out[0] = self.clustering;
        out[1] = self.assortativity.unwrap_or(0.0);
        out[2..].copy_from_slice(&self.sp);
        out
    }
}

/// Z-scores of `original` against a set of ensemble censuses.
///
/// Uses the sample standard deviation. Zero spread yields `Z = 0` when the
/// original equals the ensemble mean and `±ZSCORE_CLAMP` otherwise; both
/// tests are done in exact integer arithmetic.
pub fn z_scores(original: &MotifCensus, ensemble: &[MotifCensus]) -> ZScoreReport {
    let k = ensemble.len() as u128;
    let mut report = ZScoreReport {
        original: *original,
        ensemble_mean: [0.0; 6],
        ensemble_std: [0.0; 6],
        z: [0.0; 6],
    };
    if k == 0 {
        return report;
    }
    for i in 0..6 {
        let sum: u128 = ensemble.iter().map(|c| u128::from(c.counts[i])).sum();
        let sum_sq: u128 = ensemble
            .iter()
            .map(|c| u128::from(c.counts[i]).pow(2))
            .sum();
        let spread = k * sum_sq - sum * sum;
        let mean = sum as f64 / k as f64;
        let std = if k > 1 {
            (spread as f64 / (k * (k - 1)) as f64).sqrt()
        } else {
            0.0
        };
        let orig = u128::from(original.counts[i]);
        let z = if spread > 0 && std > 0.0 {
            (orig as f64 - mean) / std
        } else if orig * k == sum {
            0.0
        } else if orig * k > sum {
            ZSCORE_CLAMP
        } else {
            -ZSCORE_CLAMP
        };
        report.ensemble_mean[i] = mean;
        report.ensemble_std[i] = std;
        report.z[i] = z;
    }
    report
}

/// Normalize z-scores into a significance profile. All-zero input maps to the
/// zero vector.
pub fn normalize_profile(z: &[f64; 6], norm: ProfileNorm) -> [f64; 6] {
    let ss: f64 = z.iter().map(|v| v * v).sum();
    if ss == 0.0 {
        return [0.0; 6];
    }
    let scale = match norm {
        ProfileNorm::UnitLength => ss.sqrt(),
        ProfileNorm::SumOfSquares => ss,
    };
    z.map(|v| v / scale)
}

/// Census of `g` and of every member of its null ensemble (index order).
pub fn ensemble_censuses(g: &Graph, spec: &EnsembleSpec, mode: CensusMode) -> Vec<MotifCensus> {
    (0..spec.ensemble_size)
        .into_par_iter()
        .map(|i| census_with_mode(&ensemble_member(g, spec, i), mode))
        .collect()
}

/// Z-scores and significance profile of `g` against its configuration-model
/// ensemble.
pub fn significance_profile(
    g: &Graph,
    spec: &EnsembleSpec,
    opts: FeatureOptions,
) -> Result<(ZScoreReport, [f64; 6])> {
    spec.validate()?;
    let original = census_with_mode(g, opts.census);
    let members = ensemble_censuses(g, spec, opts.census);
    let report = z_scores(&original, &members);
    let sp = normalize_profile(&report.z, opts.norm);
    Ok((report, sp))
}

/// Significance profile against an explicitly supplied ensemble.
pub fn significance_profile_with(
    g: &Graph,
    ensemble: &[Graph],
    opts: FeatureOptions,
) -> (ZScoreReport, [f64; 6]) {
    let original = census_with_mode(g, opts.census);
    let members: Vec<_> = ensemble
        .iter()
        .map(|h| census_with_mode(h, opts.census))
        .collect();
    let report = z_scores(&original, &members);
    let sp = normalize_profile(&report.z, opts.norm);
    (report, sp)
}

/// All eight features of `g`.
pub fn featurize(g: &Graph, spec: &EnsembleSpec, opts: FeatureOptions) -> Result<FeatureVector> {
    let (_, sp) = significance_profile(g, spec, opts)?;
    Ok(FeatureVector {
        clustering: clustering_coefficient(g),
        assortativity: degree_assortativity(g),
        sp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn spec(size: usize, seed: u64) -> EnsembleSpec {
        EnsembleSpec::new(size, 10, seed).unwrap()
    }

    #[test]
    fn triangle_has_zero_profile() {
        let fv = featurize(&complete(3), &spec(5, 1), FeatureOptions::default()).unwrap();
        assert_eq!(fv.clustering, 1.0);
        assert_eq!(fv.assortativity, None);
        assert_eq!(fv.sp, [0.0; 6]);
    }

    #[test]
    fn empty_graph_is_degenerate() {
        let fv = featurize(&Graph::empty(5), &spec(3, 1), FeatureOptions::default()).unwrap();
        assert_eq!(fv.clustering, 0.0);
        assert_eq!(fv.assortativity, None);
        assert_eq!(fv.sp, [0.0; 6]);
    }

    #[test]
    fn four_path_composition() {
        let p = path(4);
        let fv = featurize(&p, &spec(20, 3), FeatureOptions::default()).unwrap();
        assert_eq!(fv.clustering, 0.0);
        assert!((fv.assortativity.unwrap() + 0.5).abs() < 1e-12);
        // Every rewiring of the 4-path is again a 4-path: zero spread, equal
        // mean, so every z-score is zero.
        assert_eq!(motif_census(&p).counts, [0, 0, 0, 0, 0, 1]);
        assert_eq!(fv.sp, [0.0; 6]);
    }

    #[test]
    fn unit_normalization() {
        assert_eq!(
            normalize_profile(&[2.0, 0.0, 0.0, 0.0, 0.0, 0.0], ProfileNorm::UnitLength),
            [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]
        );
        assert_eq!(
            normalize_profile(&[2.0, 0.0, 0.0, 0.0, 0.0, 0.0], ProfileNorm::SumOfSquares),
            [0.5, 0.0, 0.0, 0.0, 0.0, 0.0]
        );
        assert_eq!(
            normalize_profile(&[0.0; 6], ProfileNorm::UnitLength),
            [0.0; 6]
        );
    }

    #[test]
    fn zero_spread_convention() {
        let orig = MotifCensus::from([3, 2, 0, 0, 0, 0]);
        let ens = vec![MotifCensus::from([2, 2, 0, 0, 0, 1]); 4];
        let r = z_scores(&orig, &ens);
        assert_eq!(r.z, [ZSCORE_CLAMP, 0.0, 0.0, 0.0, 0.0, -ZSCORE_CLAMP]);
        assert_eq!(r.ensemble_std, [0.0; 6]);
    }

    #[test]
    fn z_score_uses_sample_std() {
        let orig = MotifCensus::from([10, 0, 0, 0, 0, 0]);
        let ens: Vec<_> = [4u64, 6]
            .iter()
            .map(|&c| MotifCensus::from([c, 0, 0, 0, 0, 0]))
            .collect();
        let r = z_scores(&orig, &ens);
        // mean 5, sample sd sqrt(2)
        assert!((r.z[0] - 5.0 / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn lattice_is_clique_rich() {
        let mut positive = 0;
        for seed in 0..20 {
            let g = crate::generators::gen_ws(200, 8, 0.05, seed).unwrap();
            let (_, sp) = significance_profile(
                &g,
                &EnsembleSpec::default().with_seed(seed),
                FeatureOptions::default(),
            )
            .unwrap();
            if sp[Motif::Clique.index()] > 0.0 {
                positive += 1;
            }
        }
        assert!(positive >= 18, "{positive}");
    }
}
