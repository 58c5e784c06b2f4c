//! Class rebalancing: random over-sampling, random under-sampling and SMOTE.
//!
//! Classes are processed in label order, each with its own RNG stream derived
//! from `(seed, label)`.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{LabeledDataset, Origin, Sample};
use crate::error::{Error, Result};
use crate::rng::stream;

pub const DEFAULT_SMOTE_K: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "regime")]
pub enum Sampling {
    None,
    Over,
    Under,
    Smote { k: usize },
}

impl Sampling {
    pub fn name(&self) -> &'static str {
        match self {
            Sampling::None => "none",
            Sampling::Over => "over",
            Sampling::Under => "under",
            Sampling::Smote { .. } => "smote",
        }
    }

    pub fn all(smote_k: usize) -> [Sampling; 4] {
        [
            Sampling::None,
            Sampling::Over,
            Sampling::Under,
            Sampling::Smote { k: smote_k },
        ]
    }

    pub fn apply(&self, d: &LabeledDataset, seed: u64) -> Result<LabeledDataset> {
        match *self {
            Sampling::None => Ok(d.clone()),
            Sampling::Over => oversample(d, seed),
            Sampling::Under => undersample(d, seed),
            Sampling::Smote { k } => smote(d, k, seed),
        }
    }
}

impl fmt::Display for Sampling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sampling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Sampling::None),
            "over" => Ok(Sampling::Over),
            "under" => Ok(Sampling::Under),
            "smote" => Ok(Sampling::Smote { k: DEFAULT_SMOTE_K }),
            _ => Err(Error::InvalidParameter(format!(
                "unknown sampling regime `{s}` (expected none, over, under or smote)"
            ))),
        }
    }
}

fn non_empty_classes(d: &LabeledDataset) -> Result<Vec<Vec<usize>>> {
    let by_class = d.indices_by_class();
    if by_class.is_empty() {
        return Err(Error::InvalidParameter("dataset has no classes".into()));
    }
    for (c, members) in by_class.iter().enumerate() {
        if members.is_empty() {
            return Err(Error::ClassTooSmall {
                class: d.class_names[c].clone(),
                count: 0,
                needed: 1,
            });
        }
    }
    Ok(by_class)
}

/// Pad every minority class with uniform-with-replacement copies of its own
/// samples until it matches the largest class.
pub fn oversample(d: &LabeledDataset, seed: u64) -> Result<LabeledDataset> {
    let by_class = non_empty_classes(d)?;
    let target = by_class.iter().map(Vec::len).max().unwrap_or(0);
    let mut samples = d.samples.clone();
    for (c, members) in by_class.iter().enumerate() {
        let mut rng = stream(seed, c as u64);
        for _ in members.len()..target {
            let src = &d.samples[members[rng.random_range(0..members.len())]];
            samples.push(Sample {
                origin: Origin::Duplicate,
                ..src.clone()
            });
        }
    }
    Ok(d.with_samples(samples))
}

/// Delete uniformly chosen samples from every majority class until it matches
/// the smallest class. Survivors keep their original order.
pub fn undersample(d: &LabeledDataset, seed: u64) -> Result<LabeledDataset> {
    let by_class = non_empty_classes(d)?;
    let target = by_class.iter().map(Vec::len).min().unwrap_or(0);
    let mut keep = vec![false; d.len()];
    for (c, members) in by_class.iter().enumerate() {
        let mut rng = stream(seed, c as u64);
        for i in index::sample(&mut rng, members.len(), target).into_iter() {
            keep[members[i]] = true;
        }
    }
    let samples = d
        .samples
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(s, _)| s.clone())
        .collect();
    Ok(d.with_samples(samples))
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// `x_i + delta * (x_n - x_i)`.
pub fn interpolate(base: &[f64], neighbor: &[f64], delta: f64) -> Vec<f64> {
    base.iter()
        .zip(neighbor)
        .map(|(a, b)| a + delta * (b - a))
        .collect()
}

/// SMOTE: grow each minority class to the majority count with points
/// interpolated between a class member and one of its `k` nearest same-class
/// neighbours (Euclidean; ties by provenance id).
///
/// Base points are taken round-robin over the class. The effective `k` is
/// `min(k, class size - 1)`, so a minority class of one sample is an error.
pub fn smote(d: &LabeledDataset, k: usize, seed: u64) -> Result<LabeledDataset> {
    if k == 0 {
        return Err(Error::InvalidParameter("SMOTE needs k >= 1".into()));
    }
    let by_class = non_empty_classes(d)?;
    let target = by_class.iter().map(Vec::len).max().unwrap_or(0);
    let mut samples = d.samples.clone();
    for (c, members) in by_class.iter().enumerate() {
        let need = target - members.len();
        if need == 0 {
            continue;
        }
        if members.len() < 2 {
            return Err(Error::ClassTooSmall {
                class: d.class_names[c].clone(),
                count: members.len(),
                needed: 2,
            });
        }
        let kk = k.min(members.len() - 1);
        let neighbors: Vec<Vec<usize>> = members
            .iter()
            .map(|&i| {
                let xi = &d.samples[i].features;
                let mut cand: Vec<(f64, usize, usize)> = members
                    .iter()
                    .filter(|&&j| j != i)
                    .map(|&j| (sq_dist(xi, &d.samples[j].features), d.samples[j].id, j))
                    .collect();
                cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                cand.into_iter().take(kk).map(|(_, _, j)| j).collect()
            })
            .collect();

        let mut rng = stream(seed, c as u64);
        for t in 0..need {
            let slot = t % members.len();
            let base = &d.samples[members[slot]];
            let nb = &d.samples[neighbors[slot][rng.random_range(0..kk)]];
            let delta: f64 = rng.random();
            samples.push(Sample {
                features: interpolate(&base.features, &nb.features, delta),
                label: c,
                id: base.id,
                origin: Origin::Synthetic {
                    neighbor: nb.id,
                    delta,
                },
            });
        }
    }
    Ok(d.with_samples(samples))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(counts: &[(&str, usize)]) -> LabeledDataset {
        let mut rows = Vec::new();
        let mut v = 0.0;
        for &(name, n) in counts {
            for _ in 0..n {
                rows.push((name, vec![v, -v]));
                v += 1.0;
            }
        }
        LabeledDataset::from_rows(vec!["x".into(), "y".into()], rows).unwrap()
    }

    #[test]
    fn oversample_counts() {
        let d = oversample(&data(&[("A", 5), ("B", 2)]), 1).unwrap();
        assert_eq!(d.class_counts(), vec![5, 5]);
        let added: Vec<_> = d.samples[7..].iter().collect();
        assert!(added
            .iter()
            .all(|s| s.label == 1 && s.origin == Origin::Duplicate));
        assert!(added.iter().all(|s| s.id == 5 || s.id == 6));

        let bal = data(&[("A", 4), ("B", 4)]);
        assert_eq!(oversample(&bal, 1).unwrap(), bal);
        let d = oversample(&data(&[("A", 3), ("B", 1), ("C", 2)]), 2).unwrap();
        assert_eq!(d.class_counts(), vec![3, 3, 3]);
    }

    #[test]
    fn undersample_counts() {
        let src = data(&[("A", 5), ("B", 2)]);
        let d = undersample(&src, 1).unwrap();
        assert_eq!(d.class_counts(), vec![2, 2]);
        assert!(d.samples.iter().all(|s| src.samples.contains(s)));
        let bal = data(&[("A", 4), ("B", 4)]);
        assert_eq!(undersample(&bal, 3).unwrap(), bal);
        let d = undersample(&data(&[("A", 7), ("B", 3), ("C", 3)]), 5).unwrap();
        assert_eq!(d.class_counts(), vec![3, 3, 3]);
    }

    #[test]
    fn empty_class_is_rejected() {
        let mut d = data(&[("A", 3)]);
        d.class_names.push("B".into());
        assert!(matches!(
            oversample(&d, 0),
            Err(Error::ClassTooSmall { .. })
        ));
        assert!(matches!(
            undersample(&d, 0),
            Err(Error::ClassTooSmall { .. })
        ));
    }

    #[test]
    fn interpolation_endpoints() {
        let xi = vec![0.0; 8];
        let mut xn = vec![0.0; 8];
        xn[0] = 1.0;
        xn[1] = 1.0;
        let mid = interpolate(&xi, &xn, 0.5);
        assert_eq!(&mid[..3], &[0.5, 0.5, 0.0]);
        assert_eq!(interpolate(&xi, &xn, 0.0), xi);
    }

    #[test]
    fn smote_balances_on_segments() {
        let src = data(&[("A", 9), ("B", 3)]);
        let d = smote(&src, 3, 4).unwrap();
        assert_eq!(d.class_counts(), vec![9, 9]);
        for s in d.samples.iter().filter(|s| !s.is_original()) {
            let Origin::Synthetic { neighbor, delta } = s.origin else {
                panic!("unexpected origin {:?}", s.origin);
            };
            let a = &src.samples[s.id].features;
            let b = &src.samples[neighbor].features;
            assert_eq!(src.samples[neighbor].label, s.label);
            assert!((0.0..=1.0).contains(&delta));
            for ((x, lo), hi) in s.features.iter().zip(a).zip(b) {
                assert!(*x >= lo.min(*hi) && *x <= lo.max(*hi));
            }
        }
    }

    #[test]
    fn smote_singleton_minority_names_class() {
        let err = smote(&data(&[("A", 4), ("lonely", 1)]), 3, 0).unwrap_err();
        match err {
            Error::ClassTooSmall { class, .. } => assert_eq!(class, "lonely"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn regimes_parse() {
        assert_eq!(
            "smote".parse::<Sampling>().unwrap(),
            Sampling::Smote { k: 3 }
        );
        assert!("adasyn".parse::<Sampling>().is_err());
    }
}
