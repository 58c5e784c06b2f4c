//! Labeled feature vectors with provenance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a sample came to be in a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Origin {
    Original,
    /// Copy of the original sample with the same id.
    Duplicate,
    /// Interpolated between the original with the same id and `neighbor`:
    /// `x = x_id + delta * (x_neighbor - x_id)`.
    Synthetic {
        neighbor: usize,
        delta: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub features: Vec<f64>,
    /// Index into [`LabeledDataset::class_names`].
    pub label: usize,
    /// Provenance id; unique among originals.
    pub id: usize,
    pub origin: Origin,
}

impl Sample {
    pub fn original(id: usize, label: usize, features: Vec<f64>) -> Self {
        Sample {
            features,
            label,
            id,
            origin: Origin::Original,
        }
    }

    pub fn is_original(&self) -> bool {
        matches!(self.origin, Origin::Original)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDataset {
    pub feature_names: Vec<String>,
    pub class_names: Vec<String>,
    pub samples: Vec<Sample>,
}

impl LabeledDataset {
    pub fn new(
        feature_names: Vec<String>,
        class_names: Vec<String>,
        samples: Vec<Sample>,
    ) -> Result<Self> {
        let d = LabeledDataset {
            feature_names,
            class_names,
            samples,
        };
        d.validate()?;
        Ok(d)
    }

    /// Build from `(label name, features)` rows. Classes are ordered by name;
    /// provenance ids follow row order.
    pub fn from_rows<S: AsRef<str>>(
        feature_names: Vec<String>,
        rows: impl IntoIterator<Item = (S, Vec<f64>)>,
    ) -> Result<Self> {
        let rows: Vec<(String, Vec<f64>)> = rows
            .into_iter()
            .map(|(l, f)| (l.as_ref().to_owned(), f))
            .collect();
        let mut class_names: Vec<String> = rows.iter().map(|(l, _)| l.clone()).collect();
        class_names.sort();
        class_names.dedup();
        let samples = rows
            .into_iter()
            .enumerate()
            .map(|(id, (l, f))| {
                let label = class_names
                    .binary_search(&l)
                    .expect("label collected above");
                Sample::original(id, label, f)
            })
            .collect();
        Self::new(feature_names, class_names, samples)
    }

    pub fn validate(&self) -> Result<()> {
        let arity = self.feature_names.len();
        let mut ids = rustc_hash::FxHashSet::default();
        for s in &self.samples {
            if s.features.len() != arity {
                return Err(Error::InvalidParameter(format!(
                    "sample {} has {} features, expected {arity}",
                    s.id,
                    s.features.len()
                )));
            }
            if s.label >= self.class_names.len() {
                return Err(Error::InvalidParameter(format!(
                    "sample {} has unknown label {}",
                    s.id, s.label
                )));
            }
            if s.is_original() && !ids.insert(s.id) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate provenance id {}",
                    s.id
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.class_names.len()];
        for s in &self.samples {
            c[s.label] += 1;
        }
        c
    }

    /// Sample positions grouped by label.
    pub fn indices_by_class(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_names.len()];
        for (i, s) in self.samples.iter().enumerate() {
            out[s.label].push(i);
        }
        out
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.class_names.iter().position(|c| c == name)
    }

    /// Same schema, samples at `indices` (in the given order).
    pub fn subset(&self, indices: &[usize]) -> Self {
        LabeledDataset {
            feature_names: self.feature_names.clone(),
            class_names: self.class_names.clone(),
            samples: indices.iter().map(|&i| self.samples[i].clone()).collect(),
        }
    }

    pub fn with_samples(&self, samples: Vec<Sample>) -> Self {
        LabeledDataset {
            feature_names: self.feature_names.clone(),
            class_names: self.class_names.clone(),
            samples,
        }
    }

    /// Two-class view: label 1 is `target`, label 0 everything else.
    pub fn one_vs_rest(&self, target: &str) -> Result<Self> {
        let t = self
            .class_index(target)
            .ok_or_else(|| Error::UnknownClass(target.to_owned()))?;
        let samples = self
            .samples
            .iter()
            .map(|s| Sample {
                label: usize::from(s.label == t),
                ..s.clone()
            })
            .collect();
        Ok(LabeledDataset {
            feature_names: self.feature_names.clone(),
            class_names: vec!["rest".into(), target.to_owned()],
            samples,
        })
    }

    /// Drop classes with fewer than `min` samples and renumber the rest.
    /// Returns the filtered dataset and the dropped class names.
    pub fn drop_small_classes(&self, min: usize) -> (Self, Vec<String>) {
        let counts = self.class_counts();
        let mut remap = vec![None; counts.len()];
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        for (c, &n) in counts.iter().enumerate() {
            if n >= min {
                remap[c] = Some(kept.len());
                kept.push(self.class_names[c].clone());
            } else {
                dropped.push(self.class_names[c].clone());
            }
        }
        let samples = self
            .samples
            .iter()
            .filter_map(|s| remap[s.label].map(|label| Sample { label, ..s.clone() }))
            .collect();
        (
            LabeledDataset {
                feature_names: self.feature_names.clone(),
                class_names: kept,
                samples,
            },
            dropped,
        )
    }
}

/// Per-feature z-standardization fitted on one dataset and applied to others.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl Standardizer {
    /// Population mean and standard deviation per feature; a zero spread is
    /// replaced by 1 so constant features map to 0.
    pub fn fit(d: &LabeledDataset) -> Self {
        let p = d.n_features();
        let n = d.len().max(1) as f64;
        let mut mean = vec![0.0; p];
        for s in &d.samples {
            for (m, x) in mean.iter_mut().zip(&s.features) {
                *m += x;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; p];
        for s in &d.samples {
            for ((v, x), m) in var.iter_mut().zip(&s.features).zip(&mean) {
                *v += (x - m) * (x - m);
            }
        }
        let std = var
            .into_iter()
            .map(|v| {
                let sd = (v / n).sqrt();
                if sd > 0.0 && sd.is_finite() {
                    sd
                } else {
                    1.0
                }
            })
            .collect();
        Standardizer { mean, std }
    }

    pub fn apply(&self, d: &LabeledDataset) -> LabeledDataset {
        let samples = d
            .samples
            .iter()
            .map(|s| Sample {
                features: s
                    .features
                    .iter()
                    .zip(&self.mean)
                    .zip(&self.std)
                    .map(|((x, m), sd)| (x - m) / sd)
                    .collect(),
                ..s.clone()
            })
            .collect();
        d.with_samples(samples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("f{i}")).collect()
    }

    #[test]
    fn classes_sorted_by_name() {
        let d = LabeledDataset::from_rows(
            names(1),
            [("b", vec![0.0]), ("a", vec![1.0]), ("b", vec![2.0])],
        )
        .unwrap();
        assert_eq!(d.class_names, vec!["a", "b"]);
        assert_eq!(d.class_counts(), vec![1, 2]);
        assert_eq!(d.samples[0].label, 1);
    }

    #[test]
    fn rejects_bad_arity() {
        assert!(LabeledDataset::from_rows(names(2), [("a", vec![0.0])]).is_err());
    }

    #[test]
    fn drop_small_classes_renumbers() {
        let rows = [
            ("a", vec![0.0]),
            ("b", vec![1.0]),
            ("b", vec![1.0]),
            ("c", vec![2.0]),
        ];
        let d = LabeledDataset::from_rows(names(1), rows).unwrap();
        let (f, dropped) = d.drop_small_classes(2);
        assert_eq!(f.class_names, vec!["b"]);
        assert_eq!(dropped, vec!["a", "c"]);
        assert!(f.samples.iter().all(|s| s.label == 0));
    }

    #[test]
    fn standardizer_fits_train_only() {
        let d = LabeledDataset::from_rows(names(2), [("a", vec![0.0, 5.0]), ("a", vec![2.0, 5.0])])
            .unwrap();
        let st = Standardizer::fit(&d);
        assert_eq!(st.mean, vec![1.0, 5.0]);
        assert_eq!(st.std, vec![1.0, 1.0]);
        let z = st.apply(&d);
        assert_eq!(z.samples[0].features, vec![-1.0, 0.0]);
    }
}
