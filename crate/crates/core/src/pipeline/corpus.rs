//! Corpus generation, featurization and the CSV/JSON files that connect the
//! pipeline stages.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::features::{featurize, FeatureOptions, FeatureVector, FEATURE_NAMES};
use crate::generators::{Model, ParamTemplate};
use crate::graph::{parse_gml, simplify, write_gml, Graph};
use crate::null_model::EnsembleSpec;
use crate::rng::derive_seed_str;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    /// Path relative to the corpus directory.
    pub file: String,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<Model>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct CorpusManifest {
    /// The configuration that produced the corpus, verbatim.
    #[serde(default)]
    pub config: serde_json::Value,
    pub entries: Vec<ManifestEntry>,
}

impl CorpusManifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = read_text(path)?;
        serde_json::from_str(&text).map_err(|e| Error::format(path, e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_json(path, self)
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    write_text(path, &text)
}

/// Read a GML file and reduce it to a simple graph.
pub fn load_graph(path: &Path) -> Result<Graph> {
    let text = read_text(path)?;
    let rec = parse_gml(&text).map_err(|e| Error::format(path, e.to_string()))?;
    Ok(simplify(&rec).0)
}

/// Generate `count` graphs from `template` into `dir` as `<model>_<i>.gml`.
pub fn generate_corpus(
    template: &ParamTemplate,
    count: usize,
    seed: u64,
    dir: &Path,
) -> Result<Vec<ManifestEntry>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let tag = serde_json::to_string(template).expect("template serializes");
    let corpus_seed = derive_seed_str(seed, &tag);
    (0..count)
        .into_par_iter()
        .map(|i| {
            let (spec, graph_seed, g) = template.instantiate(corpus_seed, i as u64)?;
            let file = format!("{}_{i:04}.gml", template.model.name());
            write_text(&dir.join(&file), &write_gml(&g))?;
            Ok(ManifestEntry {
                file,
                label: template.model.class_label().to_owned(),
                model: Some(template.model),
                params: Some(spec.params()),
                seed: Some(graph_seed),
            })
        })
        .collect()
}

/// One featurized graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRow {
    pub file: String,
    pub label: String,
    pub n: usize,
    pub m: usize,
    pub features: FeatureVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct FeaturizeOptions {
    pub features: FeatureOptions,
    /// Remove zero-degree nodes before computing features.
    pub drop_isolated: bool,
}

pub fn drop_isolated_nodes(g: &Graph) -> Graph {
    let mut remap = vec![usize::MAX; g.node_count()];
    let mut next = 0;
    for (v, slot) in remap.iter_mut().enumerate() {
        if g.degree(v) > 0 {
            *slot = next;
            next += 1;
        }
    }
    Graph::from_edges_lossy(next, g.edges().iter().map(|&(a, b)| (remap[a], remap[b])))
}

/// Featurize one graph. The ensemble seed is derived from `spec.seed` and the
/// file name, so a row does not depend on which other files are processed.
pub fn featurize_graph(
    file: &str,
    label: &str,
    g: &Graph,
    spec: &EnsembleSpec,
    opts: &FeaturizeOptions,
) -> Result<FeatureRow> {
    let g = if opts.drop_isolated {
        drop_isolated_nodes(g)
    } else {
        g.clone()
    };
    let spec = spec.with_seed(derive_seed_str(spec.seed, file));
    Ok(FeatureRow {
        file: file.to_owned(),
        label: label.to_owned(),
        n: g.node_count(),
        m: g.edge_count(),
        features: featurize(&g, &spec, opts.features)?,
    })
}

/// Featurize every manifest entry under `dir`, in manifest order.
pub fn featurize_corpus(
    dir: &Path,
    manifest: &CorpusManifest,
    spec: &EnsembleSpec,
    opts: &FeaturizeOptions,
) -> Result<Vec<FeatureRow>> {
    spec.validate()?;
    manifest
        .entries
        .par_iter()
        .map(|e| {
            let g = load_graph(&dir.join(&e.file))?;
            featurize_graph(&e.file, &e.label, &g, spec, opts)
        })
        .collect()
}

const CSV_HEADER: [&str; 12] = [
    "file",
    "label",
    "n",
    "m",
    "clustering",
    "assortativity",
    "sp1",
    "sp2",
    "sp3",
    "sp4",
    "sp5",
    "sp6",
];

fn csv_err(path: &Path, e: csv::Error) -> Error {
    Error::format(path, e.to_string())
}

pub fn write_features_csv(path: &Path, rows: &[FeatureRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(|e| csv_err(path, e))?;
    for r in rows {
        let f = &r.features;
        let mut rec = vec![
            r.file.clone(),
            r.label.clone(),
            r.n.to_string(),
            r.m.to_string(),
            f.clustering.to_string(),
            f.assortativity.map(|a| a.to_string()).unwrap_or_default(),
        ];
        rec.extend(f.sp.iter().map(f64::to_string));
        w.write_record(&rec).map_err(|e| csv_err(path, e))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::format(path, e.to_string()))?;
    write_text(path, &String::from_utf8(bytes).expect("utf-8 csv"))
}

pub fn read_features_csv(path: &Path) -> Result<Vec<FeatureRow>> {
    let text = read_text(path)?;
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers().map_err(|e| csv_err(path, e))?.clone();
    if headers.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(Error::format(path, "unexpected header row"));
    }
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        let bad = |what: &str| Error::format(path, format!("row {}: bad {what}", line + 2));
        let num = |i: usize| -> Result<f64> {
            rec[i].trim().parse::<f64>().map_err(|_| bad(CSV_HEADER[i]))
        };
        let int = |i: usize| -> Result<usize> {
            rec[i]
                .trim()
                .parse::<usize>()
                .map_err(|_| bad(CSV_HEADER[i]))
        };
        let assortativity = if rec[5].trim().is_empty() {
            None
        } else {
            Some(num(5)?)
        };
        let mut sp = [0.0; 6];
        for (k, v) in sp.iter_mut().enumerate() {
            *v = num(6 + k)?;
        }
        rows.push(FeatureRow {
            file: rec[0].to_owned(),
            label: rec[1].to_owned(),
            n: int(2)?,
            m: int(3)?,
            features: FeatureVector {
                clustering: num(4)?,
                assortativity,
                sp,
            },
        });
    }
    Ok(rows)
}

/// Assemble the classification dataset; undefined assortativity becomes 0.
pub fn dataset_from_rows(rows: &[FeatureRow]) -> Result<LabeledDataset> {
    LabeledDataset::from_rows(
        FEATURE_NAMES.iter().map(|s| s.to_string()).collect(),
        rows.iter()
            .map(|r| (r.label.as_str(), r.features.to_array().to_vec())),
    )
}

/// Square matrix as CSV with a header row and a leading label column.
pub fn matrix_csv<T: ToString>(labels: &[String], m: &[Vec<T>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["class".to_owned()];
    header.extend(labels.iter().cloned());
    w.write_record(&header).expect("in-memory write");
    for (l, row) in labels.iter().zip(m) {
        let mut rec = vec![l.clone()];
        rec.extend(row.iter().map(ToString::to_string));
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

/// Inverse of [`matrix_csv`] for real-valued matrices.
pub fn read_matrix_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let text = read_text(path)?;
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let labels: Vec<String> = r
        .headers()
        .map_err(|e| csv_err(path, e))?
        .iter()
        .skip(1)
        .map(str::to_owned)
        .collect();
    let mut m = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        if rec.len() != labels.len() + 1 || rec[0] != labels[m.len()] {
            return Err(Error::format(
                path,
                "matrix is not square or rows are out of order",
            ));
        }
        let row = rec
            .iter()
            .skip(1)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| Error::format(path, format!("bad value `{v}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        m.push(row);
    }
    if m.len() != labels.len() {
        return Err(Error::format(path, "matrix is not square"));
    }
    Ok((labels, m))
}
