use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use netfp::dataset::LabeledDataset;
use netfp::features::{CensusMode, FeatureOptions, ProfileNorm};
use netfp::generators::{Model, ParamTemplate};
use netfp::learner::ForestConfig;
use netfp::null_model::EnsembleSpec;
use netfp::pipeline::corpus::{
    dataset_from_rows, featurize_corpus, generate_corpus, matrix_csv, read_features_csv,
    read_matrix_csv, write_features_csv, write_json, write_text, CorpusManifest, FeaturizeOptions,
};
use netfp::pipeline::{
    build_similarity_network, community_overlap, detect_communities, network_from_matrix,
    run_binary_importance, run_multiclass_confusion, ConfusionAggregate, Partition,
    ProtocolOptions, RankHistogram, DEFAULT_MIN_CLASS_SIZE, DEFAULT_RUNS, DEFAULT_TRAIN_FRACTION,
};
use netfp::sampling::{Sampling, DEFAULT_SMOTE_K};

const MANIFEST: &str = "manifest.json";

#[derive(Parser, Debug)]
#[command(
    name = "netfp",
    version,
    about = "Structural fingerprints and domain classification of networks"
)]
pub struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a synthetic GML corpus and its manifest.
    Gen(GenArgs),
    /// Compute the eight-feature vector of every graph in a corpus.
    Featurize(FeaturizeArgs),
    /// One-vs-rest feature importance study.
    Importance(ImportanceArgs),
    /// Multiclass confusion study, similarity network and communities.
    Classify(ClassifyArgs),
    /// Co-membership counts across several similarity matrices.
    Communities(CommunitiesArgs),
    /// Generate, featurize, classify under every sampling regime, then compare communities.
    All(AllArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct GenArgs {
    #[arg(long, value_parser = parse_model)]
    pub model: Model,
    /// `key=value` pairs; ranges as `lo..hi`. Unset keys keep their defaults.
    #[arg(long, default_value = "")]
    pub params: String,
    #[arg(long)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[serde(skip)]
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct EnsembleArgs {
    #[arg(long, default_value_t = 100)]
    pub ensemble_size: usize,
    #[arg(long, default_value_t = 10)]
    pub swaps_per_edge: usize,
    /// Count every (not necessarily induced) copy of each subgraph.
    #[arg(long)]
    pub non_induced: bool,
    #[arg(long, value_enum, default_value_t = NormArg::Unit)]
    pub norm: NormArg,
    /// Remove zero-degree nodes before computing features.
    #[arg(long)]
    pub drop_isolated: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormArg {
    /// Divide by the Euclidean norm.
    Unit,
    /// Divide by the sum of squares.
    SumOfSquares,
}

impl EnsembleArgs {
    fn spec(&self, seed: u64) -> Result<EnsembleSpec> {
        Ok(EnsembleSpec::new(
            self.ensemble_size,
            self.swaps_per_edge,
            seed,
        )?)
    }

    fn options(&self) -> FeaturizeOptions {
        FeaturizeOptions {
            features: FeatureOptions {
                census: if self.non_induced {
                    CensusMode::NonInduced
                } else {
                    CensusMode::Induced
                },
                norm: match self.norm {
                    NormArg::Unit => ProfileNorm::UnitLength,
                    NormArg::SumOfSquares => ProfileNorm::SumOfSquares,
                },
            },
            drop_isolated: self.drop_isolated,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct FeaturizeArgs {
    /// Directory holding the GML files and `manifest.json`.
    #[arg(long)]
    pub corpus: PathBuf,
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[serde(skip)]
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ForestArgs {
    #[arg(long, default_value_t = DEFAULT_RUNS)]
    pub runs: usize,
    #[arg(long, default_value_t = 100)]
    pub trees: usize,
    /// Features tried per split (default: ceil(sqrt(features))).
    #[arg(long)]
    pub max_features: Option<usize>,
    #[arg(long)]
    pub max_depth: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub min_leaf: usize,
    #[arg(long, default_value_t = DEFAULT_TRAIN_FRACTION)]
    pub train_fraction: f64,
    #[arg(long, default_value_t = DEFAULT_MIN_CLASS_SIZE)]
    pub min_class_size: usize,
}

impl ForestArgs {
    fn forest(&self) -> ForestConfig {
        ForestConfig {
            trees: self.trees,
            max_features: self.max_features,
            max_depth: self.max_depth,
            min_leaf: self.min_leaf,
        }
    }

    fn protocol(&self) -> ProtocolOptions {
        ProtocolOptions {
            train_fraction: self.train_fraction,
            min_class_size: self.min_class_size,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ImportanceArgs {
    #[arg(long)]
    pub features: PathBuf,
    /// Target class; repeatable. Default: every class large enough.
    #[arg(long)]
    pub target: Vec<String>,
    #[command(flatten)]
    pub forest: ForestArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[serde(skip)]
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingArg {
    None,
    Over,
    Under,
    Smote,
}

impl SamplingArg {
    fn regime(self, k: usize) -> Sampling {
        match self {
            SamplingArg::None => Sampling::None,
            SamplingArg::Over => Sampling::Over,
            SamplingArg::Under => Sampling::Under,
            SamplingArg::Smote => Sampling::Smote { k },
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub features: PathBuf,
    #[arg(long, value_enum, default_value_t = SamplingArg::None)]
    pub sampling: SamplingArg,
    #[arg(long, default_value_t = DEFAULT_SMOTE_K)]
    pub smote_k: usize,
    #[command(flatten)]
    pub forest: ForestArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[serde(skip)]
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct CommunitiesArgs {
    /// `similarity.csv` files, or directories containing one.
    #[arg(long, required = true, num_args = 1..)]
    pub similarity: Vec<PathBuf>,
    #[serde(skip)]
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct AllArgs {
    #[arg(long, default_value_t = 60)]
    pub count_per_model: usize,
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[command(flatten)]
    pub forest: ForestArgs,
    #[arg(long, default_value_t = DEFAULT_SMOTE_K)]
    pub smote_k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[serde(skip)]
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_model(s: &str) -> std::result::Result<Model, String> {
    s.parse().map_err(|e: netfp::Error| e.to_string())
}

fn provenance<T: Serialize>(command: &str, args: &T) -> serde_json::Value {
    json!({
        "tool": "netfp",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "args": args,
    })
}

pub fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the worker pool")?;
    }
    match cli.command {
        Command::Gen(a) => gen(&a),
        Command::Featurize(a) => featurize(&a),
        Command::Importance(a) => importance(&a),
        Command::Classify(a) => classify(&a),
        Command::Communities(a) => communities(&a),
        Command::All(a) => all(&a),
    }
}

/// Adds to an existing manifest in `--out`, so several models can share one
/// corpus directory.
fn gen(a: &GenArgs) -> Result<()> {
    let template = ParamTemplate::parse(a.model, &a.params)?;
    let entries = generate_corpus(&template, a.count, a.seed, &a.out)?;
    let path = a.out.join(MANIFEST);
    let mut manifest = if path.exists() {
        CorpusManifest::load(&path)?
    } else {
        CorpusManifest {
            config: json!([]),
            entries: Vec::new(),
        }
    };
    let mut record = provenance("gen", a);
    record["template"] = serde_json::to_value(&template)?;
    match manifest.config.as_array_mut() {
        Some(list) => list.push(record),
        None => manifest.config = json!([manifest.config.take(), record]),
    }
    let fresh: BTreeMap<&str, ()> = entries.iter().map(|e| (e.file.as_str(), ())).collect();
    manifest
        .entries
        .retain(|e| !fresh.contains_key(e.file.as_str()));
    manifest.entries.extend(entries);
    manifest.entries.sort_by(|x, y| x.file.cmp(&y.file));
    manifest.save(&path)?;
    Ok(())
}

fn featurize(a: &FeaturizeArgs) -> Result<()> {
    featurize_into(
        &a.corpus,
        &a.ensemble,
        a.seed,
        &a.out,
        provenance("featurize", a),
    )
}

fn featurize_into(
    corpus: &Path,
    ensemble: &EnsembleArgs,
    seed: u64,
    out: &Path,
    record: serde_json::Value,
) -> Result<()> {
    let manifest = CorpusManifest::load(&corpus.join(MANIFEST))?;
    let spec = ensemble.spec(seed)?;
    let opts = ensemble.options();
    let rows = featurize_corpus(corpus, &manifest, &spec, &opts)?;
    write_features_csv(&out.join("features.csv"), &rows)?;
    let mut record = record;
    record["ensemble"] = serde_json::to_value(spec)?;
    record["options"] = serde_json::to_value(opts)?;
    record["graphs"] = json!(rows.len());
    write_json(&out.join("features.json"), &record)?;
    Ok(())
}

fn load_dataset(path: &Path) -> Result<LabeledDataset> {
    let rows = read_features_csv(path)?;
    if rows.is_empty() {
        bail!("{}: no feature rows", path.display());
    }
    Ok(dataset_from_rows(&rows)?)
}

fn class_count_map(d: &LabeledDataset) -> BTreeMap<String, usize> {
    d.class_names
        .iter()
        .cloned()
        .zip(d.class_counts())
        .collect()
}

fn rank_histogram_csv(hists: &[RankHistogram]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let p = hists.first().map_or(0, |h| h.feature_names.len());
    let mut header = vec![
        "target".to_owned(),
        "feature".to_owned(),
        "mean_auc".to_owned(),
    ];
    header.extend((1..=p).map(|r| format!("rank{r}")));
    w.write_record(&header).expect("in-memory write");
    for h in hists {
        for (f, name) in h.feature_names.iter().enumerate() {
            let mut rec = vec![h.target.clone(), name.clone(), h.mean_auc.to_string()];
            rec.extend(h.counts[f].iter().map(u64::to_string));
            w.write_record(&rec).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

fn importance(a: &ImportanceArgs) -> Result<()> {
    let data = load_dataset(&a.features)?;
    let opts = a.forest.protocol();
    let targets: Vec<String> = if a.target.is_empty() {
        data.class_names
            .iter()
            .zip(data.class_counts())
            .filter(|&(_, c)| c >= opts.min_class_size)
            .map(|(n, _)| n.clone())
            .collect()
    } else {
        a.target.clone()
    };
    if targets.is_empty() {
        bail!("no class has at least {} instances", opts.min_class_size);
    }
    let cfg = a.forest.forest();
    let mut hists = Vec::new();
    for t in &targets {
        let seed = netfp::rng::derive_seed_str(a.seed, t);
        let h = run_binary_importance(&data, t, a.forest.runs, &cfg, seed, &opts)
            .with_context(|| format!("importance study for class `{t}`"))?;
        hists.push(h);
    }
    write_text(
        &a.out.join("rank_histogram.csv"),
        &rank_histogram_csv(&hists),
    )?;
    let mut record = provenance("importance", a);
    record["targets"] = json!(targets);
    record["class_counts"] = json!(class_count_map(&data));
    record["mean_auc"] = hists
        .iter()
        .map(|h| (h.target.clone(), json!(h.mean_auc)))
        .collect::<serde_json::Map<_, _>>()
        .into();
    write_json(&a.out.join("run_manifest.json"), &record)?;
    Ok(())
}

fn write_partitions(path: &Path, entries: &[(String, Partition)]) -> Result<()> {
    let list: Vec<_> = entries
        .iter()
        .map(|(source, p)| {
            json!({
                "source": source,
                "modularity": p.modularity,
                "communities": p.communities(),
                "membership": p.labels.iter().cloned().zip(p.membership.iter().copied())
                    .collect::<BTreeMap<_, _>>(),
            })
        })
        .collect();
    Ok(write_json(path, &list)?)
}

/// Everything `classify` writes, for one sampling regime.
fn classify_into(
    data: &LabeledDataset,
    sampling: Sampling,
    forest: &ForestArgs,
    seed: u64,
    out: &Path,
    record: serde_json::Value,
) -> Result<ConfusionAggregate> {
    let opts = forest.protocol();
    let (kept, dropped) = data.drop_small_classes(opts.min_class_size);
    let agg = run_multiclass_confusion(data, sampling, forest.runs, &forest.forest(), seed, &opts)?;
    let names = &agg.class_names;
    write_text(
        &out.join("confusion_mean.csv"),
        &matrix_csv(names, &agg.mean_counts),
    )?;
    write_text(
        &out.join("confusion_norm.csv"),
        &matrix_csv(names, &agg.row_normalized),
    )?;
    write_text(
        &out.join("similarity.csv"),
        &matrix_csv(names, &agg.similarity),
    )?;
    let net = build_similarity_network(&agg);
    write_text(&out.join("similarity.gml"), &net.to_gml())?;
    write_text(&out.join("similarity.dot"), &net.to_dot())?;
    let partition = detect_communities(&net);
    write_partitions(
        &out.join("communities.json"),
        &[("similarity.csv".to_owned(), partition)],
    )?;

    let defined: Vec<f64> = agg.ovr_auc.iter().flatten().copied().collect();
    let mut record = record;
    record["sampling"] = serde_json::to_value(sampling)?;
    record["class_counts"] = json!(class_count_map(data));
    record["classes"] = json!(kept.class_names);
    record["dropped_classes"] = json!(dropped);
    record["classes_never_tested"] = json!(names
        .iter()
        .zip(&agg.zero_rows)
        .filter(|(_, &z)| z)
        .map(|(n, _)| n)
        .collect::<Vec<_>>());
    record["ovr_auc"] = names
        .iter()
        .zip(&agg.ovr_auc)
        .map(|(n, a)| (n.clone(), json!(a)))
        .collect::<serde_json::Map<_, _>>()
        .into();
    record["macro_auc"] = if defined.is_empty() {
        serde_json::Value::Null
    } else {
        json!(defined.iter().sum::<f64>() / defined.len() as f64)
    };
    write_json(&out.join("run_manifest.json"), &record)?;
    Ok(agg)
}

fn classify(a: &ClassifyArgs) -> Result<()> {
    let data = load_dataset(&a.features)?;
    let sampling = a.sampling.regime(a.smote_k);
    classify_into(
        &data,
        sampling,
        &a.forest,
        a.seed,
        &a.out,
        provenance("classify", a),
    )?;
    Ok(())
}

fn communities_from(sources: &[(String, PathBuf)], out: &Path) -> Result<()> {
    let mut parts = Vec::new();
    for (name, path) in sources {
        let (labels, m) = read_matrix_csv(path)?;
        parts.push((
            name.clone(),
            detect_communities(&network_from_matrix(&labels, &m)),
        ));
    }
    let only: Vec<Partition> = parts.iter().map(|(_, p)| p.clone()).collect();
    let overlap = community_overlap(&only).context("comparing community partitions")?;
    write_partitions(&out.join("communities.json"), &parts)?;
    let labels = only.first().map(|p| p.labels.clone()).unwrap_or_default();
    write_text(&out.join("overlap.csv"), &matrix_csv(&labels, &overlap))?;
    Ok(())
}

fn communities(a: &CommunitiesArgs) -> Result<()> {
    let sources: Vec<(String, PathBuf)> = a
        .similarity
        .iter()
        .map(|p| {
            let file = if p.is_dir() {
                p.join("similarity.csv")
            } else {
                p.clone()
            };
            (p.display().to_string(), file)
        })
        .collect();
    communities_from(&sources, &a.out)
}

/// Layout under `--out`: `corpus/`, `features/`, `classify/<regime>/`,
/// `communities/`. Recorded paths are relative to `--out`.
fn all(a: &AllArgs) -> Result<()> {
    let corpus = a.out.join("corpus");
    for model in Model::ALL {
        gen(&GenArgs {
            model,
            params: String::new(),
            count: a.count_per_model,
            seed: a.seed,
            out: corpus.clone(),
        })?;
    }
    let features_dir = a.out.join("features");
    let record = provenance(
        "featurize",
        &json!({ "corpus": "corpus", "ensemble": a.ensemble, "seed": a.seed }),
    );
    featurize_into(&corpus, &a.ensemble, a.seed, &features_dir, record)?;

    let data = load_dataset(&features_dir.join("features.csv"))?;
    let mut sources = Vec::new();
    for sampling in Sampling::all(a.smote_k) {
        let dir = a.out.join("classify").join(sampling.name());
        let record = provenance(
            "classify",
            &json!({
                "features": "features/features.csv",
                "sampling": sampling.name(),
                "smote_k": a.smote_k,
                "forest": a.forest,
                "seed": a.seed,
            }),
        );
        classify_into(&data, sampling, &a.forest, a.seed, &dir, record)
            .with_context(|| format!("classification under `{sampling}` sampling"))?;
        sources.push((
            format!("classify/{}/similarity.csv", sampling.name()),
            dir.join("similarity.csv"),
        ));
    }
    communities_from(&sources, &a.out.join("communities"))?;
    write_json(&a.out.join("run_manifest.json"), &provenance("all", a))?;
    Ok(())
}
