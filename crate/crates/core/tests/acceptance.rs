//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

mod common;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use netfp::dataset::LabeledDataset;
use netfp::features::{
    clustering_coefficient, degree_assortativity, motif_census, significance_profile_with,
    FeatureOptions,
};
use netfp::generators::{Model, ParamTemplate};
use netfp::graph::{parse_gml, simplify, write_gml};
use netfp::learner::{auc, gini, stratified_split, train_forest, ForestConfig};
use netfp::null_model::{ensemble, EnsembleSpec};
use netfp::pipeline::corpus::{
    dataset_from_rows, featurize_corpus, generate_corpus, CorpusManifest, FeatureRow,
    FeaturizeOptions,
};
use netfp::pipeline::{
    community_overlap, detect_communities, run_multiclass_confusion, ProtocolOptions,
    WeightedNetwork,
};
use netfp::sampling::Sampling;
use netfp::Graph;
use rand::seq::SliceRandom;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn census_oracle() -> Outcome {
    let start = Instant::now();
    let mut r = common::rng(1001);
    let mut mismatches = 0;
    for _ in 0..500 {
        let g = common::fuzz_graph(&mut r, 30);
        if motif_census(&g).counts != common::brute_census(&g) {
            mismatches += 1;
        }
    }
    let took = start.elapsed();
    check(mismatches == 0, || {
        format!("{mismatches} of 500 graphs mismatched")
    })?;
    check(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("500 graphs, 0 mismatches, {:.2?}", took))
}

fn assortativity_oracle() -> Outcome {
    let mut r = common::rng(1002);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let g = common::fuzz_graph(&mut r, 30);
        match (degree_assortativity(&g), common::pearson_over_stubs(&g)) {
            (Some(a), Some(b)) => worst = worst.max((a - b).abs()),
            (None, None) => {}
            (a, b) => return Err(format!("graph {i}: definedness differs ({a:?} vs {b:?})")),
        }
    }
    check(worst < 1e-9, || format!("max deviation {worst:e}"))?;
    let star = Graph::new(9, (1..9).map(|i| (0, i))).unwrap();
    let path = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    let ring = Graph::new(12, (0..12).map(|i| (i, (i + 1) % 12))).unwrap();
    let k5 = Graph::new(5, (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b)))).unwrap();
    let near = |v: Option<f64>, t: f64| v.is_some_and(|x| (x - t).abs() < 1e-12);
    check(near(degree_assortativity(&star), -1.0), || {
        "star is not -1".into()
    })?;
    check(near(degree_assortativity(&path), -0.5), || {
        "4-path is not -0.5".into()
    })?;
    check(
        degree_assortativity(&ring).is_none() && degree_assortativity(&k5).is_none(),
        || "regular graphs are not undefined".into(),
    )?;
    Ok(format!(
        "200 graphs, max deviation {worst:.1e}; star, path, regular cases exact"
    ))
}

fn null_model_exactness() -> Outcome {
    let mut r = common::rng(1003);
    let mut members = 0;
    for i in 0..100u64 {
        let g = common::fuzz_graph(&mut r, 30);
        let spec = EnsembleSpec::default().with_seed(i);
        let want = g.sorted_degree_sequence();
        for m in ensemble(&g, &spec).map_err(|e| e.to_string())? {
            m.check_invariants()
                .map_err(|e| format!("graph {i}: {e}"))?;
            check(m.sorted_degree_sequence() == want, || {
                format!("graph {i}: degrees changed")
            })?;
            members += 1;
        }
    }
    Ok(format!(
        "{members} members of 100 graphs simple with exact degree sequences"
    ))
}

fn sp_normalization(protocol_rows: &[FeatureRow]) -> Outcome {
    let unit = |sp: &[f64; 6]| {
        let n = sp.iter().map(|v| v * v).sum::<f64>().sqrt();
        n.abs() < 1e-12 || (n - 1.0).abs() < 1e-12
    };
    for row in protocol_rows {
        check(unit(&row.features.sp), || format!("{}: norm off", row.file))?;
    }
    let mut r = common::rng(1004);
    let graphs = 30;
    for i in 0..graphs {
        let g = common::fuzz_graph(&mut r, 24);
        let members =
            ensemble(&g, &EnsembleSpec::default().with_seed(i)).map_err(|e| e.to_string())?;
        let (_, sp) = significance_profile_with(&g, &members, FeatureOptions::default());
        check(unit(&sp), || format!("fuzz graph {i}: norm off"))?;
        let c = motif_census(&g);
        let cc = clustering_coefficient(&g);
        let a = degree_assortativity(&g);
        for _ in 0..20 {
            let p = common::random_permutation(&mut r, g.node_count());
            let h = g.permuted(&p);
            let moved: Vec<Graph> = members.iter().map(|m| m.permuted(&p)).collect();
            let (_, sp_h) = significance_profile_with(&h, &moved, FeatureOptions::default());
            let same_a = match (degree_assortativity(&h), a) {
                (Some(x), Some(y)) => (x - y).abs() < 1e-12,
                (x, y) => x == y,
            };
            check(
                sp_h == sp && motif_census(&h) == c && clustering_coefficient(&h) == cc && same_a,
                || format!("fuzz graph {i}: relabeling changed a feature"),
            )?;
        }
    }
    Ok(format!(
        "{} corpus + {graphs} fuzz profiles have norm 0 or 1; 20 relabelings each invariant",
        protocol_rows.len()
    ))
}

fn learner_sanity() -> Outcome {
    check(gini(&[0.5, 0.5]) == 0.5 && gini(&[1.0]) == 0.0, || {
        "gini identities".into()
    })?;
    let a = |p: &[f64], n: &[f64]| {
        let scores: Vec<f64> = p.iter().chain(n).copied().collect();
        let truth: Vec<bool> = p
            .iter()
            .map(|_| true)
            .chain(n.iter().map(|_| false))
            .collect();
        auc(&scores, &truth)
    };
    check(a(&[0.9, 0.8], &[0.2, 0.1]) == Some(1.0), || {
        "auc perfect".into()
    })?;
    check(a(&[0.4, 0.4], &[0.4, 0.4]) == Some(0.5), || {
        "auc ties".into()
    })?;
    check(a(&[0.8, 0.3], &[0.5, 0.1]) == Some(0.75), || {
        "auc 0.75".into()
    })?;
    let mut r = common::rng(1005);
    let off = 6.0 / (2f64).sqrt() / 2.0;
    let data = common::blobs(
        &mut r,
        &[("A", vec![-off, -off]), ("B", vec![off, off])],
        100,
    );
    let (train, test) = stratified_split(&data, 0.7, 1).map_err(|e| e.to_string())?;
    let model = train_forest(&train, &ForestConfig::default(), 2).map_err(|e| e.to_string())?;
    let hits = test
        .samples
        .iter()
        .filter(|s| model.predict(&s.features).label == s.label)
        .count();
    let acc = hits as f64 / test.len() as f64;
    let oracle = common::centroid_accuracy(&train, &test);
    check(acc >= 0.95, || format!("blob accuracy {acc}"))?;
    Ok(format!(
        "gini and AUC exact; blobs accuracy {acc:.3} (centroid oracle {oracle:.3})"
    ))
}

struct Corpus {
    rows: Vec<FeatureRow>,
    data: LabeledDataset,
}

fn build_corpus(dir: &Path) -> Result<Corpus, String> {
    let corpus = dir.join("corpus");
    let mut manifest = CorpusManifest::default();
    for model in Model::ALL {
        let t = ParamTemplate::defaults(model);
        manifest
            .entries
            .extend(generate_corpus(&t, 60, 2024, &corpus).map_err(|e| e.to_string())?);
    }
    let spec = EnsembleSpec::default().with_seed(2024);
    let rows = featurize_corpus(&corpus, &manifest, &spec, &FeaturizeOptions::default())
        .map_err(|e| e.to_string())?;
    let data = dataset_from_rows(&rows).map_err(|e| e.to_string())?;
    Ok(Corpus { rows, data })
}

fn macro_auc(agg: &netfp::pipeline::ConfusionAggregate) -> f64 {
    let v: Vec<f64> = agg.ovr_auc.iter().flatten().copied().collect();
    v.iter().sum::<f64>() / v.len() as f64
}

fn protocol_mirror(c: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut failed = Vec::new();
    for s in Sampling::all(3) {
        let agg = run_multiclass_confusion(
            &c.data,
            s,
            100,
            &ForestConfig::default(),
            7,
            &ProtocolOptions::default(),
        )
        .map_err(|e| e.to_string())?;
        let diag = agg.diagonal();
        let m = macro_auc(&agg);
        for (name, d) in agg.class_names.iter().zip(&diag) {
            let need = if name == "FF" { 0.6 } else { 0.85 };
            if *d < need {
                failed.push(format!("{s}/{name} diagonal {d:.3} < {need}"));
            }
        }
        if m < 0.9 {
            failed.push(format!("{s} macro AUC {m:.3}"));
        }
        let d: Vec<String> = agg
            .class_names
            .iter()
            .zip(&diag)
            .map(|(n, d)| format!("{n}={d:.3}"))
            .collect();
        lines.push(format!("{s}[{} auc={m:.3}]", d.join(" ")));
    }
    let took = start.elapsed();
    check(failed.is_empty(), || failed.join("; "))?;
    Ok(format!("{} ({took:.1?} for 4x100 runs)", lines.join(" ")))
}

fn imbalance(c: &Corpus) -> Outcome {
    let ff = c.data.class_index("FF").ok_or("no FF class")?;
    let mut lines = Vec::new();
    let mut failed = Vec::new();
    for master in [1u64, 2, 3] {
        let mut ff_rows: Vec<usize> = (0..c.data.len())
            .filter(|&i| c.data.samples[i].label == ff)
            .collect();
        ff_rows.shuffle(&mut common::rng(master));
        let keep: Vec<usize> = (0..c.data.len())
            .filter(|&i| c.data.samples[i].label != ff || ff_rows[..10].contains(&i))
            .collect();
        let data = c.data.subset(&keep);
        let diag = |s: Sampling| -> Result<f64, String> {
            let agg = run_multiclass_confusion(
                &data,
                s,
                100,
                &ForestConfig::default(),
                master,
                &ProtocolOptions::default(),
            )
            .map_err(|e| e.to_string())?;
            Ok(agg.diagonal()[ff])
        };
        let none = diag(Sampling::None)?;
        let smote = diag(Sampling::Smote { k: 3 })?;
        if smote - none < 0.1 {
            failed.push(format!("seed {master}: none {none:.3} vs smote {smote:.3}"));
        }
        lines.push(format!("seed {master}: none={none:.3} smote={smote:.3}"));
    }
    check(failed.is_empty(), || {
        format!("{} [{}]", failed.join("; "), lines.join("; "))
    })?;
    Ok(lines.join("; "))
}

fn communities() -> Outcome {
    let edges = common::barbell(5);
    let (best_q, best) = common::exhaustive_modularity(10, &edges);
    let net = WeightedNetwork {
        labels: (0..10).map(|i| format!("c{i}")).collect(),
        edges,
    };
    let p = detect_communities(&net);
    check(p.community_count() == 2, || {
        format!("{} communities", p.community_count())
    })?;
    check(
        p.membership == best && (p.modularity - best_q).abs() < 1e-12,
        || {
            format!(
                "greedy {:?} Q={} vs exhaustive {best:?} Q={best_q}",
                p.membership, p.modularity
            )
        },
    )?;
    let mut parts = vec![p.clone(), p.clone()];
    parts.push(detect_communities(&WeightedNetwork {
        labels: net.labels.clone(),
        edges: Vec::new(),
    }));
    let m = community_overlap(&parts).map_err(|e| e.to_string())?;
    for i in 0..10 {
        check(m[i][i] == 3, || "overlap diagonal".into())?;
        for j in 0..10 {
            check(m[i][j] == m[j][i], || "overlap asymmetric".into())?;
        }
    }
    Ok(format!(
        "2 communities, Q={:.4} equals exhaustive optimum; overlap symmetric",
        p.modularity
    ))
}

fn files_under(root: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let path = e.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path
                    .strip_prefix(root)
                    .unwrap()
                    .to_string_lossy()
                    .into_owned();
                out.push((rel, std::fs::read(&path).unwrap()));
            }
        }
    }
    out.sort();
    out
}

fn determinism(tmp: &Path) -> Outcome {
    let run = |threads: &str, name: &str| -> Result<Vec<(String, Vec<u8>)>, String> {
        let out = tmp.join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_netfp"))
            .args([
                "--threads",
                threads,
                "all",
                "--count-per-model",
                "20",
                "--ensemble-size",
                "30",
                "--runs",
                "30",
                "--trees",
                "50",
                "--seed",
                "99",
                "--out",
            ])
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(String::from_utf8_lossy(&status.stderr).into_owned());
        }
        Ok(files_under(&out))
    };
    let a = run("1", "t1a")?;
    let b = run("1", "t1b")?;
    let c = run("8", "t8a")?;
    let d = run("8", "t8b")?;
    let n = a.len();
    check(n > 100, || format!("only {n} files"))?;
    for (other, label) in [
        (&b, "second 1-thread run"),
        (&c, "8 threads"),
        (&d, "second 8-thread run"),
    ] {
        let diff: Vec<&str> = a
            .iter()
            .zip(other.iter())
            .filter(|(x, y)| x != y)
            .map(|(x, _)| x.0.as_str())
            .collect();
        check(a.len() == other.len() && diff.is_empty(), || {
            format!("{label} differs: {diff:?}")
        })?;
    }
    Ok(format!(
        "{n} files byte-identical across 2 runs each at 1 and 8 threads"
    ))
}

fn gml_roundtrip() -> Outcome {
    let mut r = common::rng(1010);
    for i in 0..1000 {
        let g = common::fuzz_graph(&mut r, 40);
        let rec = parse_gml(&write_gml(&g)).map_err(|e| format!("graph {i}: {e}"))?;
        let (back, report) = simplify(&rec);
        check(back == g && !report.removed_anything(), || {
            format!("graph {i} changed")
        })?;
    }
    Ok("1000 graphs equal after write and parse".into())
}

fn main() {
    let tmp = tempfile::tempdir().expect("temp dir");
    let mut failures = 0;
    let mut report = |name: &str, outcome: Outcome| match outcome {
        Ok(detail) => println!("PASS  {name}: {detail}"),
        Err(detail) => {
            failures += 1;
            println!("FAIL  {name}: {detail}");
        }
    };
    report("motif census oracle", census_oracle());
    report("assortativity oracle", assortativity_oracle());
    report("null-model exactness", null_model_exactness());
    report("learner sanity", learner_sanity());
    report("community machinery", communities());
    report("GML round-trip", gml_roundtrip());
    match build_corpus(tmp.path()) {
        Ok(c) => {
            report("SP normalization", sp_normalization(&c.rows));
            report("protocol mirror", protocol_mirror(&c));
            report("imbalance behavior", imbalance(&c));
        }
        Err(e) => {
            for name in ["SP normalization", "protocol mirror", "imbalance behavior"] {
                report(name, Err(format!("corpus could not be built: {e}")));
            }
        }
    }
    report("determinism", determinism(tmp.path()));
    println!("acceptance: {} of 10 criteria passed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
