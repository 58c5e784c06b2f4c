//! Synthetic network models: Erdős–Rényi, Watts–Strogatz, Barabási–Albert and
//! Forest Fire. Every generator is a pure function of its parameters and seed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, rng_from_seed, NetRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Er,
    Ws,
    Ba,
    Ff,
}

impl Model {
    pub const ALL: [Model; 4] = [Model::Er, Model::Ws, Model::Ba, Model::Ff];

    /// Class label written into corpus manifests.
    pub fn class_label(self) -> &'static str {
        match self {
            Model::Er => "ER",
            Model::Ws => "WS",
            Model::Ba => "BA",
            Model::Ff => "FF",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Er => "er",
            Model::Ws => "ws",
            Model::Ba => "ba",
            Model::Ff => "ff",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "er" => Ok(Model::Er),
            "ws" => Ok(Model::Ws),
            "ba" => Ok(Model::Ba),
            "ff" => Ok(Model::Ff),
            _ => Err(Error::InvalidParameter(format!(
                "unknown model `{s}` (expected er, ws, ba or ff)"
            ))),
        }
    }
}

/// Fully resolved parameters of one generator invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum GeneratorSpec {
    Er {
        n: usize,
        p: f64,
    },
    Ws {
        n: usize,
        k: usize,
        p: f64,
    },
    Ba {
        n: usize,
        m: usize,
        m0: usize,
    },
    Ff {
        n: usize,
        p_forward: f64,
        p_backward: f64,
        ambassadors: usize,
    },
}

fn check_prob(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} = {p} not in [0, 1]"
        )))
    }
}

impl GeneratorSpec {
    pub fn model(&self) -> Model {
        match self {
            GeneratorSpec::Er { .. } => Model::Er,
            GeneratorSpec::Ws { .. } => Model::Ws,
            GeneratorSpec::Ba { .. } => Model::Ba,
            GeneratorSpec::Ff { .. } => Model::Ff,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GeneratorSpec::Er { p, .. } => check_prob("p", p),
            GeneratorSpec::Ws { n, k, p } => {
                check_prob("p", p)?;
                if k == 0 || k % 2 != 0 || k >= n {
                    return Err(Error::InvalidParameter(format!(
                        "Watts-Strogatz needs even 0 < k < n (k = {k}, n = {n})"
                    )));
                }
                Ok(())
            }
            GeneratorSpec::Ba { n, m, m0 } => {
                if !(1 <= m && m <= m0 && m0 < n) {
                    return Err(Error::InvalidParameter(format!(
                        "Barabasi-Albert needs 1 <= m <= m0 < n (m = {m}, m0 = {m0}, n = {n})"
                    )));
                }
                Ok(())
            }
            GeneratorSpec::Ff {
                n,
                p_forward,
                p_backward,
                ambassadors,
            } => {
                check_prob("p_forward", p_forward)?;
                check_prob("p_backward", p_backward)?;
                if n == 0 || ambassadors == 0 {
                    return Err(Error::InvalidParameter(
                        "Forest Fire needs n >= 1 and at least one ambassador".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn generate(&self, seed: u64) -> Result<Graph> {
        match *self {
            GeneratorSpec::Er { n, p } => gen_er(n, p, seed),
            GeneratorSpec::Ws { n, k, p } => gen_ws(n, k, p, seed),
            GeneratorSpec::Ba { n, m, m0 } => gen_ba(n, m, m0, seed),
            GeneratorSpec::Ff {
                n,
                p_forward,
                p_backward,
                ambassadors,
            } => gen_ff(n, p_forward, p_backward, ambassadors, seed),
        }
    }

    /// Flat `key -> value` view for manifests.
    pub fn params(&self) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        match *self {
            GeneratorSpec::Er { n, p } => {
                m.insert("n".into(), n as f64);
                m.insert("p".into(), p);
            }
            GeneratorSpec::Ws { n, k, p } => {
                m.insert("n".into(), n as f64);
                m.insert("k".into(), k as f64);
                m.insert("p".into(), p);
            }
            GeneratorSpec::Ba { n, m: edges, m0 } => {
                m.insert("n".into(), n as f64);
                m.insert("m".into(), edges as f64);
                m.insert("m0".into(), m0 as f64);
            }
            GeneratorSpec::Ff {
                n,
                p_forward,
                p_backward,
                ambassadors,
            } => {
                m.insert("n".into(), n as f64);
                m.insert("p_f".into(), p_forward);
                m.insert("p_b".into(), p_backward);
                m.insert("a".into(), ambassadors as f64);
            }
        }
        m
    }
}

/// Erdős–Rényi G(n, p): every pair present independently with probability `p`.
pub fn gen_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_prob("p", p)?;
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Ok(Graph::from_canonical(n, edges))
}

/// Watts–Strogatz: ring lattice with `k/2` neighbours per side, then each
/// lattice edge's far endpoint is rewired with probability `p`.
pub fn gen_ws(n: usize, k: usize, p: f64, seed: u64) -> Result<Graph> {
    GeneratorSpec::Ws { n, k, p }.validate()?;
    let mut rng = rng_from_seed(seed);
    let mut adj: Vec<FxHashSet<usize>> = vec![FxHashSet::default(); n];
    for u in 0..n {
        for j in 1..=k / 2 {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    // Lap by lap, as in the original construction: first every nearest
    // neighbour edge, then the next ring, and so on.
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if !adj[u].contains(&v) || !rng.random_bool(p) {
                continue;
            }
            if adj[u].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.random_range(0..n);
                if w != u && !adj[u].contains(&w) {
                    break w;
                }
            };
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(a, set)| set.iter().filter(move |&&b| a < b).map(move |&b| (a, b)));
    Ok(Graph::from_edges_lossy(n, edges))
}

/// Barabási–Albert preferential attachment grown from a path on `m0` nodes.
pub fn gen_ba(n: usize, m: usize, m0: usize, seed: u64) -> Result<Graph> {
    GeneratorSpec::Ba { n, m, m0 }.validate()?;
    let mut rng = rng_from_seed(seed);
    let mut edges: Vec<(usize, usize)> = (1..m0).map(|i| (i - 1, i)).collect();
    // One entry per edge endpoint: uniform draws are degree-proportional.
    let mut stubs: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut targets = Vec::with_capacity(m);
    for v in m0..n {
        targets.clear();
        while targets.len() < m {
            let t = if stubs.is_empty() {
                rng.random_range(0..v)
            } else {
                stubs[rng.random_range(0..stubs.len())]
            };
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, v));
            stubs.push(t);
            stubs.push(v);
        }
    }
    Ok(Graph::from_edges_lossy(n, edges))
}

/// Number of successes before the first failure, capped at `cap`.
fn geometric_capped(rng: &mut NetRng, p: f64, cap: usize) -> usize {
    let mut c = 0;
    while c < cap && rng.random::<f64>() < p {
        c += 1;
    }
    c
}

/// Forest Fire growth model.
///
/// Each new node links to `ambassadors` uniformly chosen nodes, then burns
/// outward: from every burned node a geometric number (mean `p/(1-p)`) of its
/// unburned out-links and in-links is burned, recursively. The new node links
/// to every burned node. Orientation is kept during growth and dropped at the
/// end.
pub fn gen_ff(
    n: usize,
    p_forward: f64,
    p_backward: f64,
    ambassadors: usize,
    seed: u64,
) -> Result<Graph> {
    GeneratorSpec::Ff {
        n,
        p_forward,
        p_backward,
        ambassadors,
    }
    .validate()?;
    let mut rng = rng_from_seed(seed);
    let mut out_links: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut in_links: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut stamp = vec![usize::MAX; n];
    let mut edges = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    let mut burned = Vec::new();
    let mut candidates = Vec::new();

    for v in 1..n {
        burned.clear();
        queue.clear();
        stamp[v] = v;
        let count = ambassadors.min(v);
        for amb in index::sample(&mut rng, v, count).into_iter() {
            stamp[amb] = v;
            burned.push(amb);
            queue.push_back(amb);
        }
        while let Some(x) = queue.pop_front() {
            for (links, p) in [(&out_links[x], p_forward), (&in_links[x], p_backward)] {
                candidates.clear();
                candidates.extend(links.iter().copied().filter(|&y| stamp[y] != v));
                let take = geometric_capped(&mut rng, p, candidates.len());
                if take == 0 {
                    continue;
                }
                for i in index::sample(&mut rng, candidates.len(), take).into_iter() {
                    let y = candidates[i];
                    stamp[y] = v;
                    burned.push(y);
                    queue.push_back(y);
                }
            }
        }
        for &b in &burned {
            out_links[v].push(b);
            in_links[b].push(v);
            edges.push((b, v));
        }
    }
    Ok(Graph::from_edges_lossy(n, edges))
}

/// A parameter that is either fixed or drawn uniformly per generated file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Fixed(f64),
    Range { lo: f64, hi: f64 },
}

/// Parameter template for a corpus of graphs from one model.
///
/// Parsed from `k=v,...` strings; ranges are written `lo..hi` (inclusive,
/// integers for counts). Missing keys take the corpus defaults: `n=200..1000`
/// for every model, ER `mean_degree=8`, WS `k=8,p=0.05`, BA `m=4,m0=4`,
/// FF `p_f=0.37,p_b=0.32,a=1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamTemplate {
    pub model: Model,
    pub values: BTreeMap<String, ParamValue>,
}

impl ParamTemplate {
    pub fn defaults(model: Model) -> Self {
        let mut values = BTreeMap::new();
        values.insert(
            "n".into(),
            ParamValue::Range {
                lo: 200.0,
                hi: 1000.0,
            },
        );
        let fixed: &[(&str, f64)] = match model {
            Model::Er => &[("mean_degree", 8.0)],
            Model::Ws => &[("k", 8.0), ("p", 0.05)],
            Model::Ba => &[("m", 4.0), ("m0", 4.0)],
            Model::Ff => &[("p_f", 0.37), ("p_b", 0.32), ("a", 1.0)],
        };
        for &(k, v) in fixed {
            values.insert(k.into(), ParamValue::Fixed(v));
        }
        ParamTemplate { model, values }
    }

    /// Parse `k=v,k2=lo..hi` on top of the model defaults.
    pub fn parse(model: Model, text: &str) -> Result<Self> {
        let mut t = Self::defaults(model);
        let allowed: &[&str] = match model {
            Model::Er => &["n", "p", "mean_degree"],
            Model::Ws => &["n", "k", "p"],
            Model::Ba => &["n", "m", "m0"],
            Model::Ff => &["n", "p_f", "p_b", "a"],
        };
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, val) = part.split_once('=').ok_or_else(|| {
                Error::InvalidParameter(format!("expected key=value, found `{part}`"))
            })?;
            let key = key.trim();
            if !allowed.contains(&key) {
                return Err(Error::InvalidParameter(format!(
                    "unknown parameter `{key}` for model {model}"
                )));
            }
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidParameter(format!("`{s}` is not a number")))
            };
            let value = match val.split_once("..") {
                Some((lo, hi)) => {
                    let (lo, hi) = (num(lo)?, num(hi)?);
                    if lo > hi {
                        return Err(Error::InvalidParameter(format!("empty range {part}")));
                    }
                    ParamValue::Range { lo, hi }
                }
                None => ParamValue::Fixed(num(val)?),
            };
            if model == Model::Er && key == "p" {
                t.values.remove("mean_degree");
            }
            if model == Model::Er && key == "mean_degree" {
                t.values.remove("p");
            }
            t.values.insert(key.to_owned(), value);
        }
        Ok(t)
    }

    /// Draw concrete parameters for one graph.
    pub fn resolve(&self, rng: &mut NetRng) -> Result<GeneratorSpec> {
        let mut drawn = BTreeMap::new();
        for (k, v) in &self.values {
            let x = match *v {
                ParamValue::Fixed(x) => x,
                ParamValue::Range { lo, hi } if is_count(k) => {
                    rng.random_range(lo.round() as i64..=hi.round() as i64) as f64
                }
                ParamValue::Range { lo, hi } => {
                    if lo == hi {
                        lo
                    } else {
                        rng.random_range(lo..=hi)
                    }
                }
            };
            drawn.insert(k.as_str(), x);
        }
        let count = |k: &str| -> Result<usize> {
            let x = drawn[k];
            if x < 0.0 || x.fract() != 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{k} = {x} must be a non-negative integer"
                )));
            }
            Ok(x as usize)
        };
        let n = count("n")?;
        let spec = match self.model {
            Model::Er => {
                let p = match drawn.get("p") {
                    Some(&p) => p,
                    None if n > 1 => (drawn["mean_degree"] / (n as f64 - 1.0)).min(1.0),
                    None => 0.0,
                };
                GeneratorSpec::Er { n, p }
            }
            Model::Ws => GeneratorSpec::Ws {
                n,
                k: count("k")?,
                p: drawn["p"],
            },
            Model::Ba => GeneratorSpec::Ba {
                n,
                m: count("m")?,
                m0: count("m0")?,
            },
            Model::Ff => GeneratorSpec::Ff {
                n,
                p_forward: drawn["p_f"],
                p_backward: drawn["p_b"],
                ambassadors: count("a")?,
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Resolve and generate graph `index` of a corpus.
    pub fn instantiate(&self, corpus_seed: u64, index: u64) -> Result<(GeneratorSpec, u64, Graph)> {
        let seed = derive_seed(corpus_seed, index);
        let mut rng = rng_from_seed(derive_seed(seed, u64::MAX));
        let spec = self.resolve(&mut rng)?;
        let g = spec.generate(seed)?;
        Ok((spec, seed, g))
    }
}

fn is_count(key: &str) -> bool {
    matches!(key, "n" | "k" | "m" | "m0" | "a")
}
