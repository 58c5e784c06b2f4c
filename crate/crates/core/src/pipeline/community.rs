//! Similarity networks over classes, greedy modularity communities and
//! community co-membership counts.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::confusion::ConfusionAggregate;
use crate::error::{Error, Result};

/// Undirected weighted network over named nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedNetwork {
    pub labels: Vec<String>,
    /// `(i, j, w)` with `i < j` and `w > 0`, ascending by `(i, j)`.
    pub edges: Vec<(usize, usize, f64)>,
}

impl WeightedNetwork {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn weight(&self, a: usize, b: usize) -> f64 {
        let key = (a.min(b), a.max(b));
        self.edges
            .iter()
            .find(|e| (e.0, e.1) == key)
            .map_or(0.0, |e| e.2)
    }

    /// GML with a `label` per node and a `weight` per edge.
    pub fn to_gml(&self) -> String {
        let mut out = String::from("graph [\n  directed 0\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = write!(
                out,
                "  node [\n    id {i}\n    label \"{}\"\n  ]\n",
                l.replace('&', "&amp;").replace('"', "&quot;")
            );
        }
        for &(a, b, w) in &self.edges {
            let _ = write!(
                out,
                "  edge [\n    source {a}\n    target {b}\n    weight {w}\n  ]\n"
            );
        }
        out.push_str("]\n");
        out
    }

    /// Graphviz DOT with a `weight` attribute per edge.
    pub fn to_dot(&self) -> String {
        let q = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
        let mut out = String::from("graph similarity {\n");
        for l in &self.labels {
            let _ = writeln!(out, "  {};", q(l));
        }
        for &(a, b, w) in &self.edges {
            let _ = writeln!(
                out,
                "  {} -- {} [weight={w}];",
                q(&self.labels[a]),
                q(&self.labels[b])
            );
        }
        out.push_str("}\n");
        out
    }
}

/// One node per class; edge `(i, j)` carries `similarity[i][j]` when positive.
pub fn build_similarity_network(agg: &ConfusionAggregate) -> WeightedNetwork {
    network_from_matrix(&agg.class_names, &agg.similarity)
}

/// Weighted network from a symmetric matrix; the diagonal is ignored.
pub fn network_from_matrix(labels: &[String], m: &[Vec<f64>]) -> WeightedNetwork {
    let mut edges = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            let w = m[i][j].max(m[j][i]);
            if w > 0.0 {
                edges.push((i, j, w));
            }
        }
    }
    WeightedNetwork {
        labels: labels.to_vec(),
        edges,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    pub labels: Vec<String>,
    /// Community id per label, contiguous from 0 in order of first appearance.
    pub membership: Vec<usize>,
    pub modularity: f64,
}

impl Partition {
    pub fn community_count(&self) -> usize {
        self.membership.iter().max().map_or(0, |m| m + 1)
    }

    pub fn communities(&self) -> Vec<Vec<String>> {
        let mut out = vec![Vec::new(); self.community_count()];
        for (l, &c) in self.labels.iter().zip(&self.membership) {
            out[c].push(l.clone());
        }
        out
    }
}

/// Weighted modularity `Σ_c (e_cc − a_c²)`; zero for an edgeless network.
pub fn modularity(net: &WeightedNetwork, membership: &[usize]) -> f64 {
    let total: f64 = net.edges.iter().map(|e| e.2).sum();
    if total <= 0.0 {
        return 0.0;
    }
    let k = membership.iter().max().map_or(0, |m| m + 1);
    let mut inside = vec![0.0; k];
    let mut strength = vec![0.0; k];
    for &(a, b, w) in &net.edges {
        if membership[a] == membership[b] {
            inside[membership[a]] += w;
        }
        strength[membership[a]] += w;
        strength[membership[b]] += w;
    }
    (0..k)
        .map(|c| inside[c] / total - (strength[c] / (2.0 * total)).powi(2))
        .sum()
}

fn relabel_contiguous(raw: &[usize]) -> Vec<usize> {
    let mut map = rustc_hash::FxHashMap::default();
    raw.iter()
        .map(|r| {
            let next = map.len();
            *map.entry(*r).or_insert(next)
        })
        .collect()
}

/// Weighted Clauset–Newman–Moore agglomeration: starting from singletons,
/// repeatedly merge the connected pair with the largest modularity gain
/// `2(e_ij − a_i a_j)`, stopping once no merge increases modularity. Ties go to
/// the lowest `(i, j)` pair.
pub fn detect_communities(net: &WeightedNetwork) -> Partition {
    let n = net.node_count();
    let total: f64 = net.edges.iter().map(|e| e.2).sum();
    let mut owner: Vec<usize> = (0..n).collect();
    if total > 0.0 {
        // e[i][j]: fraction of edge-end weight between communities i and j.
        let mut e = vec![vec![0.0f64; n]; n];
        for &(a, b, w) in &net.edges {
            e[a][b] += w / (2.0 * total);
            e[b][a] += w / (2.0 * total);
        }
        let mut a: Vec<f64> = e.iter().map(|row| row.iter().sum()).collect();
        let mut alive = vec![true; n];
        loop {
            let mut best: Option<(f64, usize, usize)> = None;
            for i in 0..n {
                if !alive[i] {
                    continue;
                }
                for j in i + 1..n {
                    if !alive[j] || e[i][j] <= 0.0 {
                        continue;
                    }
                    let dq = 2.0 * (e[i][j] - a[i] * a[j]);
                    if best.is_none_or(|(b, _, _)| dq > b) {
                        best = Some((dq, i, j));
                    }
                }
            }
            let Some((dq, i, j)) = best else { break };
            if dq <= 0.0 {
                break;
            }
            for k in 0..n {
                e[i][k] += e[j][k];
            }
            for k in 0..n {
                e[k][i] += e[k][j];
            }
            for k in 0..n {
                e[k][j] = 0.0;
                e[j][k] = 0.0;
            }
            a[i] += a[j];
            a[j] = 0.0;
            alive[j] = false;
            for o in owner.iter_mut() {
                if *o == j {
                    *o = i;
                }
            }
        }
    }
    let membership = relabel_contiguous(&owner);
    let modularity = modularity(net, &membership);
    Partition {
        labels: net.labels.clone(),
        membership,
        modularity,
    }
}

/// `overlap[i][j]`: number of partitions placing labels `i` and `j` in the same
/// community. The diagonal equals the partition count.
pub fn community_overlap(partitions: &[Partition]) -> Result<Vec<Vec<u64>>> {
    let Some(first) = partitions.first() else {
        return Ok(Vec::new());
    };
    let n = first.labels.len();
    let mut m = vec![vec![0u64; n]; n];
    for p in partitions {
        if p.labels != first.labels || p.membership.len() != n {
            return Err(Error::LabelMismatch);
        }
        for i in 0..n {
            for j in 0..n {
                if p.membership[i] == p.membership[j] {
                    m[i][j] += 1;
                }
            }
        }
    }
    Ok(m)
}
