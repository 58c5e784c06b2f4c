//! Counts of the six connected 4-node graphlets.
//!
//! Subgraph (non-induced) counts come from closed-form identities over
//! degrees, per-edge triangle counts and pairwise co-degrees; induced counts
//! are recovered by inverting the containment relation between classes.

use serde::{Deserialize, Serialize};

use super::metrics::common_count;
use crate::graph::Graph;

/// The six connected 4-node classes, in feature order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Motif {
    /// m4_1, 6 edges.
    Clique,
    /// m4_2, 5 edges.
    Diamond,
    /// m4_3, triangle with a pendant, 4 edges.
    Paw,
    /// m4_4, 4 edges.
    Cycle,
    /// m4_5, 3 edges.
    Star,
    /// m4_6, 3 edges.
    Path,
}

impl Motif {
    pub const ALL: [Motif; 6] = [
        Motif::Clique,
        Motif::Diamond,
        Motif::Paw,
        Motif::Cycle,
        Motif::Star,
        Motif::Path,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn id(self) -> &'static str {
        ["m4_1", "m4_2", "m4_3", "m4_4", "m4_5", "m4_6"][self as usize]
    }

    pub fn edge_count(self) -> usize {
        [6, 5, 4, 4, 3, 3][self as usize]
    }
}

/// Whether census counts are of induced subgraphs or of all (possibly
/// non-induced) copies of each pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusMode {
    #[default]
    Induced,
    NonInduced,
}

/// Occurrence counts indexed by [`Motif`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MotifCensus {
    pub counts: [u64; 6],
}

impl MotifCensus {
    pub fn get(&self, motif: Motif) -> u64 {
        self.counts[motif.index()]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

impl From<[u64; 6]> for MotifCensus {
    fn from(counts: [u64; 6]) -> Self {
        MotifCensus { counts }
    }
}

/// Induced census of connected 4-node subgraphs.
pub fn motif_census(g: &Graph) -> MotifCensus {
    census_with_mode(g, CensusMode::Induced)
}

pub fn census_with_mode(g: &Graph, mode: CensusMode) -> MotifCensus {
    let sub = subgraph_counts(g);
    match mode {
        CensusMode::NonInduced => MotifCensus { counts: sub },
        CensusMode::Induced => MotifCensus {
            counts: induced_from_subgraph(sub),
        },
    }
}

/// Non-induced copies of each pattern, in [`Motif`] order.
fn subgraph_counts(g: &Graph) -> [u64; 6] {
    let n = g.node_count();
    if n < 4 {
        return [0; 6];
    }
    let deg: Vec<u64> = g.degrees().into_iter().map(|d| d as u64).collect();

    let mut tri_at = vec![0u64; n];
    let mut tri_sum = 0u64;
    let mut diamond = 0u64;
    let mut path_raw = 0u64;
    let mut clique = 0u64;
    let mut common = Vec::new();
    for &(a, b) in g.edges() {
        let (na, nb) = (g.neighbors(a), g.neighbors(b));
        let t = common_count(na, nb) as u64;
        tri_at[a] += t;
        tri_at[b] += t;
        tri_sum += t;
        diamond += t * t.saturating_sub(1) / 2;
        path_raw += (deg[a] - 1) * (deg[b] - 1);

        // 4-cliques, each found once from its two smallest vertices.
        common.clear();
        let (mut i, mut j) = (0, 0);
        while i < na.len() && j < nb.len() {
            match na[i].cmp(&nb[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if na[i] > b {
                        common.push(na[i]);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        for x in 0..common.len() {
            let nx = g.neighbors(common[x]);
            for &y in &common[x + 1..] {
                if nx.binary_search(&y).is_ok() {
                    clique += 1;
                }
            }
        }
    }
    let triangles = tri_sum / 3;
    // tri_at[v] counts each triangle at v twice (once per incident edge).
    let paw: u64 = (0..n)
        .map(|v| tri_at[v] / 2 * deg[v].saturating_sub(2))
        .sum();
    let star: u64 = deg
        .iter()
        .map(|&k| if k < 3 { 0 } else { k * (k - 1) * (k - 2) / 6 })
        .sum();
    let path = path_raw - 3 * triangles;

    // Each 4-cycle is seen from both of its diagonals.
    let mut codeg = vec![0u32; n];
    let mut touched = Vec::new();
    let mut cyc2 = 0u64;
    for x in 0..n {
        for &v in g.neighbors(x) {
            for &y in g.neighbors(v) {
                if y > x {
                    if codeg[y] == 0 {
                        touched.push(y);
                    }
                    codeg[y] += 1;
                }
            }
        }
        for &y in &touched {
            let c = u64::from(codeg[y]);
            cyc2 += c * (c - 1) / 2;
            codeg[y] = 0;
        }
        touched.clear();
    }
    let cycle = cyc2 / 2;

    [clique, diamond, paw, cycle, star, path]
}

/// Invert the containment relation. Copies of each pattern inside each
/// induced class (rows: containing class):
///
/// | inside   | diamond | cycle | paw | star | path |
/// |----------|---------|-------|-----|------|------|
/// | clique   | 6       | 3     | 12  | 4    | 12   |
/// | diamond  | 1       | 1     | 4   | 2    | 6    |
/// | cycle    |         | 1     |     |      | 4    |
/// | paw      |         |       | 1   | 1    | 2    |
fn induced_from_subgraph(s: [u64; 6]) -> [u64; 6] {
    let s = s.map(|x| x as i128);
    let [k4, dia, paw, cyc, star, path] = s;
    let i_k4 = k4;
    let i_dia = dia - 6 * i_k4;
    let i_cyc = cyc - i_dia - 3 * i_k4;
    let i_paw = paw - 4 * i_dia - 12 * i_k4;
    let i_star = star - i_paw - 2 * i_dia - 4 * i_k4;
    let i_path = path - 2 * i_paw - 4 * i_cyc - 6 * i_dia - 12 * i_k4;
    let out = [i_k4, i_dia, i_paw, i_cyc, i_star, i_path];
    debug_assert!(
        out.iter().all(|&c| c >= 0),
        "negative induced count {out:?}"
    );
    out.map(|c| c.max(0) as u64)
}
