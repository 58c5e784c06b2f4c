//! Degree-preserving randomization by double-edge swaps.

use rand::Rng;
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, rng_from_seed};

/// Size and mixing of a configuration-model ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub ensemble_size: usize,
    pub swaps_per_edge: usize,
    pub seed: u64,
}

impl Default for EnsembleSpec {
    fn default() -> Self {
        EnsembleSpec {
            ensemble_size: 100,
            swaps_per_edge: 10,
            seed: 0,
        }
    }
}

impl EnsembleSpec {
    pub fn new(ensemble_size: usize, swaps_per_edge: usize, seed: u64) -> Result<Self> {
        let s = EnsembleSpec {
            ensemble_size,
            swaps_per_edge,
            seed,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ensemble_size < 2 {
            return Err(Error::InvalidParameter(format!(
                "ensemble size must be at least 2 (got {})",
                self.ensemble_size
            )));
        }
        if self.swaps_per_edge == 0 {
            return Err(Error::InvalidParameter(
                "swaps per edge must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        EnsembleSpec { seed, ..self }
    }
}

#[inline]
fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Attempt `swaps` double-edge swaps on a copy of `g`.
///
/// Each attempt picks two distinct edges `{a,b}`, `{c,d}` and proposes either
/// `{a,d},{c,b}` or `{a,c},{b,d}` on a coin flip. Proposals creating a loop or
/// a parallel edge are rejected, so the degree sequence is preserved exactly.
pub fn rewire(g: &Graph, swaps: usize, seed: u64) -> Graph {
    let m = g.edge_count();
    if m < 2 {
        return g.clone();
    }
    let mut rng = rng_from_seed(seed);
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    let mut present: FxHashSet<(usize, usize)> = edges.iter().copied().collect();
    present.reserve(m);

    for _ in 0..swaps {
        let i = rng.random_range(0..m);
        let mut j = rng.random_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        let (a, b) = edges[i];
        let (c, d) = edges[j];
        let (e1, e2) = if rng.random_bool(0.5) {
            ((a, d), (c, b))
        } else {
            ((a, c), (b, d))
        };
        if e1.0 == e1.1 || e2.0 == e2.1 {
            continue;
        }
        let (k1, k2) = (key(e1.0, e1.1), key(e2.0, e2.1));
        if k1 == k2 || present.contains(&k1) || present.contains(&k2) {
            continue;
        }
        present.remove(&edges[i]);
        present.remove(&edges[j]);
        present.insert(k1);
        present.insert(k2);
        edges[i] = k1;
        edges[j] = k2;
    }
    edges.sort_unstable();
    Graph::from_canonical(g.node_count(), edges)
}

/// Member `index` of the ensemble described by `spec`.
pub fn ensemble_member(g: &Graph, spec: &EnsembleSpec, index: usize) -> Graph {
    let swaps = spec.swaps_per_edge.saturating_mul(g.edge_count());
    rewire(g, swaps, derive_seed(spec.seed, index as u64))
}

/// `spec.ensemble_size` independent rewirings of `g`, in index order.
pub fn ensemble(g: &Graph, spec: &EnsembleSpec) -> Result<Vec<Graph>> {
    spec.validate()?;
    Ok((0..spec.ensemble_size)
        .into_par_iter()
        .map(|i| ensemble_member(g, spec, i))
        .collect())
}
