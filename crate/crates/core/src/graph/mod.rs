//! Undirected simple graphs and their GML interchange form.

mod gml;
mod simplify;

pub use gml::{parse_gml, write_gml, RawEdge, RawGraphRecord, RawNode};
pub use simplify::{simplify, SimplifyReport};

use crate::error::{Error, Result};

/// An undirected simple graph over nodes `0..node_count`.
///
/// Edges are stored once as `(min, max)` pairs in ascending lexicographic
/// order; adjacency lists are sorted. Values are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    node_labels: Option<Vec<String>>,
}

impl Graph {
    /// Build a graph, rejecting self-loops, duplicate edges and out-of-range
    /// endpoints.
    pub fn new<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= node_count || b >= node_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {node_count} nodes"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on node {a}")));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_canonical(node_count, list))
    }

    /// Like [`Graph::new`] but silently drops loops and merges duplicates.
    pub fn from_edges_lossy<I>(node_count: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list: Vec<_> = edges
            .into_iter()
            .filter(|&(a, b)| a != b && a < node_count && b < node_count)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        list.sort_unstable();
        list.dedup();
        Self::from_canonical(node_count, list)
    }

    /// `edges` must already be sorted, deduplicated `(min, max)` pairs.
    pub(crate) fn from_canonical(node_count: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); node_count];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            node_count,
            edges,
            adj,
            node_labels: None,
        }
    }

    pub fn empty(node_count: usize) -> Self {
        Self::from_canonical(node_count, Vec::new())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.node_count {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.node_count
            )));
        }
        self.node_labels = Some(labels);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `node`.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    pub fn node_labels(&self) -> Option<&[String]> {
        self.node_labels.as_deref()
    }

    /// Number of edges attached to `node`.
    ///
    /// # Panics
    /// If `node >= node_count`.
    pub fn degree(&self, node: usize) -> usize {
        assert!(
            node < self.node_count,
            "node {node} out of range ({} nodes)",
            self.node_count
        );
        self.adj[node].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn sorted_degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if a >= self.node_count || b >= self.node_count {
            return false;
        }
        let (short, other) = if self.adj[a].len() <= self.adj[b].len() {
            (&self.adj[a], b)
        } else {
            (&self.adj[b], a)
        };
        short.binary_search(&other).is_ok()
    }

    /// Relabel nodes so that old node `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.node_count, "permutation length mismatch");
        Self::from_edges_lossy(
            self.node_count,
            self.edges.iter().map(|&(a, b)| (perm[a], perm[b])),
        )
    }

    /// Re-check every structural invariant. Used by tests and debug assertions.
    pub fn check_invariants(&self) -> Result<()> {
        for w in self.edges.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidGraph("edge list not strictly sorted".into()));
            }
        }
        for &(a, b) in &self.edges {
            if a >= b || b >= self.node_count {
                return Err(Error::InvalidGraph(format!("bad edge ({a}, {b})")));
            }
        }
        let stubs: usize = self.adj.iter().map(Vec::len).sum();
        if stubs != 2 * self.edges.len() {
            return Err(Error::InvalidGraph("adjacency disagrees with edges".into()));
        }
        Ok(())
    }
}

/// Number of edges attached to node `i`.
pub fn degree(g: &Graph, i: usize) -> usize {
    g.degree(i)
}
