use rustc_hash::{FxHashMap, FxHashSet};

use super::{Graph, RawGraphRecord};

/// What [`simplify`] removed on the way to a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SimplifyReport {
    pub self_loop_count: usize,
    pub multi_edge_count: usize,
    pub zero_weight_count: usize,
}

impl SimplifyReport {
    pub fn removed_anything(&self) -> bool {
        self.self_loop_count + self.multi_edge_count + self.zero_weight_count > 0
    }
}

/// Reduce a raw record to a simple graph.
///
/// Direction is discarded, weights become presence (`w != 0`), parallel
/// entries merge and self-loops are dropped. Node ids are compacted to
/// `0..n` in declaration order; declared isolated nodes are kept.
pub fn simplify(record: &RawGraphRecord) -> (Graph, SimplifyReport) {
    let index: FxHashMap<i64, usize> = record
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.id, i))
        .collect();
    let n = record.nodes.len();

    let mut report = SimplifyReport::default();
    let mut seen = FxHashSet::default();
    let mut edges = Vec::with_capacity(record.entries.len());
    for e in &record.entries {
        if e.weight == Some(0.0) {
            report.zero_weight_count += 1;
            continue;
        }
        // The parser guarantees endpoints were declared.
        let (Some(&a), Some(&b)) = (index.get(&e.source), index.get(&e.target)) else {
            continue;
        };
        if a == b {
            report.self_loop_count += 1;
            continue;
        }
        let key = (a.min(b), a.max(b));
        if seen.insert(key) {
            edges.push(key);
        } else {
            report.multi_edge_count += 1;
        }
    }
    edges.sort_unstable();

    let mut g = Graph::from_canonical(n, edges);
    if record.nodes.iter().any(|node| node.label.is_some()) {
        let labels = record
            .nodes
            .iter()
            .map(|node| node.label.clone().unwrap_or_else(|| node.id.to_string()))
            .collect();
        g.node_labels = Some(labels);
    }
    (g, report)
}
