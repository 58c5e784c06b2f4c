mod common;

use netfp::graph::{parse_gml, simplify, write_gml};
use netfp::Graph;
use proptest::prelude::*;

fn roundtrip(g: &Graph) -> Graph {
    let text = write_gml(g);
    let (back, report) = simplify(&parse_gml(&text).unwrap());
    assert!(!report.removed_anything());
    back
}

proptest! {
    #[test]
    fn gml_roundtrip(n in 0usize..40, raw in proptest::collection::vec((0usize..40, 0usize..40), 0..120)) {
        let g = Graph::from_edges_lossy(n, raw);
        let back = roundtrip(&g);
        prop_assert_eq!(back.node_count(), g.node_count());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn permutation_preserves_degree_multiset(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let g = common::fuzz_graph(&mut r, 25);
        let p = common::random_permutation(&mut r, g.node_count());
        let h = g.permuted(&p);
        prop_assert_eq!(h.sorted_degree_sequence(), g.sorted_degree_sequence());
        for v in 0..g.node_count() {
            prop_assert_eq!(h.degree(p[v]), g.degree(v));
        }
    }
}

#[test]
fn labels_survive_roundtrip() {
    let g = Graph::new(3, [(0, 1), (1, 2)])
        .unwrap()
        .with_labels(vec!["a \"quoted\"".into(), "b & c".into(), "d".into()])
        .unwrap();
    let back = roundtrip(&g);
    assert_eq!(back.node_labels(), g.node_labels());
    assert_eq!(back.edges(), g.edges());
}

#[test]
fn sparse_ids_and_foreign_attributes() {
    let doc = r##"
Creator "someone"
graph [
  directed 0
  comment "exported elsewhere"
  node [ id 100 label "x" graphics [ x 1.5 y -2 fill "#ff0000" ] ]
  node [ id -4 label "y" ]
  node [ id 7 ]
  edge [ source 100 target -4 value 3 ]
  edge [ source -4 target 100 ]
  edge [ source 7 target 7 ]
  edge [ source 7 target 100 weight 0 ]
]
"##;
    let (g, report) = simplify(&parse_gml(doc).unwrap());
    assert_eq!(g.node_count(), 3);
    assert_eq!(g.edges(), &[(0, 1)]);
    assert_eq!(report.self_loop_count, 1);
    assert_eq!(report.multi_edge_count, 1);
    assert_eq!(report.zero_weight_count, 1);
    assert_eq!(g.node_labels().unwrap()[1], "y");
}

#[test]
fn handshake_on_fuzz() {
    let mut r = common::rng(11);
    for _ in 0..200 {
        let g = common::fuzz_graph(&mut r, 30);
        g.check_invariants().unwrap();
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        let adj = common::adjacency(&g);
        for a in 0..g.node_count() {
            for b in 0..g.node_count() {
                assert_eq!(g.has_edge(a, b), adj[a][b]);
            }
        }
    }
}
