//! Missing graphs, the losing relation, and dependency digraph diagnostics
//! on the fixed counterexample digraphs and hand-checked small instances.

use snc_core::dependency::{
    convenient_orientations, delta_is_disjoint_paths, delta_path_defect, delta_to_dot,
    delta_to_json, dependency_digraph, is_good, loses_to, maximal_delta_paths, missing_graph,
    whole_vertices, DependencyDigraph, LosingLabel, MissingEdge, PathShapeDefect,
};
use snc_core::generate::dependency_counterexamples;
use snc_core::graph::OrientedGraph;
use snc_core::patterns::{find_induced_subgraph, Pattern};
use snc_core::Error;

fn label(x1: usize, y1: usize, x2: usize, y2: usize) -> LosingLabel {
    LosingLabel { x1, y1, x2, y2 }
}

/// A dependency digraph with the given arc shape and placeholder labels,
/// for exercising the path diagnostics, which read only nodes and arcs.
fn shape(n: usize, arcs: &[(usize, usize)]) -> DependencyDigraph {
    let mut arcs = arcs.to_vec();
    arcs.sort_unstable();
    DependencyDigraph {
        nodes: (0..n).map(|i| MissingEdge::new(2 * i, 2 * i + 1)).collect(),
        labels: vec![label(0, 0, 0, 0); arcs.len()],
        arcs,
    }
}

#[test]
fn tournaments_have_empty_missing_graphs() {
    let d = OrientedGraph::transitive_tournament(4).unwrap();
    assert_eq!(whole_vertices(&d), vec![0, 1, 2, 3]);
    let (g, map) = missing_graph(&d);
    assert_eq!(g.order(), 0);
    assert!(map.is_empty());
    let delta = dependency_digraph(&d);
    assert!(delta.nodes.is_empty());
    assert!(delta_is_disjoint_paths(&delta));
    assert_eq!(maximal_delta_paths(&delta).unwrap(), Vec::<Vec<usize>>::new());
}

#[test]
fn counterexample_missing_graphs_have_the_three_fixed_shapes() {
    let [d1, d2, d3] = dependency_counterexamples();
    for d in [&d1, &d2, &d3] {
        assert!(whole_vertices(d).is_empty());
    }
    let (g1, map1) = missing_graph(&d1);
    assert_eq!(map1, vec![0, 1, 2, 3]);
    assert_eq!(g1.edges(), &[(0, 1), (2, 3)]);
    assert!(find_induced_subgraph(&g1, &Pattern::C4Complement.graph()).is_some());

    let (g2, _) = missing_graph(&d2);
    assert_eq!(g2.edges(), &[(0, 1), (1, 3), (2, 3), (3, 4)]);
    assert!(find_induced_subgraph(&g2, &Pattern::Chair.graph()).is_some());

    let (g3, _) = missing_graph(&d3);
    assert_eq!(g3.order(), 5);
    assert_eq!(g3.size(), 6);
    assert!(find_induced_subgraph(&g3, &Pattern::CoChair.graph()).is_some());
}

#[test]
fn losing_digon_between_the_two_missing_edges() {
    let [d, _, _] = dependency_counterexamples();
    let ab = MissingEdge::new(0, 1);
    let cd = MissingEdge::new(2, 3);
    assert_eq!(loses_to(&d, ab, cd), Some(label(0, 1, 2, 3)));
    assert_eq!(loses_to(&d, cd, ab), Some(label(2, 3, 1, 0)));
    assert_eq!(loses_to(&d, ab, ab), None);

    let delta = dependency_digraph(&d);
    assert_eq!(delta.nodes, vec![ab, cd]);
    assert_eq!(delta.arcs, vec![(0, 1), (1, 0)]);
    assert_eq!(delta.labels, vec![label(0, 1, 2, 3), label(2, 3, 1, 0)]);
    assert_eq!(delta_path_defect(&delta), Some(PathShapeDefect::Digon { a: 0, b: 1 }));
    assert!(!delta_is_disjoint_paths(&delta));
    let err = maximal_delta_paths(&delta).unwrap_err();
    assert!(matches!(err, Error::Inconsistency(msg) if msg.contains("not a disjoint union")));
}

#[test]
fn chair_digraph_node_loses_to_two_edges() {
    let [_, d, _] = dependency_counterexamples();
    let delta = dependency_digraph(&d);
    let nodes: Vec<(usize, usize)> = delta.nodes.iter().map(|e| (e.u, e.v)).collect();
    assert_eq!(nodes, vec![(0, 1), (1, 3), (2, 3), (3, 4)]);
    assert_eq!(delta.arcs, vec![(0, 2), (0, 3)]);
    assert_eq!(delta.labels, vec![label(0, 1, 3, 2), label(0, 1, 3, 4)]);
    assert_eq!(delta.out_degree(0), 2);
    assert_eq!(
        delta_path_defect(&delta),
        Some(PathShapeDefect::OutBranching { node: 0, targets: vec![2, 3] })
    );
}

#[test]
fn cochair_digraph_node_loses_to_two_edges() {
    let [_, _, d] = dependency_counterexamples();
    let delta = dependency_digraph(&d);
    let nodes: Vec<(usize, usize)> = delta.nodes.iter().map(|e| (e.u, e.v)).collect();
    assert_eq!(nodes, vec![(0, 1), (1, 2), (1, 4), (2, 3), (2, 4), (3, 4)]);
    assert_eq!(delta.arcs, vec![(0, 3), (0, 5)]);
    assert_eq!(delta.labels, vec![label(0, 1, 2, 3), label(0, 1, 4, 3)]);
    assert_eq!(delta.out_degree(0), 2);
    assert_eq!(
        delta_path_defect(&delta),
        Some(PathShapeDefect::OutBranching { node: 0, targets: vec![3, 5] })
    );
}

#[test]
fn edges_in_separate_weak_components_never_lose() {
    let d = OrientedGraph::new(6, vec![(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
    let left = MissingEdge::new(0, 2);
    let right = MissingEdge::new(3, 5);
    assert_eq!(loses_to(&d, left, right), None);
    assert_eq!(loses_to(&d, right, left), None);
}

#[test]
fn goodness_matches_in_degree_and_the_orientation_clauses() {
    for d in dependency_counterexamples() {
        let delta = dependency_digraph(&d);
        for (i, &e) in delta.nodes.iter().enumerate() {
            let good = is_good(&d, &delta, e).unwrap();
            assert_eq!(good, delta.in_degree(i) == 0);
            assert_eq!(good, !convenient_orientations(&d, e).unwrap().is_empty());
        }
    }

    let [d1, _, d3] = dependency_counterexamples();
    let delta1 = dependency_digraph(&d1);
    for e in [MissingEdge::new(0, 1), MissingEdge::new(2, 3)] {
        assert!(!is_good(&d1, &delta1, e).unwrap());
        assert!(convenient_orientations(&d1, e).unwrap().is_empty());
    }
    let delta3 = dependency_digraph(&d3);
    assert!(is_good(&d3, &delta3, MissingEdge::new(0, 1)).unwrap());
    assert_eq!(convenient_orientations(&d3, MissingEdge::new(0, 1)).unwrap(), vec![(1, 0)]);
    assert!(!is_good(&d3, &delta3, MissingEdge::new(2, 3)).unwrap());
    assert!(convenient_orientations(&d3, MissingEdge::new(2, 3)).unwrap().is_empty());
}

#[test]
fn arcless_pair_admits_both_orientations() {
    let d = OrientedGraph::empty(2).unwrap();
    let both = convenient_orientations(&d, MissingEdge::new(0, 1)).unwrap();
    assert_eq!(both, vec![(0, 1), (1, 0)]);
}

#[test]
fn adjacent_pairs_are_rejected() {
    let [d, _, _] = dependency_counterexamples();
    let e = MissingEdge::new(0, 2);
    let err = convenient_orientations(&d, e).unwrap_err();
    assert!(matches!(err, Error::NotMissingEdge { u: 0, v: 2 }));
    let delta = dependency_digraph(&d);
    let err = is_good(&d, &delta, e).unwrap_err();
    assert!(matches!(err, Error::NotMissingEdge { u: 0, v: 2 }));
}

#[test]
fn cyclically_oriented_chords_of_a_five_cycle_give_a_cyclic_digraph() {
    let d = OrientedGraph::new(5, vec![(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
    let (g, _) = missing_graph(&d);
    assert!(find_induced_subgraph(&g, &Pattern::C5.graph()).is_some());
    let delta = dependency_digraph(&d);
    let nodes: Vec<(usize, usize)> = delta.nodes.iter().map(|e| (e.u, e.v)).collect();
    assert_eq!(nodes, vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
    assert_eq!(delta.arcs, vec![(0, 3), (1, 2), (2, 4), (3, 1), (4, 0)]);
    for i in 0..5 {
        assert_eq!(delta.out_degree(i), 1);
        assert_eq!(delta.in_degree(i), 1);
    }
    assert_eq!(
        delta_path_defect(&delta),
        Some(PathShapeDefect::Cycle { nodes: vec![0, 3, 1, 2, 4] })
    );
    assert!(maximal_delta_paths(&delta).is_err());
}

#[test]
fn single_losing_arc_yields_one_path_and_isolated_nodes() {
    // The co-chair counterexample with its 3-4 gap filled: the only edge
    // able to lose is 01, and it now loses only to 23.
    let d = OrientedGraph::new(5, vec![(0, 2), (1, 3), (3, 0), (0, 4), (3, 4)]).unwrap();
    let delta = dependency_digraph(&d);
    let nodes: Vec<(usize, usize)> = delta.nodes.iter().map(|e| (e.u, e.v)).collect();
    assert_eq!(nodes, vec![(0, 1), (1, 2), (1, 4), (2, 3), (2, 4)]);
    assert_eq!(delta.arcs, vec![(0, 3)]);
    assert!(delta_is_disjoint_paths(&delta));
    assert_eq!(
        maximal_delta_paths(&delta).unwrap(),
        vec![vec![0, 3], vec![1], vec![2], vec![4]]
    );
}

#[test]
fn path_diagnostics_on_fixed_shapes() {
    let chain = shape(4, &[(0, 1), (1, 2)]);
    assert_eq!(delta_path_defect(&chain), None);
    assert_eq!(maximal_delta_paths(&chain).unwrap(), vec![vec![0, 1, 2], vec![3]]);

    let join = shape(3, &[(0, 2), (1, 2)]);
    assert_eq!(
        delta_path_defect(&join),
        Some(PathShapeDefect::InBranching { node: 2, sources: vec![0, 1] })
    );

    let cycle_with_path = shape(5, &[(0, 1), (2, 3), (3, 4), (4, 2)]);
    assert_eq!(
        delta_path_defect(&cycle_with_path),
        Some(PathShapeDefect::Cycle { nodes: vec![2, 3, 4] })
    );
}

#[test]
fn serializations_carry_nodes_arcs_and_labels() {
    let [d, _, _] = dependency_counterexamples();
    let delta = dependency_digraph(&d);

    let json: serde_json::Value = serde_json::from_str(&delta_to_json(&delta)).unwrap();
    assert_eq!(json["nodes"], serde_json::json!([[0, 1], [2, 3]]));
    assert_eq!(json["arcs"][0]["from"], 0);
    assert_eq!(json["arcs"][0]["to"], 1);
    assert_eq!(
        json["arcs"][0]["label"],
        serde_json::json!({"x1": 0, "y1": 1, "x2": 2, "y2": 3})
    );
    assert_eq!(json["arcs"][1]["from"], 1);
    assert_eq!(json["arcs"][1]["to"], 0);
    assert_eq!(
        json["arcs"][1]["label"],
        serde_json::json!({"x1": 2, "y1": 3, "x2": 1, "y2": 0})
    );

    let dot = delta_to_dot(&d, &delta);
    assert!(dot.starts_with("digraph dependency {"));
    for line in [
        "v0 -> v2;",
        "v2 -> v1;",
        "v0 -> v1 [dir=none, style=dashed];",
        "v2 -> v3 [dir=none, style=dashed];",
        "m0 [label=\"0-1\", shape=box];",
        "m1 [label=\"2-3\", shape=box];",
        "m0 -> m1 [label=\"0>2 1>3\"];",
        "m1 -> m0 [label=\"2>1 3>0\"];",
    ] {
        assert!(dot.contains(line), "missing dot line: {line}");
    }
}
