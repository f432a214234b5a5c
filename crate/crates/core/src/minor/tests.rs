use std::collections::BTreeSet;

use super::*;
use crate::graph::generate;

fn sorted(mut v: Vec<Vertex>) -> Vec<Vertex> {
    v.sort_unstable();
    v
}

/// Two big paths joined by two single-vertex bridge clouds.
fn theta() -> StaticGraph {
    StaticGraph::from_edges(8, &[(1, 2), (2, 3), (4, 5), (5, 6), (3, 7), (7, 6), (3, 8), (8, 6)]).unwrap()
}

/// Quotient of `G` by the node map, computed without the minor's own edges.
fn quotient_edges(g: &StaticGraph, map: &[NodeId]) -> BTreeSet<(NodeId, NodeId)> {
    g.edges()
        .map(|(u, v)| (map[u as usize], map[v as usize]))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect()
}

fn check_exact_cover(m: &StructureMinor, n: usize) {
    let mut seen = vec![false; n + 1];
    for u in m.nodes() {
        let xs = m.expand(u);
        assert_eq!(xs.len() as u64, m.weight(u), "node {u}");
        for v in xs {
            assert!(!seen[v as usize], "vertex {v} expanded twice");
            seen[v as usize] = true;
        }
    }
    assert!(seen[1..].iter().all(|&s| s));
}

#[test]
fn star_fixture() {
    let g = generate::star(21);
    let p = CloudPartition::build(&g, 1.0);
    let m = StructureMinor::build(&p).unwrap();
    assert_eq!(m.node_count(), 2);
    assert_eq!((m.kind(1), m.weight(1)), (NodeKind::Big, 5));
    assert_eq!((m.kind(2), m.weight(2)), (NodeKind::MetaLeaf, 16));
    assert_eq!(m.graph().m(), 1);
    assert_eq!(sorted(m.expand(2)), (6..=21).collect::<Vec<_>>());
}

#[test]
fn path8_fixture() {
    let g = generate::path(8);
    let p = CloudPartition::build(&g, 1.0);
    let m = StructureMinor::build(&p).unwrap();
    assert_eq!(m.node_count(), 3);
    assert_eq!(m.kind(3), NodeKind::MetaLeaf);
    assert_eq!(m.anchor_of(3), 7);
    assert_eq!(m.graph().edges().collect::<Vec<_>>(), vec![(1, 2), (2, 3)]);
    let c = m.counts();
    assert_eq!((c.big, c.meta_leaf, c.edges, c.max_weight), (2, 1, 2, 3));
}

#[test]
fn theta_fixture_has_one_meta_bridge() {
    let g = theta();
    let p = CloudPartition::build_with_cap(&g, 3);
    let m = StructureMinor::build(&p).unwrap();
    assert_eq!(m.node_count(), 3);
    assert_eq!(m.kind(3), NodeKind::MetaBridge);
    assert_eq!(m.weight(3), 2);
    assert_eq!(m.neighbors(3), &[1, 2]);
    assert_eq!(sorted(m.expand(3)), vec![7, 8]);
    assert_eq!(m.color(3), Some(0));
    assert_eq!(m.color(1), None);
    m.check_forests().unwrap();
}

#[test]
fn phi_mode_groups_phi_bridges() {
    // centre of a 3-armed spider touches three big clouds
    let g = crate::cloudpart::tests::spider(3, 4);
    let mut p = CloudPartition::build_with_cap(&g, 4);
    p.classify_phi(4);
    let m = StructureMinor::build(&p).unwrap();
    assert_eq!(m.counts().phi_meta_bridge, 1);
    let u = m.nodes().find(|&u| m.kind(u) == NodeKind::PhiMetaBridge).unwrap();
    assert_eq!(m.expand(u), vec![13]);
    assert_eq!(m.neighbors(u), &[1, 2, 3]);
}

#[test]
fn anchors_round_trip() {
    let g = generate::grid(16, 16);
    let p = CloudPartition::build(&g, 1.0);
    let m = StructureMinor::build(&p).unwrap();
    for u in m.nodes() {
        assert_eq!(m.node_of(m.anchor_of(u)), Some(u));
    }
    let anchors: BTreeSet<Vertex> = m.nodes().map(|u| m.anchor_of(u)).collect();
    for v in g.vertices().filter(|v| !anchors.contains(v)) {
        assert_eq!(m.node_of(v), None);
    }
}

#[test]
fn weights_sum_and_cover_exactly_once() {
    let graphs = [
        generate::grid(16, 16),
        generate::tri_grid(12, 9),
        generate::random_planar(20, 20, 0.3, 5),
        generate::star(40),
        theta(),
        generate::path(31),
    ];
    for g in &graphs {
        let p = CloudPartition::build(g, 1.0);
        let m = StructureMinor::build(&p).unwrap();
        let total: u64 = m.nodes().map(|u| m.weight(u)).sum();
        assert_eq!(total, g.n() as u64);
        check_exact_cover(&m, g.n());
        m.check_forests().unwrap();
    }
}

#[test]
fn edges_match_the_cloud_quotient() {
    for seed in 0..6 {
        let g = generate::random_planar(24, 18, 0.4, seed);
        let p = CloudPartition::build(&g, 1.0);
        let m = StructureMinor::build(&p).unwrap();
        let expected = quotient_edges(&g, &m.node_map());
        let actual: BTreeSet<(NodeId, NodeId)> = m.graph().edges().collect();
        assert_eq!(actual, expected, "seed {seed}");
    }
}

#[test]
fn colours_stay_within_the_orientation_bound() {
    for seed in 0..4 {
        let g = generate::random_planar(40, 40, 0.6, seed);
        let p = CloudPartition::build_with_cap(&g, 4);
        let m = StructureMinor::build(&p).unwrap();
        assert!(m.color_count() <= 6, "{} colours", m.color_count());
        m.check_forests().unwrap();
    }
}

#[test]
fn text_dump_lists_nodes_then_edges() {
    let g = generate::path(8);
    let p = CloudPartition::build(&g, 1.0);
    let m = StructureMinor::build(&p).unwrap();
    let text = m.to_text();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "nodes 3");
    assert_eq!(lines[3], "3 meta_leaf 2 7");
    assert_eq!(lines[4], "edges 2");
    assert_eq!(lines[6], "2 3");
}

#[test]
fn budget_labels_are_charged() {
    let g = generate::grid(32, 32);
    let p = CloudPartition::build(&g, 1.0);
    let mut budget = BitBudget::new();
    let m = StructureMinor::build_budgeted(&p, 3, &mut budget).unwrap();
    for label in ["minor.nodes", "minor.adjacency", "minor.anchor_map", "minor.forests"] {
        assert!(budget.current(label) > 0, "{label}");
    }
    assert_eq!(budget.current("minor.construction"), 0);
    assert!(budget.peak("minor.construction") > 0);
    assert!(m.structure_bits() > 0);
}
