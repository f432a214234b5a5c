use proptest::prelude::*;

use super::*;
use crate::cloudpart::CloudPartition;
use crate::graph::generate;

fn opts(delta: u32) -> HierarchyOptions {
    HierarchyOptions {
        delta,
        ..Default::default()
    }
}

fn hierarchy(g: &StaticGraph, delta: u32) -> Hierarchy {
    let p = CloudPartition::build(g, 1.0);
    let m = StructureMinor::build(&p).unwrap();
    Hierarchy::build(&m, &opts(delta)).unwrap()
}

fn check_queries(g: &StaticGraph, e: &SuccinctEncoding) {
    for u in g.vertices() {
        assert_eq!(e.degree(u), g.degree(u), "degree of {u}");
        let mut nb: Vec<Vertex> = e.neighbors(u).collect();
        nb.sort_unstable();
        assert_eq!(nb, g.neighbors(u), "neighbours of {u}");
        for v in g.vertices() {
            assert_eq!(e.adjacent(u, v), g.has_edge(u, v), "pair {u} {v}");
        }
    }
}

#[test]
fn micro_cap_formula() {
    assert_eq!(default_micro_cap(1 << 10), 4);
    assert_eq!(default_micro_cap(1 << 20), 5);
    assert_eq!(default_micro_cap(usize::MAX), 8);
}

#[test]
fn small_input_is_one_mini_graph() {
    let g = generate::grid(8, 8);
    let h = hierarchy(&g, DEFAULT_DELTA);
    assert_eq!(h.minis.len(), 1);
    assert_eq!(h.minis[0].vertices(), (1..=64).collect::<Vec<_>>());
    assert_eq!(h.minis[0].owned_graph(), g);
    assert_eq!(duplicate_stats(&h.minis, g.n()).total, 0);
    h.verify(&g).unwrap();
}

#[test]
fn star_packs_leaves_around_the_centre_cloud() {
    let g = generate::star(21);
    let h = hierarchy(&g, 2);
    let sizes: Vec<usize> = h.minis.iter().map(Piece::len).collect();
    assert_eq!(sizes, vec![19, 7, 5]);
    for m in &h.minis {
        assert_eq!(&m.vertices()[..5], &[1, 2, 3, 4, 5]);
    }
    let stats = duplicate_stats(&h.minis, g.n());
    assert_eq!(stats.total, (h.minis.len() - 1) * 5);
    assert!(h.minis[0].is_duplicate(1) && !h.minis[0].is_duplicate(6));
    h.verify(&g).unwrap();
}

#[test]
fn grid_ownership_with_forced_recursion() {
    let g = generate::grid(64, 64);
    assert_eq!(hierarchy(&g, DEFAULT_DELTA).minis.len(), 1);
    let h = hierarchy(&g, 2);
    assert!(h.minis.len() > 10, "{} minis", h.minis.len());
    let threshold = mini_threshold(g.n(), 2);
    assert!(h.minis.iter().all(|m| (m.len() as f64) < threshold + 4.0 * 12.0 * 12.0));
    h.verify(&g).unwrap();
    let stats = duplicate_stats(&h.minis, g.n());
    assert_eq!(stats.total, h.minis.iter().map(Piece::len).sum::<usize>() - g.n());
    assert_eq!(stats.by_depth.iter().sum::<usize>(), stats.total);
}

#[test]
fn single_micro_graph_when_small() {
    let g = generate::path(4);
    let h = hierarchy(&g, DEFAULT_DELTA);
    assert_eq!(h.micros, vec![vec![MicroGraph {
        piece: h.micros[0][0].piece.clone(),
        code: 0b100101,
    }]]);
    assert_eq!(h.micros[0][0].piece.len(), 4);
}

#[test]
fn path_mini_splits_into_overlapping_micros() {
    let t = 4;
    let g = generate::path(3 * t);
    let h = hierarchy(&g, DEFAULT_DELTA);
    let micros = micro_graphs(&h.minis[0], t, &SeparatorOptions::default()).unwrap();
    assert!(micros.len() >= 3);
    assert!(micros.iter().all(|m| m.piece.len() <= t));
    let total: usize = micros.iter().map(|m| m.piece.len()).sum();
    assert!(total > 3 * t);
    let pieces: Vec<Piece> = micros.into_iter().map(|m| m.piece).collect();
    check_level(&h.minis[0].owned_graph(), &pieces, "micro").unwrap();
}

#[test]
fn encoding_answers_match_on_small_corpus() {
    let graphs = [
        generate::grid(16, 16),
        generate::tri_grid(11, 9),
        generate::star(40),
        generate::path(50),
        generate::random_planar(14, 14, 0.5, 3),
    ];
    for g in &graphs {
        for delta in [2, DEFAULT_DELTA] {
            let e = SuccinctEncoding::encode(g, 1.0, &opts(delta)).unwrap();
            check_queries(g, &e);
        }
    }
}

#[test]
fn lookup_counts_stay_within_the_static_bound() {
    let g = generate::grid(20, 20);
    let e = SuccinctEncoding::encode(&g, 1.0, &opts(2)).unwrap();
    let bound = e.adjacency_lookup_bound();
    assert!(bound <= 12 + 2 * 8 + 2 * 6);
    for u in g.vertices() {
        assert!(e.degree_counted(u).1 <= DEGREE_LOOKUPS);
        for v in g.vertices() {
            assert!(e.adjacent_counted(u, v).1 <= bound);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn encoding_matches_random_planar_graphs(w in 3usize..10, h in 3usize..10, p in 0.0f64..1.0, seed in 0u64..1000, delta in 1u32..4) {
        let g = generate::random_planar(w, h, p, seed);
        let hier = hierarchy(&g, delta);
        hier.verify(&g).unwrap();
        let e = SuccinctEncoding::from_hierarchy(&g, &hier).unwrap();
        check_queries(&g, &e);
    }
}
