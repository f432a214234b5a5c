//! Deterministic planar test-graph families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::StaticGraph;
use crate::Vertex;

#[inline]
fn cell(w: usize, r: usize, c: usize) -> Vertex {
    (r * w + c + 1) as Vertex
}

fn grid_edges(w: usize, h: usize) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::with_capacity(2 * w * h);
    for r in 0..h {
        for c in 0..w {
            if c + 1 < w {
                edges.push((cell(w, r, c), cell(w, r, c + 1)));
            }
            if r + 1 < h {
                edges.push((cell(w, r, c), cell(w, r + 1, c)));
            }
        }
    }
    edges
}

/// `w × h` grid; vertex `(r, c)` has label `r·w + c + 1`.
pub fn grid(w: usize, h: usize) -> StaticGraph {
    StaticGraph::from_edges(w * h, &grid_edges(w, h)).expect("grid is simple")
}

/// Grid with every diagonal `(r, c)–(r+1, c+1)` added.
pub fn tri_grid(w: usize, h: usize) -> StaticGraph {
    random_planar(w, h, 1.0, 0)
}

/// Star with centre 1 and leaves `2..=n`.
pub fn star(n: usize) -> StaticGraph {
    let edges: Vec<_> = (2..=n as Vertex).map(|v| (1, v)).collect();
    StaticGraph::from_edges(n, &edges).expect("star is simple")
}

/// Path `1 – 2 – … – n`.
pub fn path(n: usize) -> StaticGraph {
    let edges: Vec<_> = (1..n as Vertex).map(|v| (v, v + 1)).collect();
    StaticGraph::from_edges(n, &edges).expect("path is simple")
}

/// Triangulated grid keeping each diagonal independently with probability
/// `p`, restricted to its largest connected component.
pub fn random_planar(w: usize, h: usize, p: f64, seed: u64) -> StaticGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = grid_edges(w, h);
    for r in 0..h.saturating_sub(1) {
        for c in 0..w.saturating_sub(1) {
            if rng.gen_bool(p) {
                edges.push((cell(w, r, c), cell(w, r + 1, c + 1)));
            }
        }
    }
    let g = StaticGraph::from_edges(w * h, &edges).expect("triangulated grid is simple");
    largest_component(&g)
}

/// Adds up to `k` random non-edges between vertices at distance ≥ 2.
pub fn with_extra_edges(g: &StaticGraph, k: usize, seed: u64) -> StaticGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<_> = g.edges().collect();
    let n = g.n() as Vertex;
    let mut added = Vec::new();
    let mut attempts = 0;
    while added.len() < k && n >= 3 && attempts < 1000 {
        attempts += 1;
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        let (u, v) = (u.min(v), u.max(v));
        if u == v || g.has_edge(u, v) || added.contains(&(u, v)) {
            continue;
        }
        added.push((u, v));
    }
    edges.extend(added);
    StaticGraph::from_edges(g.n(), &edges).expect("extra edges are new")
}

/// Largest connected component, relabelled in increasing label order.
pub fn largest_component(g: &StaticGraph) -> StaticGraph {
    let (comp, count) = g.components();
    if count <= 1 {
        return g.clone();
    }
    let mut sizes = vec![0usize; count + 1];
    for v in g.vertices() {
        sizes[comp[v as usize] as usize] += 1;
    }
    let best = (1..=count).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c))).unwrap();
    let keep: Vec<Vertex> = g.vertices().filter(|&v| comp[v as usize] as usize == best).collect();
    g.induced(&keep)
}

/// Near-square grid with `2^k` vertices: `2^⌈k/2⌉ × 2^⌊k/2⌋`.
pub fn grid_pow2(k: u32) -> StaticGraph {
    let w = 1usize << k.div_ceil(2);
    let h = 1usize << (k / 2);
    grid(w, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let g = grid(4, 4);
        assert_eq!((g.n(), g.m()), (16, 24));
        assert_eq!(star(21).m(), 20);
        assert_eq!(path(8).m(), 7);
        let t = tri_grid(3, 3);
        assert_eq!(t.m(), 12 + 4);
        assert!(t.has_edge(1, 5));
    }

    #[test]
    fn random_planar_is_deterministic_and_sparse() {
        let a = random_planar(20, 15, 0.5, 42);
        let b = random_planar(20, 15, 0.5, 42);
        assert_eq!(a, b);
        assert!(a.m() <= 3 * a.n() - 6);
        assert!(a.is_connected());
    }

    #[test]
    fn pow2_grid() {
        let g = grid_pow2(11);
        assert_eq!(g.n(), 2048);
    }
}
