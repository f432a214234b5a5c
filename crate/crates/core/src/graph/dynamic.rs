use super::StaticGraph;
use crate::succinct::{ChoiceDictionary, SpaceUsage, StaticAllocator};
use crate::{Error, Result, Vertex};

/// Subgraph of a fixed parent graph, addressed in the parent's arc space.
///
/// Arc slots of vertex `u` occupy a contiguous range placed by a
/// [`StaticAllocator`] over the degrees; presence is a [`ChoiceDictionary`]
/// over all `2m` slots, so iterating `u`'s present arcs costs one successor
/// query per present arc. A second dictionary holds the vertices with at least
/// one present outgoing arc.
#[derive(Clone, Debug)]
pub struct DynamicSubgraph<'g> {
    graph: &'g StaticGraph,
    layout: StaticAllocator,
    arcs: ChoiceDictionary,
    out_degree: Vec<u32>,
    nonisolated: ChoiceDictionary,
}

impl<'g> DynamicSubgraph<'g> {
    pub fn empty(graph: &'g StaticGraph) -> Self {
        let n = graph.n();
        Self {
            graph,
            layout: StaticAllocator::new(graph.vertices().map(|u| graph.degree(u))),
            arcs: ChoiceDictionary::new(2 * graph.m()),
            out_degree: vec![0; n + 1],
            nonisolated: ChoiceDictionary::new(n),
        }
    }

    pub fn full(graph: &'g StaticGraph) -> Self {
        let mut s = Self::empty(graph);
        for u in graph.vertices() {
            for i in 0..graph.degree(u) {
                s.insert_arc(u, i);
            }
        }
        s
    }

    #[inline]
    pub fn graph(&self) -> &'g StaticGraph {
        self.graph
    }

    #[inline]
    fn slot(&self, u: Vertex, i: usize) -> usize {
        debug_assert!(i < self.graph.degree(u));
        self.layout.locate_unchecked(u as usize) + i + 1
    }

    #[inline]
    pub fn contains_arc(&self, u: Vertex, i: usize) -> bool {
        self.arcs.contains(self.slot(u, i))
    }

    /// Inserts arc `(u, i)`; returns false if it was already present.
    pub fn insert_arc(&mut self, u: Vertex, i: usize) -> bool {
        let slot = self.slot(u, i);
        if !self.arcs.insert(slot) {
            return false;
        }
        self.out_degree[u as usize] += 1;
        self.nonisolated.insert(u as usize);
        true
    }

    pub fn delete_arc(&mut self, u: Vertex, i: usize) -> Result<()> {
        let slot = self.slot(u, i);
        if !self.arcs.remove(slot) {
            return Err(Error::AbsentArc { vertex: u, arc: i });
        }
        self.out_degree[u as usize] -= 1;
        if self.out_degree[u as usize] == 0 {
            self.nonisolated.remove(u as usize);
        }
        Ok(())
    }

    /// Removes both arcs of the edge behind `(u, i)`, whichever are present.
    pub fn delete_edge(&mut self, u: Vertex, i: usize) {
        let v = self.graph.neighbor(u, i);
        let j = self.graph.cross(u, i);
        let _ = self.delete_arc(u, i);
        let _ = self.delete_arc(v, j);
    }

    /// Inserts both arcs of the edge behind `(u, i)`.
    pub fn insert_edge(&mut self, u: Vertex, i: usize) {
        let v = self.graph.neighbor(u, i);
        let j = self.graph.cross(u, i);
        self.insert_arc(u, i);
        self.insert_arc(v, j);
    }

    /// Indices `i` of present arcs leaving `u`, ascending.
    pub fn present_arcs(&self, u: Vertex) -> impl Iterator<Item = usize> + '_ {
        let base = self.layout.locate_unchecked(u as usize) + 1;
        let end = base + self.graph.degree(u);
        let mut next = base;
        std::iter::from_fn(move || {
            if self.out_degree[u as usize] == 0 {
                return None;
            }
            let slot = self.arcs.successor(next).filter(|&s| s < end)?;
            next = slot + 1;
            Some(slot - base)
        })
    }

    /// First present arc of `u` with index `>= from`.
    pub fn next_present_arc(&self, u: Vertex, from: usize) -> Option<usize> {
        let base = self.layout.locate_unchecked(u as usize) + 1;
        let end = base + self.graph.degree(u);
        if self.out_degree[u as usize] == 0 || base + from >= end {
            return None;
        }
        let slot = self.arcs.successor(base + from).filter(|&s| s < end)?;
        Some(slot - base)
    }

    pub fn neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.present_arcs(u).map(move |i| self.graph.neighbor(u, i))
    }

    #[inline]
    pub fn out_degree(&self, u: Vertex) -> usize {
        self.out_degree[u as usize] as usize
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Some vertex with a present outgoing arc.
    #[inline]
    pub fn any_nonisolated(&self) -> Option<Vertex> {
        self.nonisolated.choice().map(|u| u as Vertex)
    }

    #[inline]
    pub fn is_nonisolated(&self, u: Vertex) -> bool {
        self.nonisolated.contains(u as usize)
    }
}

impl SpaceUsage for DynamicSubgraph<'_> {
    /// Arc presence, layout markers and the nonisolated set. The per-vertex
    /// out-degree counters are a convenience cache and are charged at
    /// `⌈log₂(Δ+1)⌉` bits each.
    fn bits(&self) -> usize {
        let deg_width = crate::succinct::bit_width(self.graph.max_degree() as u64);
        self.layout.bits() + self.arcs.bits() + self.nonisolated.bits() + self.graph.n() * deg_width
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    #[test]
    fn delete_one_edge_of_c4() {
        let g = StaticGraph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let mut s = DynamicSubgraph::full(&g);
        let i = g.arc_index(1, 2).unwrap();
        s.delete_edge(1, i);
        assert_eq!(s.neighbors(1).collect::<Vec<_>>(), vec![4]);
        assert_eq!(s.neighbors(2).collect::<Vec<_>>(), vec![3]);
        assert!(matches!(s.delete_arc(1, i), Err(Error::AbsentArc { vertex: 1, .. })));
    }

    #[test]
    fn isolated_vertex_leaves_nonisolated_set() {
        let g = StaticGraph::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let mut s = DynamicSubgraph::full(&g);
        assert!(s.is_nonisolated(2));
        s.delete_arc(2, 0).unwrap();
        s.delete_arc(2, 1).unwrap();
        assert!(!s.is_nonisolated(2));
        assert_eq!(s.any_nonisolated(), Some(1));
        s.delete_arc(1, 0).unwrap();
        s.delete_arc(3, 0).unwrap();
        assert_eq!(s.any_nonisolated(), None);
    }

    #[test]
    fn random_deletions_on_grid() {
        let g = generate::grid(16, 16);
        let mut s = DynamicSubgraph::full(&g);
        let mut shadow: Vec<BTreeSet<Vertex>> =
            (0..=g.n()).map(|u| if u == 0 { BTreeSet::new() } else { g.neighbors(u as Vertex).iter().copied().collect() }).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..600 {
            let u = rng.gen_range(1..=g.n() as Vertex);
            let i = rng.gen_range(0..g.degree(u));
            let v = g.neighbor(u, i);
            if rng.gen_bool(0.8) {
                let _ = s.delete_arc(u, i);
                shadow[u as usize].remove(&v);
            } else {
                s.insert_arc(u, i);
                shadow[u as usize].insert(v);
            }
        }
        for u in g.vertices() {
            assert!(s.neighbors(u).eq(shadow[u as usize].iter().copied()));
            assert_eq!(s.is_nonisolated(u), !shadow[u as usize].is_empty());
        }
    }
}
