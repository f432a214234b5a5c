use crate::{Error, Result, Vertex};

/// Immutable simple undirected graph in adjacency-array form.
///
/// Vertices are `1..=n`. Each vertex's neighbours are sorted ascending. For
/// arc `(u, i)` leading to `v`, `cross(u, i)` is the index `j` with
/// `neighbor(v, j) == u`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StaticGraph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    cross: Vec<u32>,
}

impl StaticGraph {
    /// Builds a simple graph from an edge list. Order and orientation of the
    /// pairs do not matter; self-loops and repeated edges are rejected.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut degree = vec![0usize; n + 1];
        for &(u, v) in edges {
            for x in [u, v] {
                if x == 0 || x as usize > n {
                    return Err(Error::InvalidArgument(format!("vertex {x} outside 1..={n}")));
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for u in 1..=n {
            offsets[u] = offsets[u - 1] + degree[u];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0 as Vertex; offsets[n]];
        for &(u, v) in edges {
            targets[fill[u as usize - 1]] = v;
            fill[u as usize - 1] += 1;
            targets[fill[v as usize - 1]] = u;
            fill[v as usize - 1] += 1;
        }
        for u in 1..=n {
            let list = &mut targets[offsets[u - 1]..offsets[u]];
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u as Vertex, w[0]);
                return Err(Error::MultiEdge(a.min(b), a.max(b)));
            }
        }
        let mut g = Self {
            offsets,
            targets,
            cross: Vec::new(),
        };
        g.build_cross_pointers();
        Ok(g)
    }

    fn build_cross_pointers(&mut self) {
        let n = self.n();
        self.cross = vec![0; self.targets.len()];
        // Visiting u in increasing order, the arcs into v arrive in increasing
        // order of u, which is exactly v's sorted adjacency order.
        let mut next = vec![0u32; n + 1];
        for u in 1..=n as Vertex {
            for i in 0..self.degree(u) {
                let v = self.neighbor(u, i);
                let j = next[v as usize];
                next[v as usize] += 1;
                self.cross[self.offsets[u as usize - 1] + i] = j;
            }
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn degree(&self, u: Vertex) -> usize {
        let u = u as usize;
        self.offsets[u] - self.offsets[u - 1]
    }

    pub fn max_degree(&self) -> usize {
        (1..=self.n() as Vertex).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    #[inline]
    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        let u = u as usize;
        &self.targets[self.offsets[u - 1]..self.offsets[u]]
    }

    #[inline]
    pub fn neighbor(&self, u: Vertex, i: usize) -> Vertex {
        self.targets[self.offsets[u as usize - 1] + i]
    }

    /// Index of the reverse arc inside the neighbour's adjacency array.
    #[inline]
    pub fn cross(&self, u: Vertex, i: usize) -> usize {
        self.cross[self.offsets[u as usize - 1] + i] as usize
    }

    /// Global 0-based identifier of arc `(u, i)`, in `0..2m`.
    #[inline]
    pub fn arc_id(&self, u: Vertex, i: usize) -> usize {
        self.offsets[u as usize - 1] + i
    }

    /// Position of `v` in `u`'s adjacency array.
    #[inline]
    pub fn arc_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.neighbors(u).binary_search(&v).ok()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.arc_index(u, v).is_some()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n() as Vertex
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices()
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Connected-component id per vertex (index 0 unused) and the component count.
    pub fn components(&self) -> (Vec<u32>, usize) {
        let n = self.n();
        let mut comp = vec![0u32; n + 1];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 1..=n as Vertex {
            if comp[s as usize] != 0 {
                continue;
            }
            count += 1;
            comp[s as usize] = count as u32;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if comp[v as usize] == 0 {
                        comp[v as usize] = count as u32;
                        stack.push(v);
                    }
                }
            }
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    pub fn ensure_connected(&self) -> Result<()> {
        let (_, components) = self.components();
        if components > 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(())
    }

    /// Subgraph induced by `vertices` (sorted, distinct), relabelled `1..=k`
    /// in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> StaticGraph {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut edges = Vec::new();
        for (a, &u) in vertices.iter().enumerate() {
            for &v in self.neighbors(u) {
                if u < v {
                    if let Ok(b) = vertices.binary_search(&v) {
                        edges.push((a as Vertex + 1, b as Vertex + 1));
                    }
                }
            }
        }
        StaticGraph::from_edges(vertices.len(), &edges).expect("induced subgraph of a simple graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> StaticGraph {
        StaticGraph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap()
    }

    #[test]
    fn cycle_cross_pointers() {
        let g = c4();
        assert_eq!((g.n(), g.m()), (4, 4));
        for u in g.vertices() {
            for i in 0..g.degree(u) {
                let v = g.neighbor(u, i);
                let j = g.cross(u, i);
                assert_eq!(g.neighbor(v, j), u);
                assert_eq!(g.cross(v, j), i);
            }
        }
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(StaticGraph::from_edges(3, &[(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(
            StaticGraph::from_edges(3, &[(1, 2), (2, 1)]),
            Err(Error::MultiEdge(1, 2))
        ));
        assert!(StaticGraph::from_edges(3, &[(1, 4)]).is_err());
    }

    #[test]
    fn components_and_induced() {
        let g = StaticGraph::from_edges(5, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(g.components().1, 3);
        assert!(matches!(g.ensure_connected(), Err(Error::Disconnected { components: 3 })));
        let h = c4().induced(&[1, 2, 3]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(1, 2), (2, 3)]);
    }
}
