/// Small undirected node-weighted graph, nodes `0..len`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedGraph {
    weights: Vec<u64>,
    adj: Vec<Vec<usize>>,
}

impl WeightedGraph {
    /// Builds from weights and an edge list; duplicate edges and loops are dropped.
    pub fn new(weights: Vec<u64>, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); weights.len()];
        for &(a, b) in edges {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Self { weights, adj }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    #[inline]
    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, l)| l.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    /// Components of the subgraph induced by nodes with `keep[v]`, each sorted.
    pub fn components_within(&self, keep: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if !keep[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &v in &self.adj[u] {
                    if keep[v] && !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(&vec![true; self.len()]).len() <= 1
    }

    /// Subgraph induced by `nodes` (any order), relabelled by position.
    pub fn induced(&self, nodes: &[usize]) -> WeightedGraph {
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &v) in nodes.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in nodes.iter().enumerate() {
            for &w in &self.adj[v] {
                if pos[w] != usize::MAX && i < pos[w] {
                    edges.push((i, pos[w]));
                }
            }
        }
        WeightedGraph::new(nodes.iter().map(|&v| self.weights[v]).collect(), &edges)
    }

    pub fn is_complete(&self) -> bool {
        self.adj.iter().all(|l| l.len() + 1 == self.len())
    }
}
