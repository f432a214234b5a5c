//! Cloud partition: bounded BFS clouds, their types, and the non-border
//! subgraph.

use std::fmt;

use crate::graph::{DynamicSubgraph, StaticGraph};
use crate::succinct::{bit_width, ceil_log2, BitBudget, BitVec, IntVec, SpaceUsage};
use crate::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CloudType {
    Big,
    Leaf,
    Bridge,
    Critical,
    PhiBridge,
    PhiCritical,
    /// Small cloud with no adjacent big cloud; only possible when the whole
    /// component is smaller than the cap.
    Isolated,
}

impl CloudType {
    pub fn as_str(self) -> &'static str {
        match self {
            CloudType::Big => "big",
            CloudType::Leaf => "leaf",
            CloudType::Bridge => "bridge",
            CloudType::Critical => "critical",
            CloudType::PhiBridge => "phi_bridge",
            CloudType::PhiCritical => "phi_critical",
            CloudType::Isolated => "isolated",
        }
    }

    pub fn is_small(self) -> bool {
        self != CloudType::Big
    }
}

impl fmt::Display for CloudType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Cap `⌈c · log₂ n⌉`, at least 1.
pub fn cloud_cap(n: usize, c: f64) -> usize {
    ((c * (n.max(1) as f64).log2()).ceil() as usize).max(1)
}

/// Per-type cloud counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct CloudCounts {
    pub big: usize,
    pub leaf: usize,
    pub bridge: usize,
    pub critical: usize,
    pub phi_bridge: usize,
    pub phi_critical: usize,
    pub isolated: usize,
}

impl CloudCounts {
    pub fn total(&self) -> usize {
        self.big + self.leaf + self.bridge + self.critical + self.phi_bridge + self.phi_critical + self.isolated
    }
}

/// Partition of the vertices into connected clouds of size at most `s`.
///
/// Type information lives in one bitvector per type; the clouds themselves
/// are the connected components of the non-border subgraph.
#[derive(Clone, Debug)]
pub struct CloudPartition<'g> {
    graph: &'g StaticGraph,
    cap: usize,
    phi: Option<usize>,
    big: BitVec,
    small: BitVec,
    leaf: BitVec,
    bridge: BitVec,
    critical: BitVec,
    phi_bridge: BitVec,
    phi_critical: BitVec,
    start: BitVec,
    inner: DynamicSubgraph<'g>,
}

/// Reusable marks for cloud traversals.
#[derive(Clone, Debug)]
pub struct CloudScratch {
    marks: BitVec,
    queue: Vec<Vertex>,
}

impl CloudScratch {
    pub fn new(n: usize) -> Self {
        Self {
            marks: BitVec::new(n + 1),
            queue: Vec::new(),
        }
    }
}

impl<'g> CloudPartition<'g> {
    /// Planar classification with cap `⌈c · log₂ n⌉`.
    pub fn build(graph: &'g StaticGraph, c: f64) -> Self {
        Self::build_with_cap(graph, cloud_cap(graph.n(), c))
    }

    pub fn build_with_cap(graph: &'g StaticGraph, cap: usize) -> Self {
        Self::build_budgeted(graph, cap, None, &mut BitBudget::new())
    }

    /// Builds the partition and classifies small clouds, in φ-mode when `phi`
    /// is given. Auxiliary bits are charged to `budget` under `cloudpart.*`.
    pub fn build_budgeted(graph: &'g StaticGraph, cap: usize, phi: Option<usize>, budget: &mut BitBudget) -> Self {
        assert!(cap >= 1);
        let n = graph.n();
        let mut p = Self {
            graph,
            cap,
            phi: None,
            big: BitVec::new(n + 1),
            small: BitVec::new(n + 1),
            leaf: BitVec::new(n + 1),
            bridge: BitVec::new(n + 1),
            critical: BitVec::new(n + 1),
            phi_bridge: BitVec::new(n + 1),
            phi_critical: BitVec::new(n + 1),
            start: BitVec::new(n + 1),
            inner: DynamicSubgraph::full(graph),
        };
        budget.charge("cloudpart.bitvectors", 8 * (n + 1));
        budget.charge("cloudpart.nonborder", p.inner.bits());

        let mut visited = BitVec::new(n + 1);
        // a queue of at most `cap` labels, allocated once
        let queue_bits = cap * bit_width(n as u64);
        budget.charge("cloudpart.queue", queue_bits + n + 1);
        let mut queue: Vec<Vertex> = Vec::with_capacity(cap);
        let mut members: Vec<Vertex> = Vec::with_capacity(cap);
        let mut next_root = 1usize;
        while next_root <= n {
            if visited.get(next_root) {
                next_root += 1;
                continue;
            }
            let root = next_root as Vertex;
            p.start.set(root as usize, true);
            visited.set(root as usize, true);
            members.clear();
            members.push(root);
            queue.clear();
            queue.push(root);
            let mut head = 0;
            'bfs: while head < queue.len() && members.len() < cap {
                let u = queue[head];
                head += 1;
                for &v in graph.neighbors(u) {
                    if !visited.get(v as usize) {
                        visited.set(v as usize, true);
                        members.push(v);
                        queue.push(v);
                        if members.len() == cap {
                            break 'bfs;
                        }
                    }
                }
            }
            if members.len() == cap {
                for &u in &members {
                    p.big.set(u as usize, true);
                }
                // border edges of a big cloud leave the non-border subgraph
                for &u in &members {
                    for (i, &v) in graph.neighbors(u).iter().enumerate() {
                        if (!p.big.get(v as usize) || !members.contains(&v)) && p.inner.contains_arc(u, i) {
                            p.inner.delete_edge(u, i);
                        }
                    }
                }
            } else {
                for &u in &members {
                    p.small.set(u as usize, true);
                }
            }
        }
        budget.release("cloudpart.queue", queue_bits + n + 1);

        match phi {
            Some(phi) => p.classify_phi_budgeted(phi, budget),
            None => p.classify_small_budgeted(budget),
        }
        p
    }

    /// Leaf/bridge/critical classification of small clouds.
    pub fn classify_small(&mut self) {
        self.classify_small_budgeted(&mut BitBudget::new());
    }

    fn classify_small_budgeted(&mut self, budget: &mut BitBudget) {
        self.phi = None;
        self.classify(3, budget);
    }

    /// φ-mode classification: small clouds adjacent to `3..φ` big clouds are
    /// φ-bridges, to `≥ φ` φ-critical. With `φ = 3` this coincides with the
    /// planar classification (φ-critical in place of critical).
    pub fn classify_phi(&mut self, phi: usize) {
        self.classify_phi_budgeted(phi, &mut BitBudget::new());
    }

    fn classify_phi_budgeted(&mut self, phi: usize, budget: &mut BitBudget) {
        assert!(phi >= 3, "φ must be at least 3");
        self.phi = Some(phi);
        self.classify(phi, budget);
    }

    fn classify(&mut self, limit: usize, budget: &mut BitBudget) {
        let n = self.graph.n();
        for bv in [&mut self.leaf, &mut self.bridge, &mut self.critical, &mut self.phi_bridge, &mut self.phi_critical] {
            bv.clear();
        }
        // adjacent-big-cloud counter per small vertex, saturating at `limit`
        let mut count = IntVec::with_max(n + 1, limit as u64);
        let mut discovered = BitVec::new(n + 1);
        let transient = count.bits() + discovered.bits() + 2 * self.cap * bit_width(n as u64);
        budget.charge("cloudpart.classify", transient);

        let mut scratch = CloudScratch::new(0);
        let mut cloud = Vec::with_capacity(self.cap);
        let mut small_cloud = Vec::new();
        let mut touched: Vec<Vertex> = Vec::new();
        for r in 1..=n {
            if !(self.start.get(r) && self.big.get(r)) {
                continue;
            }
            self.cloud_into(r as Vertex, &mut cloud, &mut scratch);
            touched.clear();
            for &u in &cloud {
                for &w in self.graph.neighbors(u) {
                    let wi = w as usize;
                    if !self.small.get(wi) || discovered.get(wi) || count.get(wi) as usize >= limit {
                        continue;
                    }
                    self.cloud_into(w, &mut small_cloud, &mut scratch);
                    let c = count.get(wi) + 1;
                    for &x in &small_cloud {
                        discovered.set(x as usize, true);
                        count.set(x as usize, c);
                        touched.push(x);
                    }
                }
            }
            for &x in &touched {
                discovered.set(x as usize, false);
            }
        }
        for v in 1..=n {
            if !self.small.get(v) {
                continue;
            }
            let c = count.get(v) as usize;
            match (c, self.phi) {
                (0, _) => {}
                (1, _) => self.leaf.set(v, true),
                (2, _) => self.bridge.set(v, true),
                (_, None) => self.critical.set(v, true),
                (c, Some(phi)) if c >= phi => self.phi_critical.set(v, true),
                (_, Some(_)) => self.phi_bridge.set(v, true),
            }
        }
        budget.release("cloudpart.classify", transient);
    }

    #[inline]
    pub fn graph(&self) -> &'g StaticGraph {
        self.graph
    }

    /// Cloud-size cap `s`.
    #[inline]
    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn phi(&self) -> Option<usize> {
        self.phi
    }

    pub fn cloud_type(&self, v: Vertex) -> CloudType {
        let v = v as usize;
        if self.big.get(v) {
            CloudType::Big
        } else if self.leaf.get(v) {
            CloudType::Leaf
        } else if self.bridge.get(v) {
            CloudType::Bridge
        } else if self.critical.get(v) {
            CloudType::Critical
        } else if self.phi_bridge.get(v) {
            CloudType::PhiBridge
        } else if self.phi_critical.get(v) {
            CloudType::PhiCritical
        } else {
            CloudType::Isolated
        }
    }

    #[inline]
    pub fn is_big(&self, v: Vertex) -> bool {
        self.big.get(v as usize)
    }

    #[inline]
    pub fn is_small(&self, v: Vertex) -> bool {
        self.small.get(v as usize)
    }

    /// True for clouds represented by their own node in the minor.
    #[inline]
    pub fn is_singular(&self, v: Vertex) -> bool {
        matches!(
            self.cloud_type(v),
            CloudType::Big | CloudType::Critical | CloudType::PhiCritical | CloudType::Isolated
        )
    }

    /// True iff `v` was the BFS root of its cloud, which is also its lowest label.
    #[inline]
    pub fn is_start(&self, v: Vertex) -> bool {
        self.start.get(v as usize)
    }

    pub fn starts(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.start.ones().map(|v| v as Vertex)
    }

    /// True iff arc `(v, k)` joins two different clouds.
    #[inline]
    pub fn border(&self, v: Vertex, k: usize) -> bool {
        !self.inner.contains_arc(v, k)
    }

    /// Non-border subgraph; its components are the clouds.
    pub fn nonborder(&self) -> &DynamicSubgraph<'g> {
        &self.inner
    }

    /// Vertices of the cloud containing `v`, in BFS order from `v`.
    pub fn cloud(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.cap);
        let mut queue_head = 0;
        out.push(v);
        while queue_head < out.len() {
            let u = out[queue_head];
            queue_head += 1;
            for w in self.inner.neighbors(u) {
                if !out.contains(&w) {
                    out.push(w);
                }
            }
        }
        out
    }

    /// Like [`cloud`](Self::cloud), writing into `out`. With a scratch sized
    /// for the graph the traversal is linear in the cloud size; an empty
    /// scratch falls back to membership scans over `out`.
    pub fn cloud_into(&self, v: Vertex, out: &mut Vec<Vertex>, scratch: &mut CloudScratch) {
        out.clear();
        if scratch.marks.len() <= self.graph.n() {
            out.extend(self.cloud(v));
            return;
        }
        scratch.queue.clear();
        out.push(v);
        scratch.marks.set(v as usize, true);
        let mut head = 0;
        while head < out.len() {
            let u = out[head];
            head += 1;
            for w in self.inner.neighbors(u) {
                if !scratch.marks.get(w as usize) {
                    scratch.marks.set(w as usize, true);
                    out.push(w);
                }
            }
        }
        for &u in out.iter() {
            scratch.marks.set(u as usize, false);
        }
    }

    /// Lowest label of `v`'s cloud, used as its identifier.
    pub fn cloud_id(&self, v: Vertex) -> Vertex {
        if self.is_start(v) {
            return v;
        }
        self.cloud(v).into_iter().min().unwrap()
    }

    /// Cloud identifier per vertex (index 0 unused). Test and output helper;
    /// costs `n log n` bits.
    pub fn cloud_map(&self) -> Vec<Vertex> {
        let n = self.graph.n();
        let mut map = vec![0 as Vertex; n + 1];
        let mut scratch = CloudScratch::new(n);
        let mut cloud = Vec::new();
        for r in self.starts() {
            self.cloud_into(r, &mut cloud, &mut scratch);
            for &u in &cloud {
                map[u as usize] = r;
            }
        }
        map
    }

    pub fn counts(&self) -> CloudCounts {
        let mut c = CloudCounts::default();
        for r in self.starts() {
            match self.cloud_type(r) {
                CloudType::Big => c.big += 1,
                CloudType::Leaf => c.leaf += 1,
                CloudType::Bridge => c.bridge += 1,
                CloudType::Critical => c.critical += 1,
                CloudType::PhiBridge => c.phi_bridge += 1,
                CloudType::PhiCritical => c.phi_critical += 1,
                CloudType::Isolated => c.isolated += 1,
            }
        }
        c
    }

    /// `vertex,cloud_id,type` rows with a header line.
    pub fn to_csv(&self) -> String {
        let map = self.cloud_map();
        let mut s = String::from("vertex,cloud_id,type\n");
        for v in self.graph.vertices() {
            s.push_str(&format!("{v},{},{}\n", map[v as usize], self.cloud_type(v)));
        }
        s
    }

    /// Bits of the persistent structure: type bitvectors and the non-border
    /// subgraph.
    pub fn structure_bits(&self) -> usize {
        8 * (self.graph.n() + 1) + self.inner.bits()
    }

    /// `⌈log₂ n⌉`, the pointer width used by dependent structures.
    pub fn label_bits(&self) -> usize {
        ceil_log2(self.graph.n() + 1)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::generate;

    fn sorted(mut v: Vec<Vertex>) -> Vec<Vertex> {
        v.sort_unstable();
        v
    }

    #[test]
    fn path8_fixture() {
        let g = generate::path(8);
        let p = CloudPartition::build(&g, 1.0);
        assert_eq!(p.cap(), 3);
        assert_eq!(sorted(p.cloud(2)), vec![1, 2, 3]);
        assert_eq!(sorted(p.cloud(5)), vec![4, 5, 6]);
        assert_eq!(sorted(p.cloud(8)), vec![7, 8]);
        assert_eq!(p.cloud_type(7), CloudType::Leaf);
        assert!(p.is_small(7));
        assert_eq!(p.counts().big, 2);
        let i = g.arc_index(3, 4).unwrap();
        assert!(p.border(3, i));
        assert!(!p.border(1, 0));
    }

    #[test]
    fn star_fixture() {
        let g = generate::star(21);
        let p = CloudPartition::build(&g, 1.0);
        assert_eq!(p.cap(), 5);
        assert_eq!(sorted(p.cloud(1)), vec![1, 2, 3, 4, 5]);
        let c = p.counts();
        assert_eq!((c.big, c.leaf, c.total()), (1, 16, 17));
        for v in 6..=21 {
            assert_eq!(p.cloud(v), vec![v]);
            assert_eq!(p.cloud_type(v), CloudType::Leaf);
        }
    }

    #[test]
    fn tiny_graph_is_one_small_cloud() {
        let g = generate::path(4);
        let p = CloudPartition::build_with_cap(&g, 10);
        assert_eq!(sorted(p.cloud(1)), vec![1, 2, 3, 4]);
        assert_eq!(p.counts().isolated, 1);
        assert_eq!(p.counts().total(), 1);
    }

    #[test]
    fn path_bridge() {
        // path 1-2-3-7-6-5-4 with s = 3: the middle vertex is labelled last
        let g = StaticGraph::from_edges(7, &[(1, 2), (2, 3), (3, 7), (7, 6), (6, 5), (5, 4)]).unwrap();
        let p = CloudPartition::build_with_cap(&g, 3);
        assert_eq!(sorted(p.cloud(1)), vec![1, 2, 3]);
        assert_eq!(sorted(p.cloud(4)), vec![4, 5, 6]);
        assert_eq!(p.cloud_type(7), CloudType::Bridge);
    }

    /// Spider whose arms are big clouds hanging off a centre singleton.
    pub(crate) fn spider(arms: usize, s: usize) -> StaticGraph {
        // arm vertices first so that they become big clouds before the centre
        let n = arms * s + 1;
        let centre = n as Vertex;
        let mut edges = Vec::new();
        for a in 0..arms {
            let base = (a * s) as Vertex;
            for i in 1..s as Vertex {
                edges.push((base + i, base + i + 1));
            }
            edges.push((base + s as Vertex, centre));
        }
        StaticGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn spider_centre_types() {
        let g = spider(3, 4);
        let p = CloudPartition::build_with_cap(&g, 4);
        assert_eq!(p.cloud_type(13), CloudType::Critical);
        let mut q = p.clone();
        q.classify_phi(4);
        assert_eq!(q.cloud_type(13), CloudType::PhiBridge);
        let g4 = spider(4, 4);
        let mut p4 = CloudPartition::build_with_cap(&g4, 4);
        p4.classify_phi(4);
        assert_eq!(p4.cloud_type(17), CloudType::PhiCritical);
        p4.classify_phi(3);
        assert_eq!(p4.cloud_type(17), CloudType::PhiCritical);
        assert_eq!(p4.counts().phi_bridge, 0);
    }

    #[test]
    fn border_matches_cloud_map() {
        let g = generate::random_planar(30, 30, 0.5, 1);
        let p = CloudPartition::build(&g, 1.0);
        let map = p.cloud_map();
        for u in g.vertices() {
            for (k, &v) in g.neighbors(u).iter().enumerate() {
                assert_eq!(p.border(u, k), map[u as usize] != map[v as usize]);
            }
        }
    }

    #[test]
    fn csv_rows() {
        let g = generate::path(8);
        let csv = CloudPartition::build(&g, 1.0).to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "vertex,cloud_id,type");
        assert_eq!(lines[8], "8,7,leaf");
        assert_eq!(lines[4], "4,4,big");
    }
}
