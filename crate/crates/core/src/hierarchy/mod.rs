//! Two-level decomposition of `G` into mini graphs (pieces of weight below
//! `log₂^δ n`, cut along separators of the minor) and micro graphs (pieces of
//! at most `t` vertices, cut inside each mini graph), plus a compact encoding
//! that answers adjacency, degree and neighbourhood queries from lookup tables.
//!
//! Every edge of `G` is owned by exactly one mini graph and, inside it, by
//! exactly one micro graph. A separator's own edges stay with the `A` side.

mod encoding;
mod table;
#[cfg(test)]
mod tests;

use serde::Serialize;

pub use encoding::{EncodingStats, Neighbors, SuccinctEncoding, DEGREE_LOOKUPS};
pub use table::{pair_bit, MicroTable, DENSE_LIMIT};

use crate::graph::StaticGraph;
use crate::minor::{NodeId, StructureMinor};
use crate::separator::{find_separator, meta_clouds, SeparatorOptions, Side, WeightedGraph};
use crate::succinct::BitVec;
use crate::{Error, Result, Vertex};

/// Default exponent of the mini-graph weight threshold.
pub const DEFAULT_DELTA: u32 = 6;

#[derive(Clone, Debug)]
pub struct HierarchyOptions {
    pub delta: u32,
    /// Micro-graph vertex cap; `None` picks [`default_micro_cap`].
    pub micro_cap: Option<usize>,
    pub separator: SeparatorOptions,
}

impl Default for HierarchyOptions {
    fn default() -> Self {
        Self {
            delta: DEFAULT_DELTA,
            micro_cap: None,
            separator: SeparatorOptions::default(),
        }
    }
}

impl HierarchyOptions {
    pub fn micro_cap_for(&self, n: usize) -> usize {
        self.micro_cap.unwrap_or_else(|| default_micro_cap(n))
    }
}

/// `max(4, ⌊log₂ n / 4⌋)`, at most 8.
pub fn default_micro_cap(n: usize) -> usize {
    let log = (n.max(2) as f64).log2();
    ((log / 4.0).floor() as usize).clamp(4, 8)
}

/// Mini graphs are emitted once the piece weight drops below `log₂^δ n`.
pub fn mini_threshold(n: usize, delta: u32) -> f64 {
    (n.max(1) as f64).log2().powi(delta as i32)
}

/// A piece of the decomposition: sorted vertex labels of the parent graph,
/// the induced subgraph on them, and which of its edges the piece owns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    vertices: Vec<Vertex>,
    graph: StaticGraph,
    owned: BitVec,
    duplicate: BitVec,
    depth: usize,
}

impl Piece {
    fn new(parent: &StaticGraph, vertices: Vec<Vertex>, depth: usize, owner: impl Fn(Vertex, Vertex) -> bool) -> Self {
        let graph = parent.induced(&vertices);
        let mut owned = BitVec::new(2 * graph.m());
        for (a, &x) in vertices.iter().enumerate() {
            let u = a as Vertex + 1;
            for (i, &v) in graph.neighbors(u).iter().enumerate() {
                if owner(x, vertices[v as usize - 1]) {
                    owned.set(graph.arc_id(u, i), true);
                }
            }
        }
        let duplicate = BitVec::new(vertices.len());
        Self {
            vertices,
            graph,
            owned,
            duplicate,
            depth,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Parent-graph labels, sorted.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Parent label of local vertex `u` (1-based).
    #[inline]
    pub fn label(&self, u: Vertex) -> Vertex {
        self.vertices[u as usize - 1]
    }

    /// Local label of parent vertex `x`.
    pub fn local(&self, x: Vertex) -> Option<Vertex> {
        self.vertices.binary_search(&x).ok().map(|i| i as Vertex + 1)
    }

    /// Induced subgraph over local labels `1..=len`.
    pub fn graph(&self) -> &StaticGraph {
        &self.graph
    }

    #[inline]
    pub fn is_owned(&self, u: Vertex, i: usize) -> bool {
        self.owned.get(self.graph.arc_id(u, i))
    }

    /// Owned edges as local pairs `(u, v)`, `u < v`.
    pub fn owned_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.graph.vertices().flat_map(move |u| {
            self.graph
                .neighbors(u)
                .iter()
                .enumerate()
                .filter(move |&(i, &v)| u < v && self.is_owned(u, i))
                .map(move |(_, &v)| (u, v))
        })
    }

    /// Subgraph of owned edges over local labels.
    pub fn owned_graph(&self) -> StaticGraph {
        let edges: Vec<_> = self.owned_edges().collect();
        StaticGraph::from_edges(self.len(), &edges).expect("subgraph of a simple graph")
    }

    /// Whether local vertex `u` also occurs in another piece at this level.
    #[inline]
    pub fn is_duplicate(&self, u: Vertex) -> bool {
        self.duplicate.get(u as usize - 1)
    }

    /// Recursion depth at which the piece was emitted.
    pub fn depth(&self) -> usize {
        self.depth
    }
}

/// First-level piece; labels are vertices of `G`.
pub type MiniGraph = Piece;

/// Second-level piece; labels are local vertices of its mini graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MicroGraph {
    pub piece: Piece,
    /// Upper-triangular adjacency mask of the owned edges.
    pub code: u64,
}

impl MicroGraph {
    fn new(piece: Piece) -> Self {
        let code = piece.owned_edges().fold(0u64, |m, (u, v)| m | 1 << pair_bit(u as usize - 1, v as usize - 1));
        Self { piece, code }
    }
}

/// Recursion state: a node subset of a weighted base graph, the base edges
/// still present among them, and which nodes still own their internal edges.
#[derive(Clone, Debug)]
struct Instance {
    nodes: Vec<usize>,
    edges: Vec<(usize, usize)>,
    owns: Vec<bool>,
    depth: usize,
}

impl Instance {
    fn root(g: &WeightedGraph) -> Self {
        Self {
            nodes: (0..g.len()).collect(),
            edges: g.edges().collect(),
            owns: vec![true; g.len()],
            depth: 0,
        }
    }

    fn weighted(&self, weights: &[u64]) -> WeightedGraph {
        WeightedGraph::new(self.nodes.iter().map(|&v| weights[v]).collect(), &self.edges)
    }

    /// Keeps the local nodes with `keep` set; edges survive when `edge_ok` holds.
    fn restrict(&self, keep: impl Fn(usize) -> bool, edge_ok: impl Fn(usize, usize) -> bool, owns: impl Fn(usize) -> bool) -> Self {
        let mut map = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        let mut new_owns = Vec::new();
        for (i, &v) in self.nodes.iter().enumerate() {
            if keep(i) {
                map[i] = nodes.len();
                nodes.push(v);
                new_owns.push(owns(i));
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| map[a] != usize::MAX && map[b] != usize::MAX && edge_ok(a, b))
            .map(|&(a, b)| (map[a], map[b]))
            .collect();
        Self {
            nodes,
            edges,
            owns: new_owns,
            depth: self.depth + 1,
        }
    }

    /// Children `F′[A ∪ S]` (keeping `S`–`S` edges) and `F′[B ∪ S]`.
    fn split(&self, sides: &[Side]) -> (Self, Self) {
        let a = self.restrict(|i| sides[i] != Side::B, |_, _| true, |i| self.owns[i]);
        let b = self.restrict(
            |i| sides[i] != Side::A,
            |x, y| sides[x] != Side::S || sides[y] != Side::S,
            |i| self.owns[i] && sides[i] != Side::S,
        );
        (a, b)
    }

    fn without(&self, v: usize) -> Self {
        let mut next = self.restrict(|i| i != v, |_, _| true, |i| self.owns[i]);
        next.depth = self.depth;
        next
    }
}

fn heaviest(g: &WeightedGraph) -> Option<usize> {
    let total = g.total_weight();
    let v = (0..g.len()).max_by_key(|&v| (g.weight(v), std::cmp::Reverse(v)))?;
    (3 * g.weight(v) > total).then_some(v)
}

/// Streams the mini graphs of `G` in emission order (`A` side first).
pub fn for_each_mini_graph(
    minor: &StructureMinor,
    opts: &HierarchyOptions,
    mut emit: impl FnMut(MiniGraph) -> Result<()>,
) -> Result<()> {
    let g = minor.partition().graph();
    let threshold = mini_threshold(g.n(), opts.delta);
    let f = minor.to_weighted();
    let weights = f.weights().to_vec();
    let node_of = minor.node_map();
    let sep_opts = SeparatorOptions {
        proper: true,
        ..opts.separator
    };
    let mut local = vec![usize::MAX; f.len()];
    let mut stack = vec![Instance::root(&f)];
    while let Some(inst) = stack.pop() {
        if inst.nodes.is_empty() {
            continue;
        }
        let wg = inst.weighted(&weights);
        for (i, &v) in inst.nodes.iter().enumerate() {
            local[v] = i;
        }
        let base = |x: Vertex| node_of[x as usize] as usize - 1;
        let emit_whole = |emit: &mut dyn FnMut(MiniGraph) -> Result<()>| {
            let mut vertices = Vec::new();
            for &v in &inst.nodes {
                minor.expand_into(v as NodeId + 1, &mut vertices);
            }
            vertices.sort_unstable();
            emit(Piece::new(g, vertices, inst.depth, |x, y| {
                let (a, b) = (local[base(x)], local[base(y)]);
                if a == b {
                    inst.owns[a]
                } else {
                    wg.has_edge(a, b)
                }
            }))
        };
        if (wg.total_weight() as f64) < threshold {
            emit_whole(&mut emit)?;
        } else if let Some(h) = heaviest(&wg) {
            pack_heavy(minor, g, &inst, &wg, h, threshold, &node_of, &mut emit)?;
            stack.push(inst.without(h));
        } else {
            let sep = find_separator(&wg, &sep_opts)?;
            if sep.degenerate || !sep.is_proper() {
                emit_whole(&mut emit)?;
            } else {
                let (a, b) = inst.split(&sep.sides);
                stack.push(b);
                stack.push(a);
            }
        }
        for &v in &inst.nodes {
            local[v] = usize::MAX;
        }
    }
    Ok(())
}

/// Emits the clouds of heavy node `h` in greedy packs, each together with the
/// clouds of `h`'s neighbours; the packs own every edge incident to `h`.
#[allow(clippy::too_many_arguments)]
fn pack_heavy(
    minor: &StructureMinor,
    g: &StaticGraph,
    inst: &Instance,
    wg: &WeightedGraph,
    h: usize,
    threshold: f64,
    node_of: &[NodeId],
    emit: &mut impl FnMut(MiniGraph) -> Result<()>,
) -> Result<()> {
    let heavy = inst.nodes[h] as NodeId + 1;
    let mut ring = Vec::new();
    for &u in wg.neighbors(h) {
        minor.expand_into(inst.nodes[u] as NodeId + 1, &mut ring);
    }
    ring.sort_unstable();
    let owns = inst.owns[h];
    let flush = |pack: &mut Vec<Vertex>, emit: &mut dyn FnMut(MiniGraph) -> Result<()>| {
        let mut vertices: Vec<Vertex> = ring.iter().copied().chain(pack.drain(..)).collect();
        vertices.sort_unstable();
        emit(Piece::new(g, vertices, inst.depth, |x, y| {
            match (node_of[x as usize] == heavy, node_of[y as usize] == heavy) {
                (true, true) => owns,
                (false, false) => false,
                _ => true,
            }
        }))
    };
    let mut pack: Vec<Vertex> = Vec::new();
    for cloud in meta_clouds(minor, heavy) {
        if !pack.is_empty() && (ring.len() + pack.len() + cloud.len()) as f64 >= threshold {
            flush(&mut pack, emit)?;
        }
        pack.extend(cloud);
    }
    if !pack.is_empty() {
        flush(&mut pack, emit)?;
    }
    Ok(())
}

/// All mini graphs, with duplicate flags set.
pub fn mini_graphs(minor: &StructureMinor, opts: &HierarchyOptions) -> Result<Vec<MiniGraph>> {
    let mut minis = Vec::new();
    for_each_mini_graph(minor, opts, |m| {
        minis.push(m);
        Ok(())
    })?;
    mark_duplicates(&mut minis, minor.partition().graph().n());
    Ok(minis)
}

fn mark_duplicates(pieces: &mut [Piece], n: usize) {
    let mut count = vec![0u32; n + 1];
    for p in pieces.iter() {
        for &x in &p.vertices {
            count[x as usize] += 1;
        }
    }
    for p in pieces.iter_mut() {
        for (i, &x) in p.vertices.iter().enumerate() {
            p.duplicate.set(i, count[x as usize] > 1);
        }
    }
}

/// Splits a mini graph's owned edges into micro graphs of at most `t` vertices.
pub fn micro_graphs(mini: &MiniGraph, t: usize, opts: &SeparatorOptions) -> Result<Vec<MicroGraph>> {
    let owned = mini.owned_graph();
    let k = owned.n();
    let unit = WeightedGraph::new(vec![1; k], &owned.edges().map(|(a, b)| (a as usize - 1, b as usize - 1)).collect::<Vec<_>>());
    let sep_opts = SeparatorOptions {
        proper: true,
        ..*opts
    };
    let mut micros = Vec::new();
    let mut stack = vec![Instance::root(&unit)];
    while let Some(inst) = stack.pop() {
        if inst.nodes.is_empty() {
            continue;
        }
        let wg = inst.weighted(unit.weights());
        if inst.nodes.len() <= t.max(1) {
            let vertices: Vec<Vertex> = inst.nodes.iter().map(|&v| v as Vertex + 1).collect();
            let piece = Piece::new(&owned, vertices, inst.depth, |x, y| {
                let a = inst.nodes.binary_search(&(x as usize - 1)).expect("member");
                let b = inst.nodes.binary_search(&(y as usize - 1)).expect("member");
                wg.has_edge(a, b)
            });
            micros.push(MicroGraph::new(piece));
            continue;
        }
        let sep = find_separator(&wg, &sep_opts)?;
        if sep.degenerate || !sep.is_proper() {
            return Err(Error::Internal(format!(
                "micro graph of {} vertices exceeds the cap {t} and has no proper separator",
                inst.nodes.len()
            )));
        }
        let (a, b) = inst.split(&sep.sides);
        stack.push(b);
        stack.push(a);
    }
    let mut pieces: Vec<Piece> = micros.iter().map(|m| m.piece.clone()).collect();
    mark_duplicates(&mut pieces, k);
    for (m, p) in micros.iter_mut().zip(pieces) {
        m.piece = p;
    }
    Ok(micros)
}

/// Full two-level decomposition.
#[derive(Clone, Debug)]
pub struct Hierarchy {
    pub n: usize,
    pub delta: u32,
    pub micro_cap: usize,
    pub minis: Vec<MiniGraph>,
    pub micros: Vec<Vec<MicroGraph>>,
}

impl Hierarchy {
    pub fn build(minor: &StructureMinor, opts: &HierarchyOptions) -> Result<Self> {
        let n = minor.partition().graph().n();
        let t = opts.micro_cap_for(n);
        let minis = mini_graphs(minor, opts)?;
        let micros = minis
            .iter()
            .map(|m| micro_graphs(m, t, &opts.separator))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n,
            delta: opts.delta,
            micro_cap: t,
            minis,
            micros,
        })
    }

    pub fn micro_count(&self) -> usize {
        self.micros.iter().map(Vec::len).sum()
    }

    /// Coverage and exactly-once edge ownership at both levels, plus the micro cap.
    pub fn verify(&self, g: &StaticGraph) -> Result<()> {
        check_level(g, &self.minis, "mini")?;
        for (i, (mini, micros)) in self.minis.iter().zip(&self.micros).enumerate() {
            let pieces: Vec<Piece> = micros.iter().map(|m| m.piece.clone()).collect();
            check_level(&mini.owned_graph(), &pieces, &format!("micro (mini {i})"))?;
            if let Some(m) = micros.iter().find(|m| m.piece.len() > self.micro_cap) {
                return Err(Error::Internal(format!("micro graph of {} vertices in mini {i}", m.piece.len())));
            }
        }
        Ok(())
    }
}

/// Checks that `pieces` cover `parent` and own each of its edges exactly once.
pub fn check_level(parent: &StaticGraph, pieces: &[Piece], level: &str) -> Result<()> {
    let mut seen = vec![false; parent.n() + 1];
    let mut owners = vec![0u32; 2 * parent.m()];
    for (k, p) in pieces.iter().enumerate() {
        if p.is_empty() {
            return Err(Error::Internal(format!("{level} piece {k} is empty")));
        }
        for &x in &p.vertices {
            seen[x as usize] = true;
        }
        for (u, v) in p.owned_edges() {
            let (x, y) = (p.label(u), p.label(v));
            let i = parent
                .arc_index(x, y)
                .ok_or_else(|| Error::Internal(format!("{level} piece {k} owns non-edge {x}-{y}")))?;
            owners[parent.arc_id(x, i)] += 1;
        }
    }
    if let Some(x) = parent.vertices().find(|&x| !seen[x as usize]) {
        return Err(Error::Internal(format!("{level} pieces miss vertex {x}")));
    }
    for (x, y) in parent.edges() {
        let c = owners[parent.arc_id(x, parent.arc_index(x, y).expect("edge"))];
        if c != 1 {
            return Err(Error::Internal(format!("{level} edge {x}-{y} owned {c} times")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DuplicateStats {
    pub minis: usize,
    /// Σ occurrences − n.
    pub total: usize,
    /// Non-primary occurrences by the depth of the mini graph holding them.
    pub by_depth: Vec<usize>,
}

/// Duplicate counts; a vertex's primary occurrence is its first mini graph.
pub fn duplicate_stats(minis: &[MiniGraph], n: usize) -> DuplicateStats {
    let mut seen = vec![false; n + 1];
    let mut stats = DuplicateStats {
        minis: minis.len(),
        ..Default::default()
    };
    for m in minis {
        for &x in &m.vertices {
            if std::mem::replace(&mut seen[x as usize], true) {
                stats.total += 1;
                if stats.by_depth.len() <= m.depth {
                    stats.by_depth.resize(m.depth + 1, 0);
                }
                stats.by_depth[m.depth] += 1;
            }
        }
    }
    stats
}
