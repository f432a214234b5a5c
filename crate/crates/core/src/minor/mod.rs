//! Structure-maintaining minor of a cloud partition.
//!
//! Big, critical and isolated clouds become nodes of their own. Leaf clouds of
//! one big cloud share a meta-leaf node, bridge clouds between one pair of big
//! clouds share a meta-bridge node, and in φ-mode φ-bridge clouds with the same
//! set of big neighbours share a φ-meta-bridge node.

use std::collections::BTreeMap;
use std::fmt;

use crate::cloudpart::{CloudPartition, CloudScratch, CloudType};
use crate::graph::{orient_bounded, DynamicSubgraph, StaticGraph};
use crate::separator::WeightedGraph;
use crate::succinct::{bit_width, BitBudget, BitVec, IndexableDictionary, IntVec, SpaceUsage};
use crate::{Error, Result, Vertex};

/// Node identifier, `1..=|V(F)|`.
pub type NodeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Big,
    Critical,
    Isolated,
    MetaLeaf,
    MetaBridge,
    PhiMetaBridge,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Big => "big",
            NodeKind::Critical => "critical",
            NodeKind::Isolated => "isolated",
            NodeKind::MetaLeaf => "meta_leaf",
            NodeKind::MetaBridge => "meta_bridge",
            NodeKind::PhiMetaBridge => "phi_meta_bridge",
        }
    }

    fn code(self) -> u64 {
        self as u64
    }

    fn from_code(c: u64) -> Self {
        [
            NodeKind::Big,
            NodeKind::Critical,
            NodeKind::Isolated,
            NodeKind::MetaLeaf,
            NodeKind::MetaBridge,
            NodeKind::PhiMetaBridge,
        ][c as usize]
    }

    pub fn is_meta(self) -> bool {
        matches!(self, NodeKind::MetaLeaf | NodeKind::MetaBridge | NodeKind::PhiMetaBridge)
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct MinorCounts {
    pub big: usize,
    pub critical: usize,
    pub isolated: usize,
    pub meta_leaf: usize,
    pub meta_bridge: usize,
    pub phi_meta_bridge: usize,
    pub edges: usize,
    pub max_weight: u64,
}

/// Weighted minor `F` together with everything `expand` needs.
#[derive(Clone, Debug)]
pub struct StructureMinor<'a> {
    partition: &'a CloudPartition<'a>,
    kinds: IntVec,
    weights: IntVec,
    anchors: IntVec,
    adjacency: StaticGraph,
    anchor_marks: IndexableDictionary,
    anchor_nodes: IntVec,
    /// Colour per meta-bridge and φ-meta-bridge node.
    colors: IntVec,
    color_forests: Vec<DynamicSubgraph<'a>>,
    leaf_forest: DynamicSubgraph<'a>,
}

struct MetaGroup {
    kind: NodeKind,
    /// Big nodes the group hangs off, ascending.
    bigs: Vec<NodeId>,
    weight: u64,
    anchor: Vertex,
}

impl<'a> StructureMinor<'a> {
    /// Builds `F` with the planar orientation density 3.
    pub fn build(partition: &'a CloudPartition<'a>) -> Result<Self> {
        Self::build_budgeted(partition, 3, &mut BitBudget::new())
    }

    /// Builds `F`. Meta-bridge spanning trees are assigned to big clouds by a
    /// bounded in-degree orientation of the big-node contact graph with the
    /// given `density`. Bits are charged to `budget` under `minor.*`.
    pub fn build_budgeted(partition: &'a CloudPartition<'a>, density: usize, budget: &mut BitBudget) -> Result<Self> {
        let g = partition.graph();
        let n = g.n();
        let mut scratch = CloudScratch::new(n);
        let mut cloud = Vec::new();
        let mut other = Vec::new();

        // singular nodes, in label order of their lowest vertex
        let mut kinds: Vec<NodeKind> = vec![NodeKind::Big];
        let mut weights: Vec<u64> = vec![0];
        let mut anchors: Vec<Vertex> = vec![0];
        for r in partition.starts() {
            let kind = match partition.cloud_type(r) {
                CloudType::Big => NodeKind::Big,
                CloudType::Critical | CloudType::PhiCritical => NodeKind::Critical,
                CloudType::Isolated => NodeKind::Isolated,
                _ => continue,
            };
            partition.cloud_into(r, &mut cloud, &mut scratch);
            kinds.push(kind);
            weights.push(cloud.len() as u64);
            anchors.push(r);
        }
        let singular = kinds.len() - 1;
        let lookup = AnchorMap::new(n, &anchors[1..], 1);
        budget.charge("minor.construction", lookup.bits() + 3 * (n + 1));

        let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
        let mut leaf_groups: Vec<MetaGroup> = Vec::new();
        let mut bridge_groups: Vec<MetaGroup> = Vec::new();
        let mut phi_groups: BTreeMap<(usize, Vec<NodeId>), MetaGroup> = BTreeMap::new();

        let mut discovered = BitVec::new(n + 1);
        let mut touched: Vec<Vertex> = Vec::new();
        for x in 1..=singular as NodeId {
            if kinds[x as usize] != NodeKind::Big {
                continue;
            }
            partition.cloud_into(anchors[x as usize], &mut cloud, &mut scratch);
            let current = cloud.clone();
            let mut leaf: Option<MetaGroup> = None;
            let mut bridges: BTreeMap<NodeId, MetaGroup> = BTreeMap::new();
            touched.clear();
            for &u in &current {
                for (k, &w) in g.neighbors(u).iter().enumerate() {
                    if !partition.border(u, k) || discovered.get(w as usize) {
                        continue;
                    }
                    partition.cloud_into(w, &mut other, &mut scratch);
                    for &y in &other {
                        discovered.set(y as usize, true);
                        touched.push(y);
                    }
                    let anchor = *other.iter().min().unwrap();
                    let size = other.len() as u64;
                    match partition.cloud_type(w) {
                        CloudType::Big | CloudType::Critical | CloudType::PhiCritical | CloudType::Isolated => {
                            let y = lookup.get(anchor).expect("singular cloud has a node");
                            edges.push((x.min(y), x.max(y)));
                        }
                        CloudType::Leaf => {
                            let grp = leaf.get_or_insert(MetaGroup {
                                kind: NodeKind::MetaLeaf,
                                bigs: vec![x],
                                weight: 0,
                                anchor,
                            });
                            grp.weight += size;
                            grp.anchor = grp.anchor.min(anchor);
                        }
                        CloudType::Bridge => {
                            let bigs = adjacent_bigs(partition, &lookup, &other, &mut scratch);
                            debug_assert_eq!(bigs.len(), 2);
                            let y = if bigs[0] == x { bigs[1] } else { bigs[0] };
                            if y < x {
                                continue;
                            }
                            let grp = bridges.entry(y).or_insert(MetaGroup {
                                kind: NodeKind::MetaBridge,
                                bigs: vec![x, y],
                                weight: 0,
                                anchor,
                            });
                            grp.weight += size;
                            grp.anchor = grp.anchor.min(anchor);
                        }
                        CloudType::PhiBridge => {
                            let bigs = adjacent_bigs(partition, &lookup, &other, &mut scratch);
                            if bigs[0] != x {
                                continue;
                            }
                            let grp = phi_groups.entry((bigs.len(), bigs.clone())).or_insert(MetaGroup {
                                kind: NodeKind::PhiMetaBridge,
                                bigs,
                                weight: 0,
                                anchor,
                            });
                            grp.weight += size;
                            grp.anchor = grp.anchor.min(anchor);
                        }
                    }
                }
            }
            for &y in &touched {
                discovered.set(y as usize, false);
            }
            leaf_groups.extend(leaf);
            bridge_groups.extend(bridges.into_values());
        }

        let groups: Vec<MetaGroup> = leaf_groups
            .into_iter()
            .chain(bridge_groups)
            .chain(phi_groups.into_values())
            .collect();
        for grp in &groups {
            let id = kinds.len() as NodeId;
            kinds.push(grp.kind);
            weights.push(grp.weight);
            anchors.push(grp.anchor);
            for &b in &grp.bigs {
                edges.push((b, id));
            }
        }
        let total_nodes = kinds.len() - 1;
        edges.sort_unstable();
        edges.dedup();
        let adjacency = StaticGraph::from_edges(total_nodes, &edges)?;

        // helpers: head of each meta-bridge edge in an orientation of the
        // big-node contact graph; φ-meta-bridges take the least-loaded big
        let big_index: Vec<u32> = {
            let mut idx = vec![0u32; singular + 1];
            let mut next = 0;
            for x in 1..=singular {
                if kinds[x] == NodeKind::Big {
                    next += 1;
                    idx[x] = next;
                }
            }
            idx
        };
        let big_ids: Vec<NodeId> = (1..=singular as NodeId).filter(|&x| big_index[x as usize] != 0).collect();
        let contact_edges: Vec<(Vertex, Vertex)> = groups
            .iter()
            .filter(|grp| grp.kind == NodeKind::MetaBridge)
            .map(|grp| (big_index[grp.bigs[0] as usize], big_index[grp.bigs[1] as usize]))
            .collect();
        let contact = StaticGraph::from_edges(big_ids.len(), &contact_edges)?;
        let orientation = orient_bounded(&contact, density)?;
        let mut load = vec![0u32; singular + 1];
        let mut helpers: Vec<NodeId> = Vec::with_capacity(groups.len());
        let mut color_tags: Vec<u64> = vec![0; total_nodes + 1];
        for (i, grp) in groups.iter().enumerate() {
            let id = singular + 1 + i;
            let helper = match grp.kind {
                NodeKind::MetaLeaf => grp.bigs[0],
                NodeKind::MetaBridge => {
                    let (a, b) = (big_index[grp.bigs[0] as usize], big_index[grp.bigs[1] as usize]);
                    big_ids[orientation.head(a, b) as usize - 1]
                }
                _ => *grp.bigs.iter().min_by_key(|&&b| (load[b as usize], b)).unwrap(),
            };
            if grp.kind != NodeKind::MetaLeaf {
                color_tags[id] = load[helper as usize] as u64;
                load[helper as usize] += 1;
            }
            helpers.push(helper);
        }
        drop(orientation);
        let color_count = load.iter().copied().max().unwrap_or(0) as usize;

        let mut leaf_forest = DynamicSubgraph::empty(g);
        let mut color_forests: Vec<DynamicSubgraph<'a>> = (0..color_count).map(|_| DynamicSubgraph::empty(g)).collect();
        let mut allowed = BitVec::new(n + 1);
        let mut rejected = BitVec::new(n + 1);
        let mut seen = BitVec::new(n + 1);
        for (i, grp) in groups.iter().enumerate() {
            let id = singular + 1 + i;
            let helper = helpers[i];
            partition.cloud_into(anchors[helper as usize], &mut cloud, &mut scratch);
            let helper_cloud = cloud.clone();
            for &u in &helper_cloud {
                allowed.set(u as usize, true);
            }
            let forest = match grp.kind {
                NodeKind::MetaLeaf => &mut leaf_forest,
                _ => &mut color_forests[color_tags[id] as usize],
            };
            let member_type = member_type(grp.kind);
            let mut marked: Vec<Vertex> = helper_cloud.clone();
            // BFS from the anchor through the helper and the represented clouds
            let mut queue = vec![grp.anchor];
            seen.set(grp.anchor as usize, true);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for (k, &w) in g.neighbors(u).iter().enumerate() {
                    let wi = w as usize;
                    if seen.get(wi) || rejected.get(wi) {
                        continue;
                    }
                    if !allowed.get(wi) {
                        if partition.cloud_type(w) != member_type {
                            continue;
                        }
                        partition.cloud_into(w, &mut other, &mut scratch);
                        let ok = match grp.kind {
                            NodeKind::MetaLeaf => true,
                            _ => adjacent_bigs(partition, &lookup, &other, &mut scratch) == grp.bigs,
                        };
                        for &y in &other {
                            if ok {
                                allowed.set(y as usize, true);
                            } else {
                                rejected.set(y as usize, true);
                            }
                            marked.push(y);
                        }
                        if !ok {
                            continue;
                        }
                    }
                    seen.set(wi, true);
                    forest.insert_arc(u, k);
                    queue.push(w);
                }
            }
            for &y in &marked {
                allowed.set(y as usize, false);
                rejected.set(y as usize, false);
            }
            for &y in &queue {
                seen.set(y as usize, false);
            }
        }
        budget.release("minor.construction", lookup.bits() + 3 * (n + 1));

        let max_weight = weights.iter().copied().max().unwrap_or(0);
        let anchor_map = AnchorMap::new(n, &anchors[1..], 1);
        let mut color_vec = IntVec::with_max(total_nodes + 1, color_count.saturating_sub(1) as u64);
        for (id, &c) in color_tags.iter().enumerate() {
            color_vec.set(id, c);
        }
        let minor = Self {
            partition,
            kinds: {
                let mut v = IntVec::with_max(total_nodes + 1, NodeKind::PhiMetaBridge.code());
                for (i, k) in kinds.iter().enumerate() {
                    v.set(i, k.code());
                }
                v
            },
            weights: {
                let mut v = IntVec::with_max(total_nodes + 1, max_weight);
                for (i, &w) in weights.iter().enumerate() {
                    v.set(i, w);
                }
                v
            },
            anchors: {
                let mut v = IntVec::with_max(total_nodes + 1, n as u64);
                for (i, &a) in anchors.iter().enumerate() {
                    v.set(i, a as u64);
                }
                v
            },
            adjacency,
            anchor_marks: anchor_map.marks,
            anchor_nodes: anchor_map.nodes,
            colors: color_vec,
            color_forests,
            leaf_forest,
        };
        budget.charge("minor.nodes", minor.kinds.bits() + minor.weights.bits() + minor.anchors.bits() + minor.colors.bits());
        budget.charge("minor.adjacency", (minor.adjacency.n() + 1 + 2 * minor.adjacency.m()) * bit_width(total_nodes as u64).max(1));
        budget.charge("minor.anchor_map", minor.anchor_marks.bits() + minor.anchor_nodes.bits());
        budget.charge(
            "minor.forests",
            minor.leaf_forest.bits() + minor.color_forests.iter().map(|f| f.bits()).sum::<usize>(),
        );
        Ok(minor)
    }

    pub fn partition(&self) -> &'a CloudPartition<'a> {
        self.partition
    }

    /// Number of nodes `|V(F)|`.
    #[inline]
    pub fn node_count(&self) -> usize {
        self.adjacency.n()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        1..=self.node_count() as NodeId
    }

    #[inline]
    pub fn kind(&self, u: NodeId) -> NodeKind {
        NodeKind::from_code(self.kinds.get(u as usize))
    }

    #[inline]
    pub fn weight(&self, u: NodeId) -> u64 {
        self.weights.get(u as usize)
    }

    /// Adjacency of `F` as a graph on `1..=|V(F)|`.
    pub fn graph(&self) -> &StaticGraph {
        &self.adjacency
    }

    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        self.adjacency.neighbors(u)
    }

    /// Lowest label among the vertices represented by `u`.
    #[inline]
    pub fn anchor_of(&self, u: NodeId) -> Vertex {
        self.anchors.get(u as usize) as Vertex
    }

    /// Node whose anchor is `v`.
    pub fn node_of(&self, v: Vertex) -> Option<NodeId> {
        let i = v as usize - 1;
        if !self.anchor_marks.get(i) {
            return None;
        }
        Some(self.anchor_nodes.get(self.anchor_marks.rank_unchecked(i)) as NodeId)
    }

    /// Colour of the forest holding a meta node's spanning tree.
    pub fn color(&self, u: NodeId) -> Option<usize> {
        match self.kind(u) {
            NodeKind::MetaBridge | NodeKind::PhiMetaBridge => Some(self.colors.get(u as usize) as usize),
            _ => None,
        }
    }

    pub fn color_count(&self) -> usize {
        self.color_forests.len()
    }

    pub fn color_forest(&self, c: usize) -> &DynamicSubgraph<'a> {
        &self.color_forests[c]
    }

    pub fn leaf_forest(&self) -> &DynamicSubgraph<'a> {
        &self.leaf_forest
    }

    /// Vertices represented by `u`, each once.
    pub fn expand(&self, u: NodeId) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.weight(u) as usize);
        self.expand_into(u, &mut out);
        out
    }

    /// Appends the vertices represented by `u` to `out`.
    pub fn expand_into(&self, u: NodeId, out: &mut Vec<Vertex>) {
        let anchor = self.anchor_of(u);
        let kind = self.kind(u);
        let forest = match kind {
            NodeKind::Big | NodeKind::Critical | NodeKind::Isolated => {
                out.extend(self.partition.cloud(anchor));
                return;
            }
            NodeKind::MetaLeaf => &self.leaf_forest,
            _ => &self.color_forests[self.colors.get(u as usize) as usize],
        };
        let wanted = member_type(kind);
        // depth-first over tree arcs; the stack holds one entry per level
        let mut stack: Vec<(Vertex, usize)> = vec![(anchor, 0)];
        out.push(anchor);
        while let Some(top) = stack.last_mut() {
            let (v, from) = *top;
            match forest.next_present_arc(v, from) {
                Some(i) => {
                    top.1 = i + 1;
                    let w = forest.graph().neighbor(v, i);
                    if self.partition.cloud_type(w) == wanted {
                        out.push(w);
                    }
                    stack.push((w, 0));
                }
                None => {
                    stack.pop();
                }
            }
        }
    }

    /// `F` as a plain weighted graph for separator search, node `u` at index `u − 1`.
    pub fn to_weighted(&self) -> WeightedGraph {
        let edges: Vec<(usize, usize)> = self.adjacency.edges().map(|(a, b)| (a as usize - 1, b as usize - 1)).collect();
        let weights: Vec<u64> = self.nodes().map(|u| self.weight(u)).collect();
        WeightedGraph::new(weights, &edges)
    }

    pub fn counts(&self) -> MinorCounts {
        let mut c = MinorCounts {
            edges: self.adjacency.m(),
            ..Default::default()
        };
        for u in self.nodes() {
            c.max_weight = c.max_weight.max(self.weight(u));
            match self.kind(u) {
                NodeKind::Big => c.big += 1,
                NodeKind::Critical => c.critical += 1,
                NodeKind::Isolated => c.isolated += 1,
                NodeKind::MetaLeaf => c.meta_leaf += 1,
                NodeKind::MetaBridge => c.meta_bridge += 1,
                NodeKind::PhiMetaBridge => c.phi_meta_bridge += 1,
            }
        }
        c
    }

    /// Node list `id kind weight anchor` followed by edge list `u v`.
    pub fn to_text(&self) -> String {
        let mut s = format!("nodes {}\n", self.node_count());
        for u in self.nodes() {
            s.push_str(&format!("{u} {} {} {}\n", self.kind(u), self.weight(u), self.anchor_of(u)));
        }
        s.push_str(&format!("edges {}\n", self.adjacency.m()));
        for (a, b) in self.adjacency.edges() {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }

    /// Node of every vertex (index 0 unused), via `expand`. Costs `n log n` bits.
    pub fn node_map(&self) -> Vec<NodeId> {
        let mut map = vec![0; self.partition.graph().n() + 1];
        let mut buf = Vec::new();
        for u in self.nodes() {
            buf.clear();
            self.expand_into(u, &mut buf);
            for &v in &buf {
                map[v as usize] = u;
            }
        }
        map
    }

    /// Bits of the persistent minor structures.
    pub fn structure_bits(&self) -> usize {
        let idw = bit_width(self.node_count() as u64);
        self.kinds.bits()
            + self.weights.bits()
            + self.anchors.bits()
            + self.colors.bits()
            + (self.adjacency.n() + 1 + 2 * self.adjacency.m()) * idw
            + self.anchor_marks.bits()
            + self.anchor_nodes.bits()
            + self.leaf_forest.bits()
            + self.color_forests.iter().map(|f| f.bits()).sum::<usize>()
    }

    /// Checks that trees sharing a colour are vertex-disjoint.
    pub fn check_forests(&self) -> Result<()> {
        let n = self.partition.graph().n();
        for (c, forest) in std::iter::once(&self.leaf_forest).chain(&self.color_forests).enumerate() {
            let mut owner = vec![0 as NodeId; n + 1];
            for u in self.nodes() {
                let in_this = match self.kind(u) {
                    NodeKind::MetaLeaf => c == 0,
                    NodeKind::MetaBridge | NodeKind::PhiMetaBridge => c == 1 + self.colors.get(u as usize) as usize,
                    _ => false,
                };
                if !in_this {
                    continue;
                }
                let mut stack = vec![self.anchor_of(u)];
                while let Some(v) = stack.pop() {
                    if owner[v as usize] != 0 {
                        return Err(Error::Internal(format!("vertex {v} in trees of nodes {} and {u}", owner[v as usize])));
                    }
                    owner[v as usize] = u;
                    stack.extend(forest.neighbors(v));
                }
            }
        }
        Ok(())
    }
}

fn member_type(kind: NodeKind) -> CloudType {
    match kind {
        NodeKind::MetaLeaf => CloudType::Leaf,
        NodeKind::MetaBridge => CloudType::Bridge,
        NodeKind::PhiMetaBridge => CloudType::PhiBridge,
        _ => CloudType::Big,
    }
}

/// Sorted node ids of the big clouds adjacent to the small cloud `cloud`.
fn adjacent_bigs(partition: &CloudPartition, lookup: &AnchorMap, cloud: &[Vertex], scratch: &mut CloudScratch) -> Vec<NodeId> {
    let g = partition.graph();
    let mut out: Vec<NodeId> = Vec::new();
    let mut big_cloud = Vec::new();
    let mut seen_vertices: Vec<Vertex> = Vec::new();
    for &u in cloud {
        for &w in g.neighbors(u) {
            if !partition.is_big(w) || seen_vertices.contains(&w) {
                continue;
            }
            partition.cloud_into(w, &mut big_cloud, scratch);
            let anchor = *big_cloud.iter().min().unwrap();
            seen_vertices.extend_from_slice(&big_cloud);
            out.push(lookup.get(anchor).expect("big cloud has a node"));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Anchor vertex → node id through a marker dictionary over the vertices and
/// a packed array indexed by rank.
struct AnchorMap {
    marks: IndexableDictionary,
    nodes: IntVec,
}

impl AnchorMap {
    fn new(n: usize, anchors: &[Vertex], first_id: NodeId) -> Self {
        let mut bits = BitVec::new(n);
        for &a in anchors {
            bits.set(a as usize - 1, true);
        }
        let marks = IndexableDictionary::new(bits);
        let mut nodes = IntVec::with_max(anchors.len(), (anchors.len() as u64) + first_id as u64);
        for (i, &a) in anchors.iter().enumerate() {
            let r = marks.rank_unchecked(a as usize - 1);
            nodes.set(r, i as u64 + first_id as u64);
        }
        Self { marks, nodes }
    }

    fn get(&self, v: Vertex) -> Option<NodeId> {
        let i = v as usize - 1;
        self.marks.get(i).then(|| self.nodes.get(self.marks.rank_unchecked(i)) as NodeId)
    }

    fn bits(&self) -> usize {
        self.marks.bits() + self.nodes.bits()
    }
}

#[cfg(test)]
mod tests;
