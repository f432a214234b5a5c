//! Separators of the underlying graph obtained from separators of the minor.

use std::collections::HashMap;

use super::{find_separator_split, Rule, SeparatorOptions, Side, SplitSeparator};
use crate::minor::{NodeId, StructureMinor};
use crate::succinct::{bit_width, BitBudget, BitVec, SpaceUsage};
use crate::{Result, Vertex};

/// Vertex separator of `G` stored as two length-`n` bitvectors.
#[derive(Clone, Debug)]
pub struct LiftedSeparator {
    in_s: BitVec,
    in_a: BitVec,
    pub size_a: usize,
    pub size_s: usize,
    pub size_b: usize,
    pub degenerate: bool,
    pub rule: Rule,
    /// Number of minor nodes in the separator, counting fragments.
    pub minor_nodes: usize,
    /// Number of minor nodes that were split into fragments.
    pub split_nodes: usize,
}

impl LiftedSeparator {
    pub fn side(&self, v: Vertex) -> Side {
        let i = v as usize - 1;
        if self.in_s.get(i) {
            Side::S
        } else if self.in_a.get(i) {
            Side::A
        } else {
            Side::B
        }
    }

    pub fn vertices(&self, side: Side) -> Vec<Vertex> {
        (1..=self.in_s.len() as Vertex).filter(|&v| self.side(v) == side).collect()
    }

    pub fn separator(&self) -> Vec<Vertex> {
        self.in_s.ones().map(|i| i as Vertex + 1).collect()
    }

    /// First edge joining `A` and `B`, if any.
    pub fn crossing_edge(&self, g: &crate::graph::StaticGraph) -> Option<(Vertex, Vertex)> {
        g.edges().find(|&(u, v)| {
            matches!((self.side(u), self.side(v)), (Side::A, Side::B) | (Side::B, Side::A))
        })
    }

    pub fn is_valid(&self, g: &crate::graph::StaticGraph) -> bool {
        self.crossing_edge(g).is_none()
    }
}

impl SpaceUsage for LiftedSeparator {
    fn bits(&self) -> usize {
        self.in_s.len() + self.in_a.len()
    }
}

/// Clouds of node `u`, each sorted, ordered by their lowest vertex.
pub fn meta_clouds(minor: &StructureMinor, u: NodeId) -> Vec<Vec<Vertex>> {
    let p = minor.partition();
    let mut members = minor.expand(u);
    members.sort_unstable();
    let mut taken = vec![false; members.len()];
    let mut clouds = Vec::new();
    for i in 0..members.len() {
        if taken[i] {
            continue;
        }
        let mut c = p.cloud(members[i]);
        c.sort_unstable();
        for v in &c {
            if let Ok(j) = members.binary_search(v) {
                taken[j] = true;
            }
        }
        clouds.push(c);
    }
    clouds
}

/// Maps a separator of the (possibly split) minor back to `G`: whole nodes
/// expand to their vertices, fragments contribute their cloud ranges.
pub fn lift(minor: &StructureMinor, split: &SplitSeparator) -> LiftedSeparator {
    let n = minor.partition().graph().n();
    let mut in_s = BitVec::new(n);
    let mut in_a = BitVec::new(n);
    let mut cache: HashMap<usize, Vec<Vec<Vertex>>> = HashMap::new();
    let mut buf = Vec::new();
    for (j, &v) in split.origin.iter().enumerate() {
        let u = v as NodeId + 1;
        let side = split.result.sides[j];
        let mut mark = |x: Vertex| match side {
            Side::S => in_s.set(x as usize - 1, true),
            Side::A => in_a.set(x as usize - 1, true),
            Side::B => {}
        };
        match &split.fragments[j] {
            None => {
                buf.clear();
                minor.expand_into(u, &mut buf);
                buf.iter().for_each(|&x| mark(x));
            }
            Some(range) => {
                let clouds = cache.entry(v).or_insert_with(|| meta_clouds(minor, u));
                for c in &clouds[range.clone()] {
                    c.iter().for_each(|&x| mark(x));
                }
            }
        }
    }
    let size_s = in_s.count_ones();
    let size_a = in_a.count_ones();
    LiftedSeparator {
        in_s,
        in_a,
        size_a,
        size_s,
        size_b: n - size_a - size_s,
        degenerate: split.result.degenerate,
        rule: split.result.rule,
        minor_nodes: split.result.count(Side::S),
        split_nodes: split.split_count(),
    }
}

/// Separator of `G` computed on its minor. Working bits are charged to
/// `budget` under `separator.*`.
pub fn separate_minor(minor: &StructureMinor, opts: &SeparatorOptions, budget: &mut BitBudget) -> Result<LiftedSeparator> {
    let f = minor.to_weighted();
    let k = f.len();
    let idw = bit_width(k as u64).max(1);
    let graph_bits = k * bit_width(f.weights().iter().copied().max().unwrap_or(0)) + (k + 1 + 2 * f.edge_count()) * idw;
    let search_bits = k * (4 * idw + 8);
    budget.charge("separator.graph", graph_bits);
    budget.charge("separator.search", search_bits);
    let split = find_separator_split(&f, opts, |v| {
        let u = v as NodeId + 1;
        minor
            .kind(u)
            .is_meta()
            .then(|| meta_clouds(minor, u).iter().map(|c| c.len() as u64).collect())
    });
    budget.release("separator.search", search_bits);
    budget.release("separator.graph", graph_bits);
    let lifted = lift(minor, &split?);
    budget.charge("separator.lift", lifted.bits());
    Ok(lifted)
}
