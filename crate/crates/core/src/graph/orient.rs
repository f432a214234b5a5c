use super::{DynamicSubgraph, StaticGraph};
use crate::{Error, Result, Vertex};

/// Edge orientation keeping exactly one arc per edge, with bounded in-degree.
#[derive(Clone, Debug)]
pub struct Orientation<'g> {
    arcs: DynamicSubgraph<'g>,
    in_degree_bound: usize,
    rounds: usize,
}

/// Peels all vertices of current degree `<= 2d` per round and directs their
/// remaining edges toward them. An edge whose endpoints peel in the same round
/// points to the smaller label.
pub fn orient_bounded(g: &StaticGraph, density: usize) -> Result<Orientation<'_>> {
    let n = g.n();
    let bound = 2 * density;
    let mut arcs = DynamicSubgraph::full(g);
    let mut degree: Vec<u32> = std::iter::once(0).chain(g.vertices().map(|u| g.degree(u) as u32)).collect();
    let mut peeled = vec![false; n + 1];
    let mut queued = vec![false; n + 1];
    let mut round: Vec<Vertex> = g.vertices().filter(|&u| degree[u as usize] as usize <= bound).collect();
    for &u in &round {
        queued[u as usize] = true;
    }
    let mut remaining = n;
    let mut rounds = 0;
    while remaining > 0 {
        if round.is_empty() {
            return Err(Error::DensityViolated { density, remaining });
        }
        rounds += 1;
        for &v in &round {
            for (i, &u) in g.neighbors(v).iter().enumerate() {
                if peeled[u as usize] {
                    continue;
                }
                // both endpoints peel now: keep the arc toward the smaller label
                if queued[u as usize] && u < v {
                    continue;
                }
                arcs.delete_arc(v, i)?;
            }
        }
        for &v in &round {
            peeled[v as usize] = true;
        }
        remaining -= round.len();
        let mut next = Vec::new();
        for &v in &round {
            for &u in g.neighbors(v) {
                if peeled[u as usize] {
                    continue;
                }
                degree[u as usize] -= 1;
                if !queued[u as usize] && degree[u as usize] as usize <= bound {
                    queued[u as usize] = true;
                    next.push(u);
                }
            }
        }
        round = next;
    }
    Ok(Orientation {
        arcs,
        in_degree_bound: bound,
        rounds,
    })
}

impl<'g> Orientation<'g> {
    #[inline]
    pub fn graph(&self) -> &'g StaticGraph {
        self.arcs.graph()
    }

    pub fn in_degree_bound(&self) -> usize {
        self.in_degree_bound
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn arcs(&self) -> &DynamicSubgraph<'g> {
        &self.arcs
    }

    /// True iff the edge behind arc `(u, i)` is directed from `u`.
    #[inline]
    pub fn is_out_arc(&self, u: Vertex, i: usize) -> bool {
        self.arcs.contains_arc(u, i)
    }

    /// Head of the edge `{u, v}`.
    pub fn head(&self, u: Vertex, v: Vertex) -> Vertex {
        let i = self.graph().arc_index(u, v).expect("edge exists");
        if self.is_out_arc(u, i) {
            v
        } else {
            u
        }
    }

    /// Tails of the edges directed into `v`.
    pub fn in_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let g = self.graph();
        g.neighbors(v)
            .iter()
            .enumerate()
            .filter(move |&(i, _)| !self.arcs.contains_arc(v, i))
            .map(|(_, &u)| u)
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.graph().degree(v) - self.arcs.out_degree(v)
    }

    pub fn max_in_degree(&self) -> usize {
        self.graph().vertices().map(|v| self.in_degree(v)).max().unwrap_or(0)
    }
}
