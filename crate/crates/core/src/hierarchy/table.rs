use crate::graph::StaticGraph;
use crate::succinct::{bit_width, IntVec, SpaceUsage};
use crate::{Error, Result, Vertex};

/// Largest micro size whose table lists every labelled graph; larger sizes
/// list only the graphs that occur.
pub const DENSE_LIMIT: usize = 6;

/// Bit of the pair `{i, j}` (0-based, `i < j`) in an adjacency mask.
#[inline]
pub fn pair_bit(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Block {
    k: usize,
    /// `None`: code = mask. `Some`: code = index into the sorted masks.
    masks: Option<Vec<u64>>,
    rows: IntVec,
    degrees: IntVec,
}

impl Block {
    fn new(k: usize, masks: Option<Vec<u64>>) -> Self {
        let entries = masks.as_ref().map_or(1usize << (k * k.saturating_sub(1) / 2), Vec::len);
        let mut rows = IntVec::new(entries * k, k);
        let mut degrees = IntVec::with_max(entries * k, k.saturating_sub(1) as u64);
        for e in 0..entries {
            let mask = masks.as_ref().map_or(e as u64, |m| m[e]);
            for j in 1..k {
                for i in 0..j {
                    if mask >> pair_bit(i, j) & 1 == 1 {
                        rows.set(e * k + i, rows.get(e * k + i) | 1 << j);
                        rows.set(e * k + j, rows.get(e * k + j) | 1 << i);
                    }
                }
            }
            for i in 0..k {
                degrees.set(e * k + i, rows.get(e * k + i).count_ones() as u64);
            }
        }
        Self { k, masks, rows, degrees }
    }

    fn entries(&self) -> usize {
        self.rows.len().checked_div(self.k).unwrap_or(0)
    }
}

/// Lookup table of labelled graphs on up to `t` vertices with per-vertex
/// degree and neighbour-row entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MicroTable {
    t: usize,
    blocks: Vec<Block>,
}

impl MicroTable {
    /// Dense blocks for sizes up to [`DENSE_LIMIT`]; larger sizes hold the
    /// `(k, mask)` pairs listed in `used`.
    pub fn new(t: usize, used: impl IntoIterator<Item = (usize, u64)>) -> Result<Self> {
        if t > 8 {
            return Err(Error::InvalidArgument(format!("micro cap {t} exceeds 8")));
        }
        let mut sparse: Vec<Vec<u64>> = vec![Vec::new(); t + 1];
        for (k, mask) in used {
            if k > t {
                return Err(Error::Internal(format!("micro graph of {k} vertices exceeds the cap {t}")));
            }
            if k > DENSE_LIMIT {
                sparse[k].push(mask);
            }
        }
        let blocks = (0..=t)
            .map(|k| {
                if k <= DENSE_LIMIT {
                    Block::new(k, None)
                } else {
                    let mut m = std::mem::take(&mut sparse[k]);
                    m.sort_unstable();
                    m.dedup();
                    Block::new(k, Some(m))
                }
            })
            .collect();
        Ok(Self { t, blocks })
    }

    pub fn cap(&self) -> usize {
        self.t
    }

    /// Masks stored for sparse block `k`.
    pub(crate) fn sparse_masks(&self, k: usize) -> &[u64] {
        self.blocks[k].masks.as_deref().unwrap_or(&[])
    }

    /// Code of the labelled graph `mask` on `k` vertices.
    pub fn code(&self, k: usize, mask: u64) -> Option<u64> {
        let block = self.blocks.get(k)?;
        match &block.masks {
            None => (mask < 1 << (k * k.saturating_sub(1) / 2)).then_some(mask),
            Some(m) => m.binary_search(&mask).ok().map(|i| i as u64),
        }
    }

    /// Bits used to store a code of size `k`.
    pub fn code_width(&self, k: usize) -> usize {
        match &self.blocks[k].masks {
            None => k * k.saturating_sub(1) / 2,
            Some(m) => bit_width(m.len().saturating_sub(1) as u64),
        }
    }

    pub fn mask(&self, k: usize, code: u64) -> u64 {
        match &self.blocks[k].masks {
            None => code,
            Some(m) => m[code as usize],
        }
    }

    /// Neighbours of local vertex `i` as a bit row.
    #[inline]
    pub fn row(&self, k: usize, code: u64, i: usize) -> u64 {
        self.blocks[k].rows.get(code as usize * k + i)
    }

    #[inline]
    pub fn degree(&self, k: usize, code: u64, i: usize) -> usize {
        self.blocks[k].degrees.get(code as usize * k + i) as usize
    }

    #[inline]
    pub fn adjacent(&self, k: usize, code: u64, i: usize, j: usize) -> bool {
        self.row(k, code, i) >> j & 1 == 1
    }

    pub fn entries(&self) -> usize {
        self.blocks.iter().map(Block::entries).sum()
    }

    /// Canonical `(k, mask)` of a graph on local labels `1..=k`.
    pub fn encode(g: &StaticGraph) -> (usize, u64) {
        let mask = g.edges().fold(0u64, |m, (u, v)| m | 1 << pair_bit(u as usize - 1, v as usize - 1));
        (g.n(), mask)
    }

    pub fn decode(&self, k: usize, code: u64) -> StaticGraph {
        let mut edges = Vec::new();
        for i in 0..k {
            let row = self.row(k, code, i);
            for j in i + 1..k {
                if row >> j & 1 == 1 {
                    edges.push((i as Vertex + 1, j as Vertex + 1));
                }
            }
        }
        StaticGraph::from_edges(k, &edges).expect("table rows are symmetric")
    }
}

impl SpaceUsage for MicroTable {
    fn bits(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| b.rows.bits() + b.degrees.bits() + b.masks.as_ref().map_or(0, |m| 64 * m.len()))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_bits_enumerate_upper_triangle() {
        let bits: Vec<usize> = (1..4).flat_map(|j| (0..j).map(move |i| pair_bit(i, j))).collect();
        assert_eq!(bits, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn dense_table_round_trips_every_graph_on_four_vertices() {
        let table = MicroTable::new(4, []).unwrap();
        assert_eq!(table.entries(), 1 + 2 + 8 + 64);
        for code in 0..64u64 {
            let g = table.decode(4, code);
            assert_eq!(MicroTable::encode(&g), (4, code));
            for u in g.vertices() {
                assert_eq!(table.degree(4, code, u as usize - 1), g.degree(u));
            }
        }
    }

    #[test]
    fn sparse_block_holds_used_codes_only() {
        let path: u64 = (0..7).map(|i| 1u64 << pair_bit(i, i + 1)).sum();
        let table = MicroTable::new(8, [(8, path), (8, 0), (8, path)]).unwrap();
        assert_eq!(table.code(8, 0), Some(0));
        assert_eq!(table.code(8, path), Some(1));
        assert_eq!(table.code(8, 5), None);
        assert_eq!(table.code_width(8), 1);
        assert_eq!(table.degree(8, 1, 0), 1);
        assert_eq!(table.degree(8, 1, 3), 2);
        assert!(table.adjacent(8, 1, 6, 7));
        assert_eq!(table.code_width(5), 10);
    }

    #[test]
    fn rejects_oversized_micro_graphs() {
        assert!(MicroTable::new(9, []).is_err());
        assert!(MicroTable::new(4, [(5, 0)]).is_err());
    }
}
