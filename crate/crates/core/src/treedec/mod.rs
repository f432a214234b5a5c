//! Tree decompositions driven by recursive separators of the minor.
//!
//! Each call on a node set `F′` with carried set `X` emits the bag `S ∪ X`
//! and recurses on `F′[A ∪ S]` and `F′[B ∪ S]`, each carrying
//! `(X ∪ S) ∩ (side ∪ S)`. Sets of at most [`LEAF_SIZE`] nodes, or without a
//! proper separator, become a single bag. Bags are expanded to their clouds
//! before they leave the module.

mod validate;

use std::io::Write;

pub use validate::{read_pace, validate, ValidationReport, Violation};

use crate::minor::{NodeId, StructureMinor};
use crate::separator::{find_separator, SeparatorOptions, Side};
use crate::{Error, Result, Vertex};

/// Largest node set emitted as one bag without searching for a separator.
pub const LEAF_SIZE: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub n: usize,
    /// Sorted vertex sets.
    pub bags: Vec<Vec<Vertex>>,
    /// Parent bag of each bag; `None` for roots.
    pub parent: Vec<Option<usize>>,
}

impl TreeDecomposition {
    /// Largest bag size minus one; `0` when there are no bags.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// Tree edges `(parent, child)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent.iter().enumerate().filter_map(|(c, p)| p.map(|p| (p, c)))
    }

    pub fn write_pace(&self, mut out: impl Write) -> Result<()> {
        writeln!(out, "s td {} {} {}", self.bags.len(), self.width() + 1, self.n)?;
        for (i, bag) in self.bags.iter().enumerate() {
            write_bag(&mut out, i, bag)?;
        }
        for (p, c) in self.edges() {
            writeln!(out, "{} {}", p + 1, c + 1)?;
        }
        Ok(())
    }
}

fn write_bag(out: &mut impl Write, id: usize, bag: &[Vertex]) -> Result<()> {
    write!(out, "b {}", id + 1)?;
    for v in bag {
        write!(out, " {v}")?;
    }
    writeln!(out)?;
    Ok(())
}

#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    pub separator: SeparatorOptions,
    pub leaf_size: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            separator: SeparatorOptions::default(),
            leaf_size: LEAF_SIZE,
        }
    }
}

/// Size of a streamed decomposition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BagSummary {
    pub bags: usize,
    pub width: usize,
    pub separator_calls: usize,
}

struct Call {
    nodes: Vec<usize>,
    carried: Vec<bool>,
    parent: Option<usize>,
}

/// Streams bags as `(id, parent, vertices)` in preorder; ids count from 0.
pub fn for_each_bag(
    minor: &StructureMinor,
    opts: &DecomposeOptions,
    mut sink: impl FnMut(usize, Option<usize>, &[Vertex]) -> Result<()>,
) -> Result<BagSummary> {
    let f = minor.to_weighted();
    let sep_opts = SeparatorOptions {
        proper: true,
        ..opts.separator
    };
    let mut summary = BagSummary::default();
    let mut bag = Vec::new();
    let mut emit = |nodes: &mut dyn Iterator<Item = usize>, parent: Option<usize>, summary: &mut BagSummary| -> Result<usize> {
        bag.clear();
        for u in nodes {
            minor.expand_into(u as NodeId + 1, &mut bag);
        }
        bag.sort_unstable();
        let id = summary.bags;
        summary.bags += 1;
        summary.width = summary.width.max(bag.len().saturating_sub(1));
        sink(id, parent, &bag)?;
        Ok(id)
    };
    if f.is_empty() {
        return Ok(summary);
    }
    let mut stack = vec![Call {
        nodes: (0..f.len()).collect(),
        carried: vec![false; f.len()],
        parent: None,
    }];
    while let Some(call) = stack.pop() {
        if call.nodes.len() <= opts.leaf_size.max(1) {
            emit(&mut call.nodes.iter().copied(), call.parent, &mut summary)?;
            continue;
        }
        let sub = f.induced(&call.nodes);
        summary.separator_calls += 1;
        let sep = find_separator(&sub, &sep_opts)?;
        if sep.degenerate || !sep.is_proper() {
            emit(&mut call.nodes.iter().copied(), call.parent, &mut summary)?;
            continue;
        }
        let sides = &sep.sides;
        let mut in_bag = (0..call.nodes.len()).filter(|&i| sides[i] == Side::S || call.carried[i]).map(|i| call.nodes[i]);
        let id = emit(&mut in_bag, call.parent, &mut summary)?;
        for side in [Side::B, Side::A] {
            let keep: Vec<usize> = (0..call.nodes.len()).filter(|&i| sides[i] == side || sides[i] == Side::S).collect();
            if keep.len() == call.nodes.len() {
                return Err(Error::Internal("separator side covers the whole piece".into()));
            }
            stack.push(Call {
                nodes: keep.iter().map(|&i| call.nodes[i]).collect(),
                carried: keep.iter().map(|&i| call.carried[i] || sides[i] == Side::S).collect(),
                parent: Some(id),
            });
        }
    }
    Ok(summary)
}

/// Collects the streamed bags.
pub fn decompose(minor: &StructureMinor, opts: &DecomposeOptions) -> Result<TreeDecomposition> {
    let mut td = TreeDecomposition {
        n: minor.partition().graph().n(),
        bags: Vec::new(),
        parent: Vec::new(),
    };
    for_each_bag(minor, opts, |_, parent, bag| {
        td.bags.push(bag.to_vec());
        td.parent.push(parent);
        Ok(())
    })?;
    Ok(td)
}

/// Writes PACE output in two streaming passes: one to size the header, one
/// to print bags, followed by a third that prints the tree edges.
pub fn write_pace_streaming(minor: &StructureMinor, opts: &DecomposeOptions, mut out: impl Write) -> Result<BagSummary> {
    let summary = for_each_bag(minor, opts, |_, _, _| Ok(()))?;
    let n = minor.partition().graph().n();
    writeln!(out, "s td {} {} {}", summary.bags, summary.width + 1, n)?;
    for_each_bag(minor, opts, |id, _, bag| write_bag(&mut out, id, bag))?;
    for_each_bag(minor, opts, |id, parent, _| {
        if let Some(p) = parent {
            writeln!(out, "{} {}", p + 1, id + 1)?;
        }
        Ok(())
    })?;
    Ok(summary)
}
