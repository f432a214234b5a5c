//! Balanced vertex separators of small node-weighted graphs and their lift to
//! the underlying graph.
//!
//! [`find_separator`] returns a partition `{A, S, B}` with no `A`–`B` edge and
//! `w(A), w(B) ≤ α·W`. Three backends exist: exhaustive enumeration for tiny
//! graphs, BFS level cuts, and fundamental cycles of a triangulated planar
//! embedding.

mod cycle;
mod exact;
mod level;
mod lift;
mod planarity;
mod weighted;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

pub use lift::{lift, meta_clouds, separate_minor, LiftedSeparator};
pub use planarity::planar_embedding;
pub use weighted::WeightedGraph;

use crate::{Error, Result};

/// Largest node count accepted by the exact backend.
pub const EXACT_LIMIT: usize = 18;

/// Step limit of the exhaustive component grouping search.
const GROUPING_STEPS: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Side {
    A,
    S,
    B,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Backend {
    #[default]
    Auto,
    Exact,
    Level,
    Cycle,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Auto => "auto",
            Backend::Exact => "exact",
            Backend::Level => "level",
            Backend::Cycle => "cycle",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Backend::Auto),
            "exact" => Ok(Backend::Exact),
            "level" => Ok(Backend::Level),
            "cycle" => Ok(Backend::Cycle),
            _ => Err(Error::InvalidArgument(format!("unknown backend `{s}`"))),
        }
    }
}

/// Which rule produced a separator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Degenerate,
    Neighborhood,
    Exact,
    Level,
    Cycle,
    Regrouped,
    Pair,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparatorOptions {
    pub alpha: f64,
    pub backend: Backend,
    /// The graph is known to be planar, enabling the cycle backend.
    pub planar: bool,
    /// Require both `A` and `B` nonempty whenever some such separator exists.
    pub proper: bool,
}

impl Default for SeparatorOptions {
    fn default() -> Self {
        Self {
            alpha: 2.0 / 3.0,
            backend: Backend::Auto,
            planar: true,
            proper: false,
        }
    }
}

impl SeparatorOptions {
    /// Largest admissible side weight for total weight `total`.
    pub fn cap(&self, total: u64) -> u64 {
        (self.alpha * total as f64 + 1e-9).floor() as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorResult {
    pub sides: Vec<Side>,
    pub weight_a: u64,
    pub weight_s: u64,
    pub weight_b: u64,
    pub degenerate: bool,
    pub rule: Rule,
}

impl SeparatorResult {
    pub fn from_sides(g: &WeightedGraph, sides: Vec<Side>, rule: Rule) -> Self {
        let mut w = [0u64; 3];
        for (v, s) in sides.iter().enumerate() {
            w[*s as usize] += g.weight(v);
        }
        Self {
            sides,
            weight_a: w[0],
            weight_s: w[1],
            weight_b: w[2],
            degenerate: rule == Rule::Degenerate,
            rule,
        }
    }

    fn degenerate(g: &WeightedGraph) -> Self {
        Self::from_sides(g, vec![Side::S; g.len()], Rule::Degenerate)
    }

    pub fn nodes(&self, side: Side) -> impl Iterator<Item = usize> + '_ {
        self.sides.iter().enumerate().filter(move |(_, s)| **s == side).map(|(v, _)| v)
    }

    pub fn count(&self, side: Side) -> usize {
        self.sides.iter().filter(|s| **s == side).count()
    }

    pub fn is_proper(&self) -> bool {
        self.sides.contains(&Side::A) && self.sides.contains(&Side::B)
    }

    /// No `A`–`B` edge and both side weights within `cap`.
    pub fn is_valid(&self, g: &WeightedGraph, cap: u64) -> bool {
        self.weight_a <= cap
            && self.weight_b <= cap
            && g.edges().all(|(a, b)| {
                !matches!((self.sides[a], self.sides[b]), (Side::A, Side::B) | (Side::B, Side::A))
            })
    }
}

/// Balanced separator of `g` (which need not be connected).
pub fn find_separator(g: &WeightedGraph, opts: &SeparatorOptions) -> Result<SeparatorResult> {
    let n = g.len();
    if opts.backend == Backend::Exact && n > EXACT_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "exact backend handles at most {EXACT_LIMIT} nodes, got {n}"
        )));
    }
    if n <= 2 {
        return Ok(SeparatorResult::degenerate(g));
    }
    let total = g.total_weight();
    let cap = opts.cap(total);

    if let Some(v) = (0..n).filter(|&v| 3 * g.weight(v) > total).max_by_key(|&v| (g.weight(v), std::cmp::Reverse(v))) {
        let sides = neighborhood_sides(g, v);
        let r = SeparatorResult::from_sides(g, sides, Rule::Neighborhood);
        if r.weight_a <= cap && r.weight_b <= cap && (!opts.proper || r.is_proper()) {
            return Ok(r);
        }
    }

    let (sides, rule) = match opts.backend {
        Backend::Exact => (exact::separate(g, cap, opts.proper), Rule::Exact),
        Backend::Level => (level::separate(g, cap), Rule::Level),
        Backend::Cycle => match cycle::separate(g, cap)? {
            Some(s) => (s, Rule::Cycle),
            None => (level::separate(g, cap), Rule::Level),
        },
        Backend::Auto if n <= EXACT_LIMIT => (exact::separate(g, cap, opts.proper), Rule::Exact),
        Backend::Auto if opts.planar => match cycle::separate(g, cap) {
            Ok(Some(s)) => (s, Rule::Cycle),
            Ok(None) | Err(Error::NonPlanar) => (level::separate(g, cap), Rule::Level),
            Err(e) => return Err(e),
        },
        Backend::Auto => (level::separate(g, cap), Rule::Level),
    };
    let mut r = SeparatorResult::from_sides(g, sides, rule);
    if opts.proper && !r.is_proper() {
        r = make_proper(g, &r, cap);
    }
    if !r.is_valid(g, cap) {
        return Err(Error::Internal(format!("{} backend produced an invalid separator", rule_name(rule))));
    }
    Ok(r)
}

fn rule_name(rule: Rule) -> &'static str {
    match rule {
        Rule::Degenerate => "degenerate",
        Rule::Neighborhood => "neighborhood",
        Rule::Exact => "exact",
        Rule::Level => "level",
        Rule::Cycle => "cycle",
        Rule::Regrouped => "regrouped",
        Rule::Pair => "pair",
    }
}

/// `A = {v}`, `S = N(v)`, `B` = everything else.
fn neighborhood_sides(g: &WeightedGraph, v: usize) -> Vec<Side> {
    let mut sides = vec![Side::B; g.len()];
    sides[v] = Side::A;
    for &u in g.neighbors(v) {
        sides[u] = Side::S;
    }
    sides
}

/// Sides for a separator `in_s`, grouping the remaining components, or `None`
/// if a component exceeds `cap` or no grouping fits.
pub(crate) fn sides_for(g: &WeightedGraph, in_s: &[bool], cap: u64, need_both: bool) -> Option<Vec<Side>> {
    let keep: Vec<bool> = in_s.iter().map(|s| !s).collect();
    let comps = g.components_within(&keep);
    let weights: Vec<u64> = comps.iter().map(|c| c.iter().map(|&v| g.weight(v)).sum()).collect();
    if weights.iter().any(|&w| w > cap) {
        return None;
    }
    let to_a = group(&weights, cap, need_both)?;
    let mut sides = vec![Side::S; g.len()];
    for (c, comp) in comps.iter().enumerate() {
        let s = if to_a[c] { Side::A } else { Side::B };
        for &v in comp {
            sides[v] = s;
        }
    }
    Some(sides)
}

/// Assigns items to two bins of capacity `cap` (`true` = first bin).
///
/// Items in decreasing weight order (ties by index) go to the lighter bin,
/// or the other one if the lighter is full; if that fails, a bounded
/// exhaustive search.
pub fn group(weights: &[u64], cap: u64, need_both: bool) -> Option<Vec<bool>> {
    if need_both && weights.len() < 2 {
        return None;
    }
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(weights[i]), i));
    let mut to_a = vec![false; weights.len()];
    let (mut a, mut b) = (0u64, 0u64);
    let mut fits = true;
    for &i in &order {
        let lighter_a = a <= b;
        if lighter_a && a + weights[i] <= cap || !lighter_a && b + weights[i] > cap && a + weights[i] <= cap {
            a += weights[i];
            to_a[i] = true;
        } else if b + weights[i] <= cap {
            b += weights[i];
        } else {
            fits = false;
            break;
        }
    }
    if fits && (!need_both || to_a.iter().any(|x| !x)) {
        return Some(to_a);
    }
    let sorted: Vec<u64> = order.iter().map(|&i| weights[i]).collect();
    let mut suffix = vec![0u64; sorted.len() + 1];
    for i in (0..sorted.len()).rev() {
        suffix[i] = suffix[i + 1] + sorted[i];
    }
    let mut choice = vec![false; sorted.len()];
    let mut steps = 0usize;
    if search(&sorted, &suffix, cap, need_both, 0, 0, 0, &mut choice, &mut steps) {
        let mut out = vec![false; weights.len()];
        for (k, &i) in order.iter().enumerate() {
            out[i] = choice[k];
        }
        return Some(out);
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn search(
    w: &[u64],
    suffix: &[u64],
    cap: u64,
    need_both: bool,
    i: usize,
    a: u64,
    b: u64,
    choice: &mut [bool],
    steps: &mut usize,
) -> bool {
    *steps += 1;
    if *steps > GROUPING_STEPS {
        return false;
    }
    if i == w.len() {
        return !need_both || (choice.iter().any(|&x| x) && choice.iter().any(|&x| !x));
    }
    if suffix[i] > (cap - a) + (cap - b) {
        return false;
    }
    if a + w[i] <= cap {
        choice[i] = true;
        if search(w, suffix, cap, need_both, i + 1, a + w[i], b, choice, steps) {
            return true;
        }
    }
    // the first item goes to A by symmetry
    if i > 0 && b + w[i] <= cap {
        choice[i] = false;
        if search(w, suffix, cap, need_both, i + 1, a, b + w[i], choice, steps) {
            return true;
        }
    }
    false
}

/// Turns a valid but one-sided result into one with both sides nonempty.
fn make_proper(g: &WeightedGraph, r: &SeparatorResult, cap: u64) -> SeparatorResult {
    let in_s: Vec<bool> = r.sides.iter().map(|s| *s == Side::S).collect();
    if let Some(sides) = sides_for(g, &in_s, cap, true) {
        return SeparatorResult::from_sides(g, sides, Rule::Regrouped);
    }
    let n = g.len();
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) && g.weight(a) <= cap && g.weight(b) <= cap {
                let mut sides = vec![Side::S; n];
                sides[a] = Side::A;
                sides[b] = Side::B;
                return SeparatorResult::from_sides(g, sides, Rule::Pair);
            }
        }
    }
    SeparatorResult::degenerate(g)
}

/// A separator found after splitting heavy multi-cloud nodes.
#[derive(Clone, Debug)]
pub struct SplitSeparator {
    /// Result on the graph with heavy nodes replaced by fragments.
    pub result: SeparatorResult,
    /// Original node of each node of the split graph.
    pub origin: Vec<usize>,
    /// Cloud index range of each split-graph node within its original node;
    /// `None` for unsplit nodes.
    pub fragments: Vec<Option<Range<usize>>>,
    original_len: usize,
}

impl SplitSeparator {
    /// Node-level result on the original graph: a node whose fragments do not
    /// all share one side goes to `S`.
    pub fn collapse(&self, g: &WeightedGraph) -> SeparatorResult {
        let mut sides: Vec<Option<Side>> = vec![None; self.original_len];
        for (j, &v) in self.origin.iter().enumerate() {
            let s = self.result.sides[j];
            sides[v] = match sides[v] {
                None => Some(s),
                Some(t) if t == s => Some(s),
                Some(_) => Some(Side::S),
            };
        }
        let sides = sides.into_iter().map(|s| s.unwrap_or(Side::S)).collect();
        let rule = self.result.rule;
        let mut r = SeparatorResult::from_sides(g, sides, rule);
        r.degenerate = self.result.degenerate;
        r
    }

    /// Number of original nodes that were split.
    pub fn split_count(&self) -> usize {
        self.fragments.iter().filter(|f| matches!(f, Some(r) if r.start == 0)).count()
    }
}

/// Splits every node heavier than a third of the total weight into up to three
/// fragments by distributing its clouds evenly, then searches the split graph.
///
/// `cloud_sizes(v)` lists the cloud sizes of node `v` in a fixed order, or
/// `None` if `v` cannot be split.
pub fn find_separator_split(
    g: &WeightedGraph,
    opts: &SeparatorOptions,
    mut cloud_sizes: impl FnMut(usize) -> Option<Vec<u64>>,
) -> Result<SplitSeparator> {
    let total = g.total_weight();
    let mut origin = Vec::with_capacity(g.len());
    let mut fragments = Vec::with_capacity(g.len());
    let mut weights = Vec::with_capacity(g.len());
    let mut copies: Vec<Range<usize>> = Vec::with_capacity(g.len());
    for v in 0..g.len() {
        let start = origin.len();
        let sizes = if 3 * g.weight(v) > total { cloud_sizes(v).filter(|s| s.len() >= 2) } else { None };
        match sizes {
            Some(sizes) => {
                let w: u64 = sizes.iter().sum();
                let mut cum = 0u64;
                let mut bounds: Vec<(usize, u64)> = Vec::new();
                for (k, &sz) in sizes.iter().enumerate() {
                    let part = (3 * cum / w) as usize;
                    while bounds.len() <= part {
                        bounds.push((k, 0));
                    }
                    bounds[part].1 += sz;
                    cum += sz;
                }
                for (i, &(lo, wt)) in bounds.iter().enumerate() {
                    if wt == 0 {
                        continue;
                    }
                    let hi = bounds.get(i + 1).map_or(sizes.len(), |b| b.0);
                    origin.push(v);
                    fragments.push(Some(lo..hi));
                    weights.push(wt);
                }
            }
            None => {
                origin.push(v);
                fragments.push(None);
                weights.push(g.weight(v));
            }
        }
        copies.push(start..origin.len());
    }
    let split = if origin.len() == g.len() {
        g.clone()
    } else {
        let mut edges = Vec::new();
        for (a, b) in g.edges() {
            for x in copies[a].clone() {
                for y in copies[b].clone() {
                    edges.push((x, y));
                }
            }
        }
        WeightedGraph::new(weights, &edges)
    };
    let result = find_separator(&split, opts)?;
    Ok(SplitSeparator {
        result,
        origin,
        fragments,
        original_len: g.len(),
    })
}
