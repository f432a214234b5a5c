//! BFS level separators.

use super::{sides_for, Side, WeightedGraph};

/// Repeatedly cuts the heaviest component along a BFS level from its heaviest
/// node. A single level that yields a balanced grouping ends the search; the
/// lightest such level wins. Otherwise the weighted-median level joins `S`.
pub(super) fn separate(g: &WeightedGraph, cap: u64) -> Vec<Side> {
    let n = g.len();
    let mut in_s = vec![false; n];
    loop {
        if let Some(sides) = sides_for(g, &in_s, cap, false) {
            return sides;
        }
        let keep: Vec<bool> = in_s.iter().map(|s| !s).collect();
        let comps = g.components_within(&keep);
        let weight = |c: &Vec<usize>| c.iter().map(|&v| g.weight(v)).sum::<u64>();
        let heavy = comps
            .iter()
            .enumerate()
            .max_by_key(|(i, c)| (weight(c), std::cmp::Reverse(*i)))
            .map(|(_, c)| c.clone())
            .expect("a component exceeds the cap");
        let root = *heavy.iter().max_by_key(|&&v| (g.weight(v), std::cmp::Reverse(v))).unwrap();
        let levels = bfs_levels(g, &keep, root);

        let mut best: Option<((u64, usize, u64), Vec<Side>)> = None;
        for level in &levels {
            for &v in level {
                in_s[v] = true;
            }
            if let Some(sides) = sides_for(g, &in_s, cap, false) {
                let lw: u64 = level.iter().map(|&v| g.weight(v)).sum();
                let key = (lw, level.len(), balance(g, &sides));
                if best.as_ref().is_none_or(|(b, _)| key < *b) {
                    best = Some((key, sides));
                }
            }
            for &v in level {
                in_s[v] = false;
            }
        }
        if let Some((_, sides)) = best {
            return sides;
        }

        let total = weight(&heavy);
        let mut prefix = 0;
        let median = levels
            .iter()
            .position(|level| {
                prefix += level.iter().map(|&v| g.weight(v)).sum::<u64>();
                2 * prefix >= total
            })
            .unwrap_or(levels.len() - 1);
        for &v in &levels[median] {
            in_s[v] = true;
        }
    }
}

fn balance(g: &WeightedGraph, sides: &[Side]) -> u64 {
    let (mut a, mut b) = (0, 0);
    for (v, s) in sides.iter().enumerate() {
        match s {
            Side::A => a += g.weight(v),
            Side::B => b += g.weight(v),
            Side::S => {}
        }
    }
    a.max(b)
}

/// BFS levels from `root` within nodes marked in `keep`.
pub(super) fn bfs_levels(g: &WeightedGraph, keep: &[bool], root: usize) -> Vec<Vec<usize>> {
    let mut dist = vec![usize::MAX; g.len()];
    dist[root] = 0;
    let mut levels = vec![vec![root]];
    loop {
        let mut next = Vec::new();
        for &u in levels.last().unwrap() {
            for &v in g.neighbors(u) {
                if keep[v] && dist[v] == usize::MAX {
                    dist[v] = levels.len();
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            return levels;
        }
        levels.push(next);
    }
}
