//! Exhaustive search for a minimum-cardinality balanced separator.

use super::{sides_for, Side, WeightedGraph};

/// Smallest `S` admitting a balanced grouping; among those the most balanced,
/// preferring proper results when `proper` is set. Subsets of equal size are
/// visited in lexicographic order and the first best one wins.
pub(super) fn separate(g: &WeightedGraph, cap: u64, proper: bool) -> Vec<Side> {
    let n = g.len();
    let mut in_s = vec![false; n];
    for k in 0..=n {
        let mut best: Option<((bool, u64), Vec<Side>)> = None;
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            in_s.iter_mut().for_each(|x| *x = false);
            for &i in &idx {
                in_s[i] = true;
            }
            if let Some(sides) = sides_for(g, &in_s, cap, false) {
                let key = score(g, &sides, proper);
                if best.as_ref().is_none_or(|(b, _)| key < *b) {
                    best = Some((key, sides));
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        if let Some((_, sides)) = best {
            return sides;
        }
    }
    unreachable!("S = V is always a separator")
}

fn score(g: &WeightedGraph, sides: &[Side], proper: bool) -> (bool, u64) {
    let (mut a, mut b) = (0, 0);
    for (v, s) in sides.iter().enumerate() {
        match s {
            Side::A => a += g.weight(v),
            Side::B => b += g.weight(v),
            Side::S => {}
        }
    }
    let improper = proper && (!sides.contains(&Side::A) || !sides.contains(&Side::B));
    (improper, a.max(b))
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_lexicographic_order() {
        let mut idx = vec![0, 1];
        let mut all = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            all.push(idx.clone());
        }
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut empty: Vec<usize> = vec![];
        assert!(!next_combination(&mut empty, 3));
    }

    #[test]
    fn star_needs_its_centre() {
        let g = WeightedGraph::new(vec![1; 6], &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let sides = separate(&g, 4, false);
        assert_eq!(sides[0], Side::S);
        assert_eq!(sides.iter().filter(|s| **s == Side::S).count(), 1);
    }

    #[test]
    fn cycle_needs_two() {
        let e: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        let g = WeightedGraph::new(vec![1; 8], &e);
        let sides = separate(&g, 5, false);
        assert_eq!(sides.iter().filter(|s| **s == Side::S).count(), 2);
    }
}
