use super::SpaceUsage;

/// Dynamic subset of `1..=ℓ` with insert, delete, membership and `choice`.
///
/// Members live in a plain bitvector. Above it sits a 64-ary summary tree
/// where a bit is set iff the word below it is nonzero, so `choice` and
/// successor queries descend a constant number of levels for any practical ℓ.
#[derive(Clone, Debug, Default)]
pub struct ChoiceDictionary {
    universe: usize,
    len: usize,
    levels: Vec<Vec<u64>>,
}

impl ChoiceDictionary {
    pub fn new(universe: usize) -> Self {
        let mut levels = vec![vec![0u64; universe.div_ceil(64).max(1)]];
        while levels.last().unwrap().len() > 1 {
            let below = levels.last().unwrap().len();
            levels.push(vec![0u64; below.div_ceil(64)]);
        }
        Self { universe, len: 0, levels }
    }

    /// A dictionary containing every element of the universe.
    pub fn full(universe: usize) -> Self {
        let mut c = Self::new(universe);
        for x in 1..=universe {
            c.insert(x);
        }
        c
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        debug_assert!(x >= 1 && x <= self.universe);
        let i = x - 1;
        (self.levels[0][i / 64] >> (i % 64)) & 1 == 1
    }

    /// Adds `x`; returns false if it was already present.
    pub fn insert(&mut self, x: usize) -> bool {
        debug_assert!(x >= 1 && x <= self.universe);
        let mut i = x - 1;
        if (self.levels[0][i / 64] >> (i % 64)) & 1 == 1 {
            return false;
        }
        self.len += 1;
        for level in &mut self.levels {
            let was_zero = level[i / 64] == 0;
            level[i / 64] |= 1 << (i % 64);
            if !was_zero {
                break;
            }
            i /= 64;
        }
        true
    }

    /// Removes `x`; returns false if it was absent.
    pub fn remove(&mut self, x: usize) -> bool {
        debug_assert!(x >= 1 && x <= self.universe);
        let mut i = x - 1;
        if (self.levels[0][i / 64] >> (i % 64)) & 1 == 0 {
            return false;
        }
        self.len -= 1;
        for level in &mut self.levels {
            level[i / 64] &= !(1 << (i % 64));
            if level[i / 64] != 0 {
                break;
            }
            i /= 64;
        }
        true
    }

    /// Some member (the smallest), or `None` if empty.
    #[inline]
    pub fn choice(&self) -> Option<usize> {
        self.successor(1)
    }

    /// Smallest member `>= x`.
    pub fn successor(&self, x: usize) -> Option<usize> {
        if x == 0 || x > self.universe || self.len == 0 {
            return if x == 0 { self.successor(1) } else { None };
        }
        let mut pos = x - 1;
        let mut depth = 0;
        // climb until a word holds a set bit at or after the current position
        loop {
            let words = &self.levels[depth];
            let w = pos / 64;
            if w >= words.len() {
                return None;
            }
            let masked = words[w] & (u64::MAX << (pos % 64));
            if masked != 0 {
                pos = w * 64 + masked.trailing_zeros() as usize;
                break;
            }
            if depth + 1 == self.levels.len() {
                return None;
            }
            depth += 1;
            pos = w + 1;
        }
        while depth > 0 {
            depth -= 1;
            pos = pos * 64 + self.levels[depth][pos].trailing_zeros() as usize;
        }
        Some(pos + 1)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut next = 1;
        std::iter::from_fn(move || {
            let x = self.successor(next)?;
            next = x + 1;
            Some(x)
        })
    }

    pub fn clear(&mut self) {
        for level in &mut self.levels {
            level.iter_mut().for_each(|w| *w = 0);
        }
        self.len = 0;
    }
}

impl SpaceUsage for ChoiceDictionary {
    fn bits(&self) -> usize {
        self.universe + self.levels[1..].iter().map(|l| l.len() * 64).sum::<usize>()
    }
}
