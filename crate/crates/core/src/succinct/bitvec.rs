use super::SpaceUsage;

/// Fixed-length bitvector backed by 64-bit words. Positions are 0-indexed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        Self { words, len }
    }

    /// Parses a string of `0`/`1` characters, leftmost character at position 0.
    pub fn from_str01(s: &str) -> Self {
        Self::from_bits(s.bytes().filter(|c| *c == b'0' || *c == b'1').map(|c| c == b'1'))
    }

    pub(crate) fn from_words(words: Vec<u64>, len: usize) -> Self {
        debug_assert_eq!(words.len(), len.div_ceil(64));
        Self { words, len }
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
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len, "bit {i} out of range {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub(crate) fn word(&self, i: usize) -> u64 {
        self.words[i]
    }

    /// Reads `width <= 64` bits starting at `pos` as a little-endian integer.
    #[inline]
    pub fn get_bits(&self, pos: usize, width: usize) -> u64 {
        if width == 0 {
            return 0;
        }
        debug_assert!(width <= 64 && pos + width <= self.len);
        let w = pos / 64;
        let off = pos % 64;
        let mut v = self.words[w] >> off;
        if off + width > 64 {
            v |= self.words[w + 1] << (64 - off);
        }
        if width < 64 {
            v &= (1u64 << width) - 1;
        }
        v
    }

    #[inline]
    pub fn set_bits(&mut self, pos: usize, width: usize, value: u64) {
        if width == 0 {
            return;
        }
        debug_assert!(width <= 64 && pos + width <= self.len);
        debug_assert!(width == 64 || value < (1u64 << width));
        let mask = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        let w = pos / 64;
        let off = pos % 64;
        self.words[w] = (self.words[w] & !(mask << off)) | (value << off);
        if off + width > 64 {
            let hi = off + width - 64;
            let hmask = (1u64 << hi) - 1;
            self.words[w + 1] = (self.words[w + 1] & !hmask) | (value >> (64 - off));
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positions of all set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl SpaceUsage for BitVec {
    fn bits(&self) -> usize {
        self.len
    }
}

/// Position of the `k`-th (0-based) set bit inside a word.
#[inline]
pub(crate) fn select_in_word(mut w: u64, k: u32) -> u32 {
    debug_assert!(k < w.count_ones());
    for _ in 0..k {
        w &= w - 1;
    }
    w.trailing_zeros()
}
