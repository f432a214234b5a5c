use super::bitvec::select_in_word;
use super::{bit_width, BitVec, IntVec, SpaceUsage};
use crate::{Error, Result};

const BLOCK_WORDS: usize = 4;
const BLOCK_BITS: usize = BLOCK_WORDS * 64;

/// Bitvector with a two-level rank directory and sampled select.
///
/// Superblocks span roughly `log² ℓ` bits (rounded up to whole blocks) and
/// store absolute ranks; blocks span four words and store ranks relative to
/// their superblock. Every `log² ℓ`-th one is sampled with the superblock that
/// contains it, so `select` only searches between two neighbouring samples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexableDictionary {
    bits: BitVec,
    ones: usize,
    superblock_bits: usize,
    superblock_ranks: IntVec,
    block_ranks: IntVec,
    sample_rate: usize,
    select_samples: IntVec,
}

impl IndexableDictionary {
    pub fn new(bits: BitVec) -> Self {
        let len = bits.len();
        let lg = bit_width(len as u64).max(1);
        let blocks_per_super = (lg * lg).div_ceil(BLOCK_BITS).max(1);
        let superblock_bits = blocks_per_super * BLOCK_BITS;
        let n_super = len.div_ceil(superblock_bits);
        let n_blocks = len.div_ceil(BLOCK_BITS);

        let mut superblock_ranks = IntVec::with_max(n_super + 1, len as u64);
        let mut block_ranks = IntVec::with_max(n_blocks, superblock_bits as u64);
        let words = bits.words();
        let mut total = 0usize;
        let mut in_super = 0usize;
        for b in 0..n_blocks {
            if b % blocks_per_super == 0 {
                superblock_ranks.set(b / blocks_per_super, total as u64);
                in_super = 0;
            }
            block_ranks.set(b, in_super as u64);
            let lo = b * BLOCK_WORDS;
            let hi = (lo + BLOCK_WORDS).min(words.len());
            let c: usize = words[lo..hi].iter().map(|w| w.count_ones() as usize).sum();
            total += c;
            in_super += c;
        }
        superblock_ranks.set(n_super, total as u64);

        let sample_rate = (lg * lg).max(1);
        let n_samples = total.div_ceil(sample_rate);
        let mut select_samples = IntVec::with_max(n_samples, n_super as u64);
        let mut seen = 0usize;
        let mut next = 0usize;
        for (wi, &w) in words.iter().enumerate() {
            let c = w.count_ones() as usize;
            while next < n_samples && next * sample_rate < seen + c {
                select_samples.set(next, ((wi * 64) / superblock_bits) as u64);
                next += 1;
            }
            seen += c;
        }

        Self {
            bits,
            ones: total,
            superblock_bits,
            superblock_ranks,
            block_ranks,
            sample_rate,
            select_samples,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.ones
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn bitvec(&self) -> &BitVec {
        &self.bits
    }

    /// Number of 1-bits at positions `< i`.
    pub fn rank(&self, i: usize) -> Result<usize> {
        if i > self.len() {
            return Err(Error::OutOfRange { index: i, len: self.len() });
        }
        Ok(self.rank_unchecked(i))
    }

    #[inline]
    pub fn rank_unchecked(&self, i: usize) -> usize {
        debug_assert!(i <= self.len());
        if i == self.len() {
            return self.ones;
        }
        let sb = i / self.superblock_bits;
        let b = i / BLOCK_BITS;
        let mut r = self.superblock_ranks.get(sb) as usize + self.block_ranks.get(b) as usize;
        let w_end = i / 64;
        for w in b * BLOCK_WORDS..w_end {
            r += self.bits.word(w).count_ones() as usize;
        }
        let off = i % 64;
        if off > 0 {
            r += (self.bits.word(w_end) & ((1u64 << off) - 1)).count_ones() as usize;
        }
        r
    }

    /// 0-indexed position of the `k`-th 1-bit, `k` counted from 1.
    pub fn select(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.ones {
            return Err(Error::NotFound { rank: k, ones: self.ones });
        }
        Ok(self.select_unchecked(k))
    }

    #[inline]
    pub fn select_unchecked(&self, k: usize) -> usize {
        debug_assert!(k >= 1 && k <= self.ones);
        let target = k - 1;
        let j = target / self.sample_rate;
        let mut lo = self.select_samples.get(j) as usize;
        let mut hi = if j + 1 < self.select_samples.len() {
            self.select_samples.get(j + 1) as usize
        } else {
            self.superblock_ranks.len() - 2
        };
        // last superblock whose starting rank is <= target
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.superblock_ranks.get(mid) as usize <= target {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let sb = lo;
        let base = self.superblock_ranks.get(sb) as usize;
        let blocks_per_super = self.superblock_bits / BLOCK_BITS;
        let first_block = sb * blocks_per_super;
        let last_block = (first_block + blocks_per_super).min(self.block_ranks.len());
        let mut blk = first_block;
        while blk + 1 < last_block && base + self.block_ranks.get(blk + 1) as usize <= target {
            blk += 1;
        }
        let mut remaining = target - base - self.block_ranks.get(blk) as usize;
        let mut w = blk * BLOCK_WORDS;
        loop {
            let word = self.bits.word(w);
            let c = word.count_ones() as usize;
            if remaining < c {
                return w * 64 + select_in_word(word, remaining as u32) as usize;
            }
            remaining -= c;
            w += 1;
        }
    }
}

impl SpaceUsage for IndexableDictionary {
    fn bits(&self) -> usize {
        self.bits.len() + self.overhead_bits()
    }
}

impl IndexableDictionary {
    /// Bits used by the rank and select directories alone.
    pub fn overhead_bits(&self) -> usize {
        self.superblock_ranks.bits() + self.block_ranks.bits() + self.select_samples.bits()
    }
}
