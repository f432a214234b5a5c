use super::{BitVec, IndexableDictionary, SpaceUsage};
use crate::{Error, Result};

/// Packs `ℓ` variable-length records into one payload of `Σ d_k` bits.
///
/// A marker bitvector of length `ℓ + Σ d_k` has a one at (1-indexed) position
/// `k + Σ_{j<k} d_j`, so the payload offset of record `k` is
/// `select(k) − k` in 1-indexed terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StaticAllocator {
    markers: IndexableDictionary,
    total: usize,
}

impl StaticAllocator {
    pub fn new<I: IntoIterator<Item = usize>>(sizes: I) -> Self {
        let sizes: Vec<usize> = sizes.into_iter().collect();
        let total: usize = sizes.iter().sum();
        let mut bits = BitVec::new(sizes.len() + total);
        let mut pos = 0;
        for &d in &sizes {
            bits.set(pos, true);
            pos += 1 + d;
        }
        Self {
            markers: IndexableDictionary::new(bits),
            total,
        }
    }

    /// Rebuilds an allocator from its marker bitvector.
    pub(crate) fn from_markers(bits: BitVec) -> Self {
        let total = bits.len() - bits.count_ones();
        Self {
            markers: IndexableDictionary::new(bits),
            total,
        }
    }

    /// Number of records.
    #[inline]
    pub fn len(&self) -> usize {
        self.markers.count_ones()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Total payload bits `L`.
    #[inline]
    pub fn payload_bits(&self) -> usize {
        self.total
    }

    /// Starting payload offset of record `k` (1-indexed).
    pub fn locate(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.len() {
            return Err(Error::OutOfRange { index: k, len: self.len() });
        }
        Ok(self.locate_unchecked(k))
    }

    #[inline]
    pub fn locate_unchecked(&self, k: usize) -> usize {
        self.markers.select_unchecked(k) + 1 - k
    }

    /// Size in bits of record `k`.
    pub fn size(&self, k: usize) -> usize {
        let start = self.locate_unchecked(k);
        let end = if k == self.len() { self.total } else { self.locate_unchecked(k + 1) };
        end - start
    }

    pub fn markers(&self) -> &IndexableDictionary {
        &self.markers
    }
}

impl SpaceUsage for StaticAllocator {
    fn bits(&self) -> usize {
        self.markers.bits()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn three_records() {
        let a = StaticAllocator::new([3, 1, 2]);
        let ones: Vec<usize> = a.markers().bitvec().ones().map(|p| p + 1).collect();
        assert_eq!(ones, vec![1, 5, 7]);
        assert_eq!(a.locate(2).unwrap(), 3);
        assert_eq!(a.locate(1).unwrap(), 0);
        assert_eq!(a.locate(3).unwrap(), 4);
        assert_eq!(a.size(3), 2);
        assert!(a.locate(4).is_err());
        assert!(a.locate(0).is_err());
    }

    #[test]
    fn single_record() {
        let a = StaticAllocator::new([5]);
        assert_eq!(a.locate(1).unwrap(), 0);
    }

    #[test]
    fn zero_sized_records() {
        let a = StaticAllocator::new([0, 4, 0, 0, 2]);
        let offs: Vec<usize> = (1..=5).map(|k| a.locate(k).unwrap()).collect();
        assert_eq!(offs, vec![0, 0, 4, 4, 4]);
    }

    #[test]
    fn prefix_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sizes: Vec<usize> = (0..100).map(|_| rng.gen_range(1..=64)).collect();
        let a = StaticAllocator::new(sizes.iter().copied());
        let mut acc = 0;
        for (k, &d) in sizes.iter().enumerate() {
            assert_eq!(a.locate(k + 1).unwrap(), acc);
            acc += d;
        }
    }
}
