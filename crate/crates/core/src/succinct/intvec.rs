use super::{bit_width, BitVec, SpaceUsage};

/// Array of fixed-width unsigned integers packed into a bitvector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntVec {
    bits: BitVec,
    width: usize,
    len: usize,
}

impl IntVec {
    pub fn new(len: usize, width: usize) -> Self {
        assert!(width <= 64);
        Self {
            bits: BitVec::new(len * width),
            width,
            len,
        }
    }

    /// Packs `values` using the smallest width that holds `max_value`.
    pub fn with_max(len: usize, max_value: u64) -> Self {
        Self::new(len, bit_width(max_value))
    }

    pub fn from_slice(values: &[u64]) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        let mut v = Self::with_max(values.len(), max);
        for (i, &x) in values.iter().enumerate() {
            v.set(i, x);
        }
        v
    }

    pub(crate) fn from_parts(bits: BitVec, width: usize, len: usize) -> Self {
        debug_assert_eq!(bits.len(), width * len);
        Self { bits, width, len }
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
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len);
        self.bits.get_bits(i * self.width, self.width)
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: u64) {
        debug_assert!(i < self.len);
        self.bits.set_bits(i * self.width, self.width, value);
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub(crate) fn raw(&self) -> &BitVec {
        &self.bits
    }
}

impl SpaceUsage for IntVec {
    fn bits(&self) -> usize {
        self.bits.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_values() {
        let vals = [0u64, 5, 17, 3, 31, 1];
        let v = IntVec::from_slice(&vals);
        assert_eq!(v.width(), 5);
        assert_eq!(v.iter().collect::<Vec<_>>(), vals);
    }

    #[test]
    fn zero_width_stores_zeros() {
        let v = IntVec::with_max(10, 0);
        assert_eq!(v.width(), 0);
        assert!(v.iter().all(|x| x == 0));
    }
}
