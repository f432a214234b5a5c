//! Bit-level building blocks: packed bitvectors, rank/select, choice
//! dictionaries, static space allocation and a labelled bit accountant.

mod alloc;
mod bitvec;
mod budget;
mod choice;
mod intvec;
mod rank_select;

pub use alloc::StaticAllocator;
pub use bitvec::BitVec;
pub use budget::{BitBudget, LabelUsage};
pub use choice::ChoiceDictionary;
pub use intvec::IntVec;
pub use rank_select::IndexableDictionary;

/// Number of bits a structure occupies, counting payload and directories.
pub trait SpaceUsage {
    fn bits(&self) -> usize;
}

/// Bits needed to store values in `0..=max`; zero for `max == 0`.
#[inline]
pub fn bit_width(max: u64) -> usize {
    (64 - max.leading_zeros()) as usize
}

/// `⌈log₂ n⌉`, with `ceil_log2(0) = ceil_log2(1) = 0`.
#[inline]
pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        bit_width((n - 1) as u64)
    }
}
