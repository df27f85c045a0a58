use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not};

/// Machine-word vertex mask used inside the exact search.
pub(crate) trait Mask:
    Copy
    + Eq
    + BitAnd<Output = Self>
    + BitOr<Output = Self>
    + Not<Output = Self>
    + BitAndAssign
    + BitOrAssign
{
    const BITS: usize;
    const ZERO: Self;

    fn bit(i: usize) -> Self;
    fn low(n: usize) -> Self;
    fn count(self) -> u32;
    fn lowest(self) -> usize;
    fn clear_lowest(self) -> Self;

    #[inline]
    fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// Bits strictly above `i`, within the first `n`.
    #[inline]
    fn above(i: usize, n: usize) -> Self {
        Self::low(n) & !Self::low(i + 1)
    }

    fn ones(self) -> Ones<Self> {
        Ones(self)
    }
}

pub(crate) struct Ones<M>(M);

impl<M: Mask> Iterator for Ones<M> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0.is_zero() {
            None
        } else {
            let i = self.0.lowest();
            self.0 = self.0.clear_lowest();
            Some(i)
        }
    }
}

macro_rules! impl_mask {
    ($t:ty) => {
        impl Mask for $t {
            const BITS: usize = <$t>::BITS as usize;
            const ZERO: Self = 0;

            #[inline]
            fn bit(i: usize) -> Self {
                1 << i
            }

            #[inline]
            fn low(n: usize) -> Self {
                if n >= <Self as Mask>::BITS {
                    !0
                } else {
                    (1 << n) - 1
                }
            }

            #[inline]
            fn count(self) -> u32 {
                self.count_ones()
            }

            #[inline]
            fn lowest(self) -> usize {
                self.trailing_zeros() as usize
            }

            #[inline]
            fn clear_lowest(self) -> Self {
                self & self.wrapping_sub(1)
            }
        }
    };
}

impl_mask!(u64);
impl_mask!(u128);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_helpers() {
        assert_eq!(<u64 as Mask>::low(64), !0u64);
        assert_eq!(<u64 as Mask>::low(3), 0b111);
        assert_eq!(<u64 as Mask>::above(1, 4), 0b1100);
        assert_eq!(<u128 as Mask>::above(126, 128), 1u128 << 127);
        assert_eq!(0b10110u64.ones().collect::<Vec<_>>(), vec![1, 2, 4]);
    }
}
