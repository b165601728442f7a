//! The scalar abstraction every position, offset and block length goes through.
//!
//! Positions in a paper-folding word are nonnegative integers, and constructed
//! witnesses quickly outgrow 64 bits. The counting machinery is therefore
//! written once against [`Natural`] and instantiated both for machine words
//! (fast scans, property tests) and for [`BigUint`] (constructions).
//!
//! Fixed-width impls need two bits of headroom: `epsilon` works modulo
//! `2^(k+2)` for orders `k` below the bit length of the interval end, so values
//! must stay below `2^(WIDTH-2)`. Operations report
//! [`Error::Overflow`](crate::Error::Overflow) instead of wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive, Unsigned};

use crate::error::{Error, Result};

pub trait Natural:
    Clone
    + Ord
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Integer
    + Unsigned
    + FromPrimitive
    + ToPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
{
    /// Bit width for fixed-size types, `None` when unbounded.
    const WIDTH: Option<u64>;

    /// Number of significant bits; zero for zero.
    fn bit_length(&self) -> u64;

    /// The 2-adic valuation, `None` for zero.
    fn valuation(&self) -> Option<u64>;

    /// `2^e`, or `None` if it does not fit.
    fn pow2(e: u64) -> Option<Self>;

    fn from_u64_exact(v: u64) -> Self {
        Self::from_u64(v).expect("every Natural holds a u64")
    }
}

macro_rules! impl_natural_prim {
    ($($t:ty),*) => {$(
        impl Natural for $t {
            const WIDTH: Option<u64> = Some(<$t>::BITS as u64);

            #[inline]
            fn bit_length(&self) -> u64 {
                (<$t>::BITS - self.leading_zeros()) as u64
            }

            #[inline]
            fn valuation(&self) -> Option<u64> {
                if *self == 0 {
                    None
                } else {
                    Some(self.trailing_zeros() as u64)
                }
            }

            #[inline]
            fn pow2(e: u64) -> Option<Self> {
                if e < <$t>::BITS as u64 {
                    Some((1 as $t) << e)
                } else {
                    None
                }
            }
        }
    )*};
}

impl_natural_prim!(u64, u128);

impl Natural for BigUint {
    const WIDTH: Option<u64> = None;

    fn bit_length(&self) -> u64 {
        self.bits()
    }

    fn valuation(&self) -> Option<u64> {
        self.trailing_zeros()
    }

    fn pow2(e: u64) -> Option<Self> {
        let mut v = BigUint::from(0u8);
        v.set_bit(e, true);
        Some(v)
    }
}

pub(crate) fn checked_add<T: Natural>(a: &T, b: &T) -> Result<T> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn checked_mul<T: Natural>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub(crate) fn pow2<T: Natural>(e: u64) -> Result<T> {
    T::pow2(e).ok_or(Error::Overflow)
}

/// `a * 2^e`, failing on overflow.
pub(crate) fn shl<T: Natural>(a: &T, e: u64) -> Result<T> {
    if a.is_zero() {
        return Ok(T::zero());
    }
    checked_mul(a, &pow2::<T>(e)?)
}

/// `s + j·d` with overflow reported.
pub(crate) fn progression<T: Natural>(s: &T, d: &T, j: usize) -> Result<T> {
    let j = T::from_usize(j).ok_or(Error::Overflow)?;
    checked_add(s, &checked_mul(d, &j)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_length_and_valuation_agree_across_widths() {
        for v in [0u64, 1, 2, 3, 12, 29, 1 << 40, u64::MAX >> 3] {
            let big = BigUint::from(v);
            assert_eq!(v.bit_length(), big.bit_length());
            assert_eq!((v as u128).bit_length(), big.bit_length());
            assert_eq!(v.valuation(), big.valuation());
        }
        assert_eq!(0u64.bit_length(), 0);
        assert_eq!(36u64.bit_length(), 6);
    }

    #[test]
    fn pow2_respects_width() {
        assert_eq!(u64::pow2(63), Some(1 << 63));
        assert_eq!(u64::pow2(64), None);
        assert_eq!(BigUint::pow2(200).unwrap().bit_length(), 201);
        assert!(shl(&(u64::MAX >> 1), 2).is_err());
        assert_eq!(shl(&0u64, 500).unwrap(), 0);
    }
}
