//! Letters of the paper-folding word `f_1 f_2 f_3 ...`, evaluated directly:
//! writing `i = 2^k (2j + 1)`, the letter is `f_i = (-1)^j b_k`.
//!
//! The scanning helpers here are the ground-truth tier and are capped at
//! [`SCAN_BOUND`]; everything formula-based lives in `strata`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instruction_seq::{InstructionSeq, Letter};
use crate::natural::Natural;

/// Largest position a scan may reach.
pub const SCAN_BOUND: u64 = 1 << 32;

// Intervals longer than this are counted in parallel chunks.
const PAR_CHUNK: u64 = 1 << 18;

/// `i = 2^k (2j + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddPartDecomposition<T> {
    pub k: u64,
    pub j: T,
}

impl<T: Natural> OddPartDecomposition<T> {
    pub fn position(&self) -> Result<T> {
        let two = T::from_u64_exact(2);
        let odd = self.j.checked_mul(&two).ok_or(Error::Overflow)? + T::one();
        crate::natural::shl(&odd, self.k)
    }
}

pub fn decompose<T: Natural>(i: &T) -> Result<OddPartDecomposition<T>> {
    let k = i.valuation().ok_or(Error::ZeroPosition)?;
    // 2^k divides i, so 2^k fits whenever i does.
    let odd = i.clone() / T::pow2(k).expect("2^valuation(i) <= i");
    let j = (odd - T::one()) / T::from_u64_exact(2);
    Ok(OddPartDecomposition { k, j })
}

/// `f_i`.
pub fn letter<T: Natural>(seq: &InstructionSeq, i: &T) -> Result<Letter> {
    let OddPartDecomposition { k, j } = decompose(i)?;
    let b = seq.letter_at(k);
    Ok(if j.is_odd() { -b } else { b })
}

/// Letter evaluation for scans: `b_k` for every order a `u64` position can
/// have, packed as a mask of the orders whose instruction is -1.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Scanner {
    minus_orders: u64,
}

impl Scanner {
    pub(crate) fn new(seq: &InstructionSeq) -> Self {
        let minus_orders = (0..64u64)
            .filter(|&k| seq.letter_at(k) == Letter::Minus)
            .fold(0u64, |acc, k| acc | 1 << k);
        Scanner { minus_orders }
    }

    /// Whether `f_i = -1`: bit `k+1` of `i` is the parity of `j`.
    #[inline]
    pub(crate) fn is_minus(&self, i: u64) -> bool {
        debug_assert!(i > 0);
        let k = i.trailing_zeros();
        let j_odd = (i >> k >> 1) & 1;
        (j_odd ^ (self.minus_orders >> k) & 1) == 1
    }

    pub(crate) fn letter(&self, i: u64) -> Letter {
        if self.is_minus(i) {
            Letter::Minus
        } else {
            Letter::Plus
        }
    }

    pub(crate) fn count_minus(&self, lo: u64, hi: u64) -> u64 {
        (lo + 1..hi + 1).map(|i| self.is_minus(i) as u64).sum()
    }
}

/// The order `k` of `f_i` when it is a -1, i.e. when
/// `i ≡ (2 + b_k)·2^k (mod 2^(k+2))` for `k` the valuation of `i`.
pub fn minus_one_order<T: Natural>(seq: &InstructionSeq, i: &T) -> Result<Option<u64>> {
    let k = i.valuation().ok_or(Error::ZeroPosition)?;
    let target = match seq.letter_at(k) {
        Letter::Plus => 3u64,
        Letter::Minus => 1u64,
    };
    let hit = match T::pow2(k + 2) {
        Some(modulus) => {
            let residue = i.mod_floor(&modulus);
            crate::natural::shl(&T::from_u64_exact(target), k).is_ok_and(|c| c == residue)
        }
        // i < 2^(k+2): the residue is i itself, which has the form 2^k·odd.
        None => {
            let odd = i.clone() / T::pow2(k).expect("2^valuation(i) <= i");
            odd == T::from_u64_exact(target)
        }
    };
    Ok(hit.then_some(k))
}

fn check_scan(n: u64) -> Result<()> {
    if n > SCAN_BOUND {
        Err(Error::ScanBound(n.to_string()))
    } else {
        Ok(())
    }
}

/// `f_1 ... f_n`.
pub fn prefix(seq: &InstructionSeq, n: u64) -> Result<Vec<Letter>> {
    check_scan(n)?;
    let scanner = Scanner::new(seq);
    Ok((1..=n).map(|i| scanner.letter(i)).collect())
}

/// Number of -1s among `f_{l+1} ... f_n`, by direct scan.
pub fn count_minus(seq: &InstructionSeq, l: u64, n: u64) -> Result<u64> {
    if l > n {
        return Err(Error::reversed(&l, &n));
    }
    check_scan(n)?;
    let scanner = Scanner::new(seq);
    if n - l <= PAR_CHUNK {
        return Ok(scanner.count_minus(l, n));
    }
    let chunks = (n - l).div_ceil(PAR_CHUNK);
    Ok((0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = l + c * PAR_CHUNK;
            scanner.count_minus(lo, (lo + PAR_CHUNK).min(n))
        })
        .sum())
}
