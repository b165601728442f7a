//! Closed-form counting of -1s stratified by order.
//!
//! A -1 of order `k` sits at a position `i ≡ (2 + b)·2^k (mod 2^(k+2))`.
//! Over an interval `(l, n]` the number of such positions is
//! `⌊(n - l) / 2^(k+2)⌋ + ε`, where the 0/1 correction `ε` is decided by a
//! single comparison of residues. Collecting `ε` over a progression of
//! equal blocks gives an E-vector; summing E-vectors over all orders, each
//! with its own instruction letter, gives the Δ-vector: the per-block
//! excess of -1s over what the block length alone guarantees. A constant
//! Δ-vector is exactly an abelian power.

use std::fmt;
use std::ops::Add;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instruction_seq::{InstructionSeq, Letter};
use crate::natural::{self, Natural};

/// A single order `k` paired with the instruction letter governing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Stratum {
    pub k: u64,
    pub b: Letter,
}

impl Stratum {
    pub fn new(k: u64, b: Letter) -> Self {
        Stratum { k, b }
    }

    /// `2^(k+2)`.
    pub fn modulus<T: Natural>(&self) -> Result<T> {
        natural::pow2(self.k + 2)
    }

    /// `(2 + b)·2^k`, the residue class of -1s of this order.
    pub fn residue<T: Natural>(&self) -> Result<T> {
        let coeff = match self.b {
            Letter::Plus => 3u64,
            Letter::Minus => 1u64,
        };
        natural::shl(&T::from_u64_exact(coeff), self.k)
    }

    pub fn epsilon<T: Natural>(&self, l: &T, n: &T) -> Result<u8> {
        epsilon(self.k, self.b, l, n)
    }

    pub fn d_count<T: Natural>(&self, l: &T, n: &T) -> Result<T> {
        d_count(self.k, self.b, l, n)
    }
}

/// `(a mod n) > (b mod n)` with both residues taken in `0..n`.
pub fn gmod_gt<T: Integer + Clone>(a: &T, b: &T, n: &T) -> Result<bool> {
    if *n <= T::zero() {
        return Err(Error::NonPositiveModulus);
    }
    Ok(a.mod_floor(n) > b.mod_floor(n))
}

fn check_interval<T: Natural>(l: &T, n: &T) -> Result<()> {
    if l > n {
        Err(Error::reversed(l, n))
    } else {
        Ok(())
    }
}

// Assumes l <= n.
fn epsilon_unchecked<T: Natural>(k: u64, b: Letter, l: &T, n: &T) -> Result<u8> {
    // No position of order k lies below 2^k, so nothing can be added.
    if k >= n.bit_length() {
        return Ok(0);
    }
    let stratum = Stratum::new(k, b);
    let modulus: T = stratum.modulus()?;
    let target_minus_one = stratum.residue::<T>()? - T::one();
    let length = (n.clone() - l.clone()).mod_floor(&modulus);
    // ((2 + b)·2^k - (l + 1)) mod 2^(k+2), kept nonnegative throughout.
    let l_res = l.mod_floor(&modulus);
    let threshold = if target_minus_one >= l_res {
        target_minus_one - l_res
    } else {
        modulus - (l_res - target_minus_one)
    };
    Ok(u8::from(length > threshold))
}

/// The 0/1 correction: 1 iff `n - l ⋗ (2 + b)·2^k - (l + 1) (mod 2^(k+2))`.
pub fn epsilon<T: Natural>(k: u64, b: Letter, l: &T, n: &T) -> Result<u8> {
    check_interval(l, n)?;
    epsilon_unchecked(k, b, l, n)
}

/// Number of `i` in `(l, n]` with `i ≡ (2 + b)·2^k (mod 2^(k+2))`.
pub fn d_count<T: Natural>(k: u64, b: Letter, l: &T, n: &T) -> Result<T> {
    check_interval(l, n)?;
    let full = match T::pow2(k + 2) {
        Some(modulus) => (n.clone() - l.clone()) / modulus,
        None => T::zero(),
    };
    let eps = epsilon_unchecked(k, b, l, n)?;
    Ok(full + T::from_u64_exact(eps as u64))
}

/// `Σ_k ⌊d / 2^(k+2)⌋`: the -1s any block of length `d` is guaranteed.
pub fn expected_count<T: Natural>(d: &T) -> Result<T> {
    if d.is_zero() {
        return Err(Error::ZeroLength);
    }
    let mut total = T::zero();
    for k in 0..=d.bit_length() {
        match T::pow2(k + 2) {
            Some(p) => total = total + d.clone() / p,
            None => break,
        }
    }
    Ok(total)
}

/// One ε per block: entry `j` is `ε(s + j·d, s + (j+1)·d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StratumVector(Vec<u8>);

impl StratumVector {
    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl From<Vec<u8>> for StratumVector {
    fn from(v: Vec<u8>) -> Self {
        assert!(v.iter().all(|&e| e <= 1), "stratum vector entries are 0 or 1");
        StratumVector(v)
    }
}

impl fmt::Display for StratumVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.0)
    }
}

/// Per-block excess of -1s over [`expected_count`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DeltaVector(Vec<u64>);

impl DeltaVector {
    pub fn zero(m: usize) -> Self {
        DeltaVector(vec![0; m])
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// The common value when every entry agrees.
    pub fn constant_value(&self) -> Option<u64> {
        match self.0.first() {
            Some(&v) if self.is_constant() => Some(v),
            _ => None,
        }
    }

    fn accumulate(&mut self, e: &StratumVector) {
        for (acc, &x) in self.0.iter_mut().zip(e.entries()) {
            *acc += x as u64;
        }
    }
}

impl From<Vec<u64>> for DeltaVector {
    fn from(v: Vec<u64>) -> Self {
        DeltaVector(v)
    }
}

impl Add<&DeltaVector> for &DeltaVector {
    type Output = DeltaVector;

    fn add(self, rhs: &DeltaVector) -> DeltaVector {
        assert_eq!(self.len(), rhs.len(), "adding Δ-vectors of different lengths");
        DeltaVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for DeltaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.0)
    }
}

fn write_spaced<V: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[V]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Block boundaries `s, s + d, ..., s + m·d`.
fn boundaries<T: Natural>(s: &T, d: &T, m: usize) -> Result<Vec<T>> {
    if d.is_zero() {
        return Err(Error::ZeroLength);
    }
    if m == 0 {
        return Err(Error::ZeroBlocks);
    }
    let mut out = Vec::with_capacity(m + 1);
    out.push(s.clone());
    for _ in 0..m {
        let next = natural::checked_add(out.last().expect("nonempty"), d)?;
        out.push(next);
    }
    Ok(out)
}

fn e_vector_on<T: Natural>(k: u64, b: Letter, bounds: &[T]) -> Result<StratumVector> {
    bounds
        .windows(2)
        .map(|w| epsilon_unchecked(k, b, &w[0], &w[1]))
        .collect::<Result<Vec<_>>>()
        .map(StratumVector)
}

/// `E_{k,b}(s, d, m)`.
pub fn e_vector<T: Natural>(k: u64, b: Letter, s: &T, d: &T, m: usize) -> Result<StratumVector> {
    e_vector_on(k, b, &boundaries(s, d, m)?)
}

/// `Δ(s, d, m) = Σ_k E_{k,b_k}(s, d, m)`.
///
/// The sum stops at `k = bit_length(s + m·d)`: beyond it `2^k` exceeds every
/// block end and all corrections vanish.
pub fn delta<T: Natural>(seq: &InstructionSeq, s: &T, d: &T, m: usize) -> Result<DeltaVector> {
    let bounds = boundaries(s, d, m)?;
    let k_max = bounds.last().expect("m >= 1").bit_length();
    let mut acc = DeltaVector::zero(m);
    for k in 0..=k_max {
        acc.accumulate(&e_vector_on(k, seq.letter_at(k), &bounds)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::{BigInt, BigUint};
    use Letter::{Minus, Plus};

    fn enumerate(k: u64, b: Letter, l: u64, n: u64) -> u64 {
        let modulus = 1u64 << (k + 2);
        let target = (2 + b.value() as i64) as u64 * (1 << k);
        (l + 1..=n).filter(|i| i % modulus == target).count() as u64
    }

    #[test]
    fn gmod_gt_examples() {
        assert!(!gmod_gt(&6, &2, &4).unwrap());
        assert!(gmod_gt(&6, &5, &8).unwrap());
        assert!(!gmod_gt(&7, &7, &5).unwrap());
        // -1 mod 4 = 3 > 2.
        assert!(gmod_gt(&-1i64, &2, &4).unwrap());
        assert_eq!(gmod_gt(&1, &2, &0), Err(Error::NonPositiveModulus));
    }

    #[test]
    fn d_count_examples() {
        assert_eq!(d_count(0, Plus, &0u64, &8).unwrap(), 2);
        assert_eq!(d_count(3, Minus, &17u64, &17).unwrap(), 0);
        assert_eq!(d_count(1, Plus, &28u64, &43).unwrap(), 2);
        assert!(d_count(1, Plus, &5u64, &4).is_err());
    }

    #[test]
    fn epsilon_matches_interval_figure() {
        // Rows l = 0..=8 of the (l, l+6] picture: (ε_{0,1}, ε_{1,1}).
        let rows = [(0, 1), (1, 1), (1, 1), (0, 1), (0, 1), (1, 1), (1, 0), (0, 0), (0, 1)];
        for (l, &(e0, e1)) in rows.iter().enumerate() {
            let l = l as u64;
            assert_eq!(epsilon(0, Plus, &l, &(l + 6)).unwrap(), e0, "ε_0 at l={l}");
            assert_eq!(epsilon(1, Plus, &l, &(l + 6)).unwrap(), e1, "ε_1 at l={l}");
        }
        assert!(epsilon(0, Plus, &3u64, &2).is_err());
    }

    #[test]
    fn epsilon_agrees_with_signed_residue_comparison() {
        for k in 0..6u64 {
            for b in Letter::BOTH {
                for l in 0..80u64 {
                    for n in l..l + 70 {
                        let m = BigInt::from(1u64 << (k + 2));
                        let rhs = BigInt::from((2 + b.value() as i64) << k) - BigInt::from(l + 1);
                        let expect = gmod_gt(&BigInt::from(n - l), &rhs, &m).unwrap();
                        assert_eq!(epsilon(k, b, &l, &n).unwrap(), u8::from(expect));
                    }
                }
            }
        }
    }

    #[test]
    fn d_count_matches_enumeration_small() {
        for k in 0..5 {
            for b in Letter::BOTH {
                for l in 0..70u64 {
                    for n in l..140 {
                        assert_eq!(d_count(k, b, &l, &n).unwrap(), enumerate(k, b, l, n));
                    }
                }
            }
        }
    }

    #[test]
    fn fixed_width_overflow_is_reported() {
        let n = u64::MAX >> 1;
        assert_eq!(epsilon(62, Plus, &0u64, &n), Err(Error::Overflow));
        // Same interval fits comfortably in u128.
        assert!(epsilon(62, Plus, &0u128, &(n as u128)).is_ok());
    }

    #[test]
    fn expected_count_examples() {
        assert_eq!(expected_count(&1u64).unwrap(), 0);
        assert_eq!(expected_count(&2u64).unwrap(), 0);
        assert_eq!(expected_count(&33u64).unwrap(), 15);
        assert_eq!(expected_count(&0u64), Err(Error::ZeroLength));
        assert_eq!(
            expected_count(&BigUint::from(532_610u32)).unwrap(),
            BigUint::from(expected_count(&532_610u64).unwrap())
        );
    }

    #[test]
    fn e_vector_examples() {
        let e = |k, s: u64, d: u64| e_vector(k, Plus, &s, &d, 4).unwrap();
        assert_eq!(e(0, 28, 2), vec![0, 1, 0, 1].into());
        assert_eq!(e(1, 28, 2), vec![1, 0, 0, 0].into());
        assert_eq!(e(1, 34, 2), vec![0, 1, 0, 0].into());
        assert_eq!(e_vector(0, Plus, &0u64, &0, 4), Err(Error::ZeroLength));
        assert_eq!(e_vector(0, Plus, &0u64, &1, 0), Err(Error::ZeroBlocks));
    }

    #[test]
    fn delta_examples() {
        let reg = InstructionSeq::regular();
        let d = |s: u64, d: u64| delta(&reg, &s, &d, 4).unwrap();
        assert_eq!(d(28, 2), vec![1, 1, 0, 1].into());
        assert_eq!(d(6, 33), vec![1, 1, 1, 1].into());
        assert_eq!(d(6, 17), vec![1, 1, 2, 0].into());
        assert_eq!(d(9_045_916, 532_610), vec![3, 3, 3, 3].into());
    }

    #[test]
    fn delta_vector_helpers() {
        let a = DeltaVector::from(vec![1, 1, 0, 1]);
        let b = DeltaVector::from(vec![1, 0, 1, 1]);
        assert_eq!(&a + &b, vec![2, 1, 1, 2].into());
        assert_eq!(a.constant_value(), None);
        assert_eq!(DeltaVector::from(vec![3, 3]).constant_value(), Some(3));
        assert_eq!(a.to_string(), "1 1 0 1");
    }
}
