//! Brute-force ground truth.
//!
//! Nothing here touches the closed forms in `strata`: counts come from
//! enumerating positions and evaluating letters one by one. Everything is
//! limited to [`SCAN_BOUND`].

use rayon::prelude::*;

use crate::constructor::Span;
use crate::error::{Error, Result};
use crate::folding_word::{count_minus, Scanner, SCAN_BOUND};
use crate::instruction_seq::{InstructionSeq, Letter};
use crate::strata::DeltaVector;

/// The grid `0 <= s <= s_max`, `1 <= d <= d_max` searched by
/// [`find_minimal_power`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub s_max: u64,
    pub d_max: u64,
}

impl SearchBounds {
    pub fn new(s_max: u64, d_max: u64) -> Self {
        SearchBounds { s_max, d_max }
    }

    fn reach(&self, m: usize) -> Result<u64> {
        if self.d_max == 0 {
            return Err(Error::ZeroLength);
        }
        let reach = (m as u64)
            .checked_mul(self.d_max)
            .and_then(|x| x.checked_add(self.s_max))
            .ok_or(Error::Overflow)?;
        check_bound(reach)?;
        Ok(reach)
    }
}

fn check_bound(n: u64) -> Result<()> {
    if n > SCAN_BOUND {
        Err(Error::ScanBound(n.to_string()))
    } else {
        Ok(())
    }
}

fn block_end(s: u64, d: u64, m: usize) -> Result<u64> {
    if d == 0 {
        return Err(Error::ZeroLength);
    }
    if m == 0 {
        return Err(Error::ZeroBlocks);
    }
    let end = (m as u64)
        .checked_mul(d)
        .and_then(|x| x.checked_add(s))
        .ok_or(Error::Overflow)?;
    check_bound(end)?;
    Ok(end)
}

/// Counts `i` in `(l, n]` with `i ≡ (2 + b)·2^k (mod 2^(k+2))` one by one.
pub fn scan_d_count(k: u64, b: Letter, l: u64, n: u64) -> Result<u64> {
    if l > n {
        return Err(Error::reversed(&l, &n));
    }
    check_bound(n)?;
    // Every position is below 2^33, so orders past 32 have no members.
    if k > 32 {
        return Ok(0);
    }
    let mask = (1u64 << (k + 2)) - 1;
    let target = ((2 + b.value() as i64) as u64) << k;
    Ok((l + 1..=n).filter(|&i| i & mask == target).count() as u64)
}

fn guaranteed(d: u64) -> u64 {
    (2..64).map(|e| d >> e).sum()
}

/// Per-block -1 counts of `f_{s+1} ... f_{s+m·d}` by scanning.
pub fn scan_block_counts(seq: &InstructionSeq, s: u64, d: u64, m: usize) -> Result<Vec<u64>> {
    block_end(s, d, m)?;
    (0..m as u64)
        .map(|j| count_minus(seq, s + j * d, s + (j + 1) * d))
        .collect()
}

/// Δ by scanning: block counts minus what the length alone guarantees.
pub fn scan_delta(seq: &InstructionSeq, s: u64, d: u64, m: usize) -> Result<DeltaVector> {
    let base = guaranteed(d);
    scan_block_counts(seq, s, d, m)?
        .into_iter()
        .enumerate()
        .map(|(block, c)| c.checked_sub(base).ok_or(Error::NegativeExcess { block }))
        .collect::<Result<Vec<_>>>()
        .map(DeltaVector::from)
}

/// Whether the `m` blocks of length `d` after position `s` all hold the same
/// number of -1s (and hence, having equal length, are permutations of each
/// other).
pub fn is_abelian_power(seq: &InstructionSeq, s: u64, d: u64, m: usize) -> Result<bool> {
    let counts = scan_block_counts(seq, s, d, m)?;
    Ok(counts.windows(2).all(|w| w[0] == w[1]))
}

/// The abelian `m`-power in the bounds with the smallest block length,
/// ties broken by the smallest start. The grid is split across threads by
/// block length; the reduction keeps the first hit in that order, so the
/// result does not depend on scheduling.
pub fn find_minimal_power(seq: &InstructionSeq, m: usize, bounds: SearchBounds) -> Result<Option<Span<u64>>> {
    if m == 0 {
        return Err(Error::ZeroBlocks);
    }
    let reach = bounds.reach(m)?;
    // minus[i] = number of -1s among f_1 .. f_i.
    let mut minus = Vec::with_capacity(reach as usize + 1);
    minus.push(0u32);
    let scanner = Scanner::new(seq);
    let mut acc = 0u32;
    for i in 1..=reach {
        acc += u32::from(scanner.is_minus(i));
        minus.push(acc);
    }
    let count = |lo: u64, hi: u64| minus[hi as usize] - minus[lo as usize];

    Ok((1..=bounds.d_max).into_par_iter().find_map_first(|d| {
        (0..=bounds.s_max)
            .find(|&s| {
                let first = count(s, s + d);
                (1..m as u64).all(|j| count(s + j * d, s + (j + 1) * d) == first)
            })
            .map(|s| Span::new(s, d))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_d_count_examples() {
        assert_eq!(scan_d_count(0, Letter::Plus, 0, 8).unwrap(), 2);
        // 30 and 38.
        assert_eq!(scan_d_count(1, Letter::Plus, 28, 43).unwrap(), 2);
        assert_eq!(scan_d_count(5, Letter::Plus, 0, 50).unwrap(), 0);
        assert_eq!(scan_d_count(40, Letter::Minus, 0, 1000).unwrap(), 0);
        assert!(scan_d_count(0, Letter::Plus, 3, 2).is_err());
    }

    #[test]
    fn scan_delta_examples() {
        let reg = InstructionSeq::regular();
        assert_eq!(scan_delta(&reg, 28, 2, 4).unwrap(), vec![1, 1, 0, 1].into());
        assert_eq!(scan_delta(&reg, 0, 2, 4).unwrap(), vec![0, 1, 1, 1].into());
        assert_eq!(scan_delta(&reg, 6, 1, 4).unwrap(), vec![1, 0, 0, 0].into());
        assert_eq!(scan_delta(&reg, 0, 0, 4), Err(Error::ZeroLength));
        assert!(matches!(scan_delta(&reg, SCAN_BOUND, 1, 1), Err(Error::ScanBound(_))));
    }

    #[test]
    fn guaranteed_matches_floor_sum() {
        assert_eq!(guaranteed(33), 15);
        assert_eq!(guaranteed(1), 0);
        assert_eq!(guaranteed(532_610), 266_301);
    }

    #[test]
    fn is_abelian_power_examples() {
        let reg = InstructionSeq::regular();
        assert!(is_abelian_power(&reg, 6, 33, 4).unwrap());
        assert!(!is_abelian_power(&reg, 6, 17, 4).unwrap());
        let seq: InstructionSeq = "periodic:011".parse().unwrap();
        assert!(is_abelian_power(&seq, 17, 5, 1).unwrap());
    }

    #[test]
    fn find_minimal_power_examples() {
        let reg = InstructionSeq::regular();
        let any = SearchBounds::new(16, 16);
        assert_eq!(find_minimal_power(&reg, 1, any).unwrap(), Some(Span::new(0, 1)));
        // f_1 f_2 = 1 1.
        assert_eq!(
            find_minimal_power(&reg, 2, SearchBounds::new(64, 64)).unwrap(),
            Some(Span::new(0, 1))
        );
        assert_eq!(
            find_minimal_power(&reg, 4, SearchBounds::new(1024, 64)).unwrap(),
            Some(Span::new(62, 5))
        );
        assert_eq!(find_minimal_power(&reg, 4, SearchBounds::new(10, 3)).unwrap(), None);
        assert!(find_minimal_power(&reg, 4, SearchBounds::new(0, 0)).is_err());
        assert!(find_minimal_power(&reg, 2, SearchBounds::new(SCAN_BOUND, 1)).is_err());
    }
}
