//! Instruction sequences `b_0 b_1 b_2 ...` over `{+1, -1}`.
//!
//! Only eventually periodic sequences are representable: a (possibly empty)
//! preperiod followed by a nonempty period repeated forever. The regular
//! sequence is the all-ones case and is kept as a distinct variant only so
//! that it prints back as `regular`.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use thiserror::Error;

use crate::natural::Natural;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(i8)]
pub enum Letter {
    Minus = -1,
    Plus = 1,
}

impl Letter {
    pub const BOTH: [Letter; 2] = [Letter::Plus, Letter::Minus];

    #[inline]
    pub fn value(self) -> i8 {
        self as i8
    }

    /// Encoding used on the command line: '1' is +1 and '0' is -1.
    pub fn to_bit(self) -> char {
        match self {
            Letter::Plus => '1',
            Letter::Minus => '0',
        }
    }

    pub fn from_bit(c: char) -> Option<Letter> {
        match c {
            '1' => Some(Letter::Plus),
            '0' => Some(Letter::Minus),
            _ => None,
        }
    }
}

impl Neg for Letter {
    type Output = Letter;

    fn neg(self) -> Letter {
        match self {
            Letter::Plus => Letter::Minus,
            Letter::Minus => Letter::Plus,
        }
    }
}

impl From<Letter> for i64 {
    fn from(l: Letter) -> i64 {
        l.value() as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Regular,
    EventuallyPeriodic {
        preperiod: Vec<Letter>,
        period: Vec<Letter>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InstructionSeq {
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the period of an instruction sequence must be nonempty")]
pub struct EmptyPeriod;

const PLUS_PERIOD: &[Letter] = &[Letter::Plus];

impl InstructionSeq {
    /// `b_k = +1` for every `k`.
    pub fn regular() -> Self {
        InstructionSeq { repr: Repr::Regular }
    }

    pub fn periodic(period: Vec<Letter>) -> Result<Self, EmptyPeriod> {
        Self::eventually_periodic(Vec::new(), period)
    }

    pub fn eventually_periodic(preperiod: Vec<Letter>, period: Vec<Letter>) -> Result<Self, EmptyPeriod> {
        if period.is_empty() {
            return Err(EmptyPeriod);
        }
        Ok(InstructionSeq {
            repr: Repr::EventuallyPeriodic { preperiod, period },
        })
    }

    pub fn is_regular(&self) -> bool {
        matches!(self.repr, Repr::Regular)
    }

    pub fn preperiod(&self) -> &[Letter] {
        match &self.repr {
            Repr::Regular => &[],
            Repr::EventuallyPeriodic { preperiod, .. } => preperiod,
        }
    }

    pub fn period(&self) -> &[Letter] {
        match &self.repr {
            Repr::Regular => PLUS_PERIOD,
            Repr::EventuallyPeriodic { period, .. } => period,
        }
    }

    /// `b_k`.
    pub fn letter_at(&self, k: u64) -> Letter {
        let pre = self.preperiod();
        let period = self.period();
        if k < pre.len() as u64 {
            pre[k as usize]
        } else {
            period[((k - pre.len() as u64) % period.len() as u64) as usize]
        }
    }

    /// Smallest `r` with `2^r > bound` such that `b_i = b_{i+r}` for every
    /// `i` in `lo..=hi`.
    ///
    /// Candidates start at the bit length of `bound`. Past the preperiod,
    /// whether a shift works depends only on its residue modulo the period,
    /// so one full period of candidates beyond `max(r0, preperiod)` settles
    /// the question. `None` means no shift exists, which can only happen
    /// when the window reaches into the preperiod.
    pub fn find_shift<T: Natural>(&self, lo: u64, hi: u64, bound: &T) -> Option<u64> {
        assert!(lo <= hi, "find_shift window [{lo}, {hi}] is reversed");
        let r0 = bound.bit_length();
        let settled = r0.max(self.preperiod().len() as u64) + self.period().len() as u64;
        (r0..settled).find(|&r| (lo..=hi).all(|i| self.letter_at(i) == self.letter_at(i + r)))
    }
}

impl Default for InstructionSeq {
    fn default() -> Self {
        Self::regular()
    }
}

fn write_bits(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    letters.iter().try_for_each(|l| write!(f, "{}", l.to_bit()))
}

/// Prints the textual form accepted by [`FromStr`].
impl fmt::Display for InstructionSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Regular => f.write_str("regular"),
            Repr::EventuallyPeriodic { preperiod, period } if preperiod.is_empty() => {
                f.write_str("periodic:")?;
                write_bits(f, period)
            }
            Repr::EventuallyPeriodic { preperiod, period } => {
                f.write_str("preperiod:")?;
                write_bits(f, preperiod)?;
                f.write_str(",period:")?;
                write_bits(f, period)
            }
        }
    }
}

/// A malformed sequence spec. `position` is the 0-based character offset of
/// the first character that could not be accepted.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid sequence spec at position {position}: {reason}")]
pub struct SeqSpecError {
    pub position: usize,
    pub reason: &'static str,
}

fn parse_bits(text: &str, offset: usize, allow_empty: bool) -> Result<Vec<Letter>, SeqSpecError> {
    if text.is_empty() && !allow_empty {
        return Err(SeqSpecError {
            position: offset,
            reason: "period must contain at least one bit",
        });
    }
    text.chars()
        .enumerate()
        .map(|(i, c)| {
            Letter::from_bit(c).ok_or(SeqSpecError {
                position: offset + i,
                reason: "expected '1' or '0'",
            })
        })
        .collect()
}

/// Length of the common prefix of `text` and `expected`, in characters.
fn matched_prefix(text: &str, expected: &str) -> usize {
    text.chars().zip(expected.chars()).take_while(|(a, b)| a == b).count()
}

impl FromStr for InstructionSeq {
    type Err = SeqSpecError;

    /// Grammar: `regular` | `periodic:<bits>` | `preperiod:<bits>,period:<bits>`.
    fn from_str(text: &str) -> Result<Self, SeqSpecError> {
        const PERIODIC: &str = "periodic:";
        const PREPERIOD: &str = "preperiod:";
        const PERIOD: &str = ",period:";

        if text == "regular" {
            return Ok(InstructionSeq::regular());
        }
        if let Some(bits) = text.strip_prefix(PERIODIC) {
            let period = parse_bits(bits, PERIODIC.len(), false)?;
            return Ok(InstructionSeq::periodic(period).expect("checked nonempty"));
        }
        if let Some(rest) = text.strip_prefix(PREPERIOD) {
            let split = rest.find(',').unwrap_or(rest.len());
            let preperiod = parse_bits(&rest[..split], PREPERIOD.len(), true)?;
            let tail = &rest[split..];
            let tail_offset = PREPERIOD.len() + split;
            let Some(bits) = tail.strip_prefix(PERIOD) else {
                return Err(SeqSpecError {
                    position: tail_offset + matched_prefix(tail, PERIOD),
                    reason: "expected ',period:<bits>'",
                });
            };
            let period = parse_bits(bits, tail_offset + PERIOD.len(), false)?;
            return Ok(InstructionSeq::eventually_periodic(preperiod, period).expect("checked nonempty"));
        }

        let position = ["regular", PERIODIC, PREPERIOD]
            .iter()
            .map(|kw| matched_prefix(text, kw))
            .max()
            .unwrap_or(0);
        Err(SeqSpecError {
            position,
            reason: "expected 'regular', 'periodic:<bits>' or 'preperiod:<bits>,period:<bits>'",
        })
    }
}
