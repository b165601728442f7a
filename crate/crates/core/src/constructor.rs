//! Explicit construction of abelian powers.
//!
//! For `m = 2^q` the construction picks `u ≥ 1`, `t = u + q`, and the
//! `m` progressions `(ℓ_{t-1} + 2^u·p, 2^u)`, `p = 0..m`, whose Δ-vectors
//! sum to the constant vector `m - 1`. These are then folded together one
//! at a time with [`combine`], which adds Δ-vectors by scaling the second
//! progression by a power of two large enough (and synchronized with the
//! instruction sequence) that the two sets of corrections cannot interact.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::instruction_seq::{InstructionSeq, Letter};
use crate::natural::{self, Natural};
use crate::strata::{self, DeltaVector};

/// A progression of `m` blocks of length `d` starting after position `s`,
/// i.e. the factor `f_{s+1} ... f_{s+m·d}` cut into equal pieces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Span<T> {
    pub s: T,
    pub d: T,
}

impl<T> Span<T> {
    pub fn new(s: T, d: T) -> Self {
        Span { s, d }
    }
}

impl<T: Natural> Span<T> {
    /// `s + m·d`, the last position covered by `m` blocks.
    pub fn end(&self, m: usize) -> Result<T, Error> {
        natural::progression(&self.s, &self.d, m)
    }
}

/// Starting offsets `ℓ(x_0, x_1, x_2, x_3)` of a gap of three +1s that no
/// -1 of order 0..=3 (under instructions `x_0..x_3`) or of any higher order
/// can enter.
///
/// Row `i` is the assignment where bit `k` of `i` set means `x_k = -1`.
pub struct EllTable;

impl EllTable {
    const VALUES: [u64; 16] = [7, 1, 3, 5, 7, 9, 11, 5, 23, 1, 3, 21, 23, 9, 11, 21];

    fn index(x: [Letter; 4]) -> usize {
        x.iter()
            .enumerate()
            .map(|(k, &l)| usize::from(l == Letter::Minus) << k)
            .sum()
    }

    pub fn get(x: [Letter; 4]) -> u64 {
        Self::VALUES[Self::index(x)]
    }

    /// All 16 rows in table order.
    pub fn rows() -> impl Iterator<Item = ([Letter; 4], u64)> {
        (0..16usize).map(|i| {
            let x = std::array::from_fn(|k| if i >> k & 1 == 1 { Letter::Minus } else { Letter::Plus });
            (x, Self::VALUES[i])
        })
    }
}

pub fn ell_base(x0: Letter, x1: Letter, x2: Letter, x3: Letter) -> u64 {
    EllTable::get([x0, x1, x2, x3])
}

/// `ℓ_t = 2^t·ℓ(b_t, b_{t+1}, b_{t+2}, b_{t+3})`. The interval
/// `(ℓ_t, ℓ_t + 2^(t+2) - 1]` holds no -1 of order `t` or higher.
pub fn ell_t<T: Natural>(seq: &InstructionSeq, t: u64) -> Result<T, Error> {
    let base = ell_base(
        seq.letter_at(t),
        seq.letter_at(t + 1),
        seq.letter_at(t + 2),
        seq.letter_at(t + 3),
    );
    natural::shl(&T::from_u64_exact(base), t)
}

/// The hypotheses under which Δ-vectors add, each as its own failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombineError {
    #[error("parity hypothesis violated: the scaled progression needs even s and d, got s={s}, d={d}")]
    Parity { s: String, d: String },
    #[error("magnitude hypothesis violated: 2^{r} does not exceed s + m·d = {bound}")]
    Magnitude { r: u64, bound: String },
    #[error("synchronization hypothesis violated: E-vectors differ at order {order} but b_{order} != b_{order}+{r}")]
    Synchronization { order: u64, r: u64 },
    #[error(transparent)]
    Strata(#[from] Error),
}

/// First order `i` at which the second progression distinguishes the two
/// letters while `b_i != b_{i+r}`, if any.
fn first_unsynchronized<T: Natural>(
    seq: &InstructionSeq,
    second: &Span<T>,
    m: usize,
    r: u64,
) -> Result<Option<u64>, Error> {
    let top = second.end(m)?.bit_length();
    for i in 0..=top {
        if seq.letter_at(i) == seq.letter_at(i + r) {
            continue;
        }
        let plus = strata::e_vector(i, Letter::Plus, &second.s, &second.d, m)?;
        let minus = strata::e_vector(i, Letter::Minus, &second.s, &second.d, m)?;
        if plus != minus {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Whether every order at which `E_{i,+1}` and `E_{i,-1}` of `(s_b, d_b, m)`
/// differ has `b_i = b_{i+r}`. Orders above `bit_length(s_b + m·d_b)` carry
/// all-zero E-vectors for both letters and are skipped.
pub fn check_precondition<T: Natural>(seq: &InstructionSeq, s_b: &T, d_b: &T, m: usize, r: u64) -> Result<bool, Error> {
    let second = Span::new(s_b.clone(), d_b.clone());
    Ok(first_unsynchronized(seq, &second, m, r)?.is_none())
}

/// `(s_a + 2^r·s_b, d_a + 2^r·d_b)`, whose Δ-vector is `Δ(a) + Δ(b)`.
pub fn combine<T: Natural>(
    seq: &InstructionSeq,
    a: &Span<T>,
    b: &Span<T>,
    m: usize,
    r: u64,
) -> Result<Span<T>, CombineError> {
    if b.s.is_odd() || b.d.is_odd() {
        return Err(CombineError::Parity {
            s: b.s.to_string(),
            d: b.d.to_string(),
        });
    }
    let bound = a.end(m)?;
    let scale: T = natural::pow2(r)?;
    if scale <= bound {
        return Err(CombineError::Magnitude {
            r,
            bound: bound.to_string(),
        });
    }
    if let Some(order) = first_unsynchronized(seq, b, m, r)? {
        return Err(CombineError::Synchronization { order, r });
    }
    let s = natural::checked_add(&a.s, &natural::checked_mul(&scale, &b.s)?)?;
    let d = natural::checked_add(&a.d, &natural::checked_mul(&scale, &b.d)?)?;
    Ok(Span { s, d })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("an abelian power needs at least one block")]
    ZeroPower,
    #[error("constant family needs t >= 2 and 1 <= u < t, got t={t}, u={u}")]
    FamilyRange { t: u64, u: u64 },
    #[error("no shift r synchronizes instructions {lo}..={hi}")]
    NoShift { lo: u64, hi: u64 },
    #[error("constructed Δ-vector ({0}) is not constant")]
    NotConstant(DeltaVector),
    #[error(transparent)]
    Combine(#[from] CombineError),
    #[error(transparent)]
    Strata(#[from] Error),
}

/// The `2^(t-u)` progressions `(ℓ_{t-1} + 2^u·p, 2^u)`; at `m = 2^(t-u)`
/// their Δ-vectors sum to the constant vector `2^(t-u) - 1`.
pub fn constant_family<T: Natural>(seq: &InstructionSeq, t: u64, u: u64) -> Result<Vec<Span<T>>, ConstructionError> {
    if t < 2 || u == 0 || u >= t {
        return Err(ConstructionError::FamilyRange { t, u });
    }
    let start: T = ell_t(seq, t - 1)?;
    let step: T = natural::pow2(u)?;
    let count = 1usize
        .checked_shl((t - u) as u32)
        .filter(|_| t - u < usize::BITS as u64)
        .ok_or(Error::Overflow)?;
    (0..count)
        .map(|p| Ok(Span::new(natural::progression(&start, &step, p)?, step.clone())))
        .collect()
}

/// One fold of the construction: the progression added and the shift used.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CombineStep<T> {
    pub base_s: T,
    pub base_d: T,
    pub r: u64,
}

/// `u`, `t = u + q` and `q = log2` of the power actually constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub u: u64,
    pub t: u64,
    pub q: u64,
}

impl ConstructionParams {
    /// Number of blocks the construction balances, `2^q`.
    pub fn blocks(&self) -> usize {
        1usize << self.q
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerWitness<T> {
    pub s: T,
    pub d: T,
    pub m: usize,
    pub delta: DeltaVector,
    pub trace: Vec<CombineStep<T>>,
    pub params: ConstructionParams,
}

impl<T: Natural> PowerWitness<T> {
    pub fn span(&self) -> Span<T> {
        Span::new(self.s.clone(), self.d.clone())
    }

    /// Recomputes Δ from `(s, d, m)` and checks it is the stored, constant vector.
    pub fn verify(&self, seq: &InstructionSeq) -> Result<bool, Error> {
        let fresh = strata::delta(seq, &self.s, &self.d, self.m)?;
        Ok(fresh == self.delta && fresh.is_constant())
    }

    /// Re-runs the recorded combine steps from the family's first progression.
    pub fn replay(&self, seq: &InstructionSeq) -> Result<Span<T>, ConstructionError> {
        if self.params.q == 0 {
            return Ok(Span::new(T::zero(), T::one()));
        }
        let blocks = self.params.blocks();
        let mut acc = Span::new(ell_t(seq, self.params.t - 1)?, natural::pow2(self.params.u)?);
        for step in &self.trace {
            let base = Span::new(step.base_s.clone(), step.base_d.clone());
            acc = combine(seq, &acc, &base, blocks, step.r)?;
        }
        Ok(acc)
    }
}

/// Parameters used for `m` blocks: the power of two `2^q >= m`,
/// `u = max(1, preperiod + 1)` so the synchronized window `u-1 ..= t+2`
/// sits in the periodic part, and `t = u + q`.
pub fn construction_params(seq: &InstructionSeq, m: usize) -> Result<ConstructionParams, ConstructionError> {
    if m == 0 {
        return Err(ConstructionError::ZeroPower);
    }
    let q = m.next_power_of_two().trailing_zeros() as u64;
    let u = (seq.preperiod().len() as u64 + 1).max(1);
    Ok(ConstructionParams { u, t: u + q, q })
}

/// Builds `(s, d)` such that `f_{s+1} ... f_{s+m·d}` is an abelian `m`-power.
///
/// Non-powers of two are built for the next power of two and reported with
/// only the first `m` blocks, which stay pairwise abelian-equivalent.
pub fn build_abelian_power<T: Natural>(seq: &InstructionSeq, m: usize) -> Result<PowerWitness<T>, ConstructionError> {
    let params = construction_params(seq, m)?;
    if params.q == 0 {
        let (s, d) = (T::zero(), T::one());
        let delta = strata::delta(seq, &s, &d, 1)?;
        return Ok(PowerWitness {
            s,
            d,
            m,
            delta,
            trace: Vec::new(),
            params,
        });
    }

    let blocks = params.blocks();
    let family = constant_family::<T>(seq, params.t, params.u)?;
    let (lo, hi) = (params.u - 1, params.t + 2);
    let mut acc = family[0].clone();
    let mut trace = Vec::with_capacity(blocks - 1);
    for base in &family[1..] {
        let bound = acc.end(blocks)?;
        let r = seq
            .find_shift(lo, hi, &bound)
            .ok_or(ConstructionError::NoShift { lo, hi })?;
        acc = combine(seq, &acc, base, blocks, r)?;
        trace.push(CombineStep {
            base_s: base.s.clone(),
            base_d: base.d.clone(),
            r,
        });
    }

    let delta = strata::delta(seq, &acc.s, &acc.d, m)?;
    if !delta.is_constant() {
        return Err(ConstructionError::NotConstant(delta));
    }
    Ok(PowerWitness {
        s: acc.s,
        d: acc.d,
        m,
        delta,
        trace,
        params,
    })
}
