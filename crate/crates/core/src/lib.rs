//! Abelian powers in paper-folding words.
//!
//! A paper-folding word `f_1 f_2 ...` is determined by an instruction
//! sequence `b_0 b_1 ...` over `{+1, -1}` through `f_i = (-1)^j b_k` where
//! `i = 2^k (2j + 1)`. This crate constructs, for any eventually periodic
//! instruction sequence and any `m`, explicit `(s, d)` such that the factor
//! `f_{s+1} ... f_{s+m·d}` splits into `m` blocks of length `d` with equal
//! numbers of -1s, and checks such claims by brute force.
//!
//! The arithmetic is generic over [`Natural`]; the aliases below fix the
//! scalar to [`BigUint`] for constructions and to `u64` for scans.

pub mod constructor;
pub mod error;
pub mod folding_word;
pub mod instruction_seq;
pub mod natural;
pub mod oracle;
pub mod record;
pub mod strata;

pub use num_bigint::BigUint;

pub use constructor::{
    build_abelian_power, check_precondition, combine, constant_family, ell_base, ell_t, CombineError,
    ConstructionError, ConstructionParams, EllTable,
};
pub use error::{Error, Result};
pub use folding_word::{count_minus, decompose, letter, minus_one_order, prefix, SCAN_BOUND};
pub use instruction_seq::{InstructionSeq, Letter, SeqSpecError};
pub use natural::Natural;
pub use oracle::{find_minimal_power, is_abelian_power, scan_d_count, scan_delta, SearchBounds};
pub use record::WitnessRecord;
pub use strata::{d_count, delta, e_vector, epsilon, expected_count, gmod_gt, DeltaVector, Stratum, StratumVector};

/// Arbitrary-precision positions, offsets and lengths.
pub type Nat = BigUint;
/// Positions within the scan bound.
pub type Pos = u64;

pub type Span = constructor::Span<Nat>;
pub type PowerWitness = constructor::PowerWitness<Nat>;
pub type CombineStep = constructor::CombineStep<Nat>;
pub type OddPartDecomposition = folding_word::OddPartDecomposition<Nat>;
pub type ScanSpan = constructor::Span<Pos>;
