#![allow(dead_code)]

use paperfold::{InstructionSeq, Letter};
use proptest::prelude::*;
use rand::Rng;

pub fn arb_letter() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::Plus), Just(Letter::Minus)]
}

/// Regular, or a random preperiod (up to 3) followed by a random period (1..=4).
pub fn arb_seq() -> impl Strategy<Value = InstructionSeq> {
    prop_oneof![
        1 => Just(InstructionSeq::regular()),
        4 => (
            prop::collection::vec(arb_letter(), 0..4),
            prop::collection::vec(arb_letter(), 1..5)
        )
            .prop_map(|(pre, per)| InstructionSeq::eventually_periodic(pre, per).unwrap()),
    ]
}

pub fn random_letter<R: Rng>(rng: &mut R) -> Letter {
    if rng.gen_bool(0.5) {
        Letter::Plus
    } else {
        Letter::Minus
    }
}

pub fn random_seq<R: Rng>(rng: &mut R) -> InstructionSeq {
    let pre = (0..rng.gen_range(0..4)).map(|_| random_letter(rng)).collect();
    let per = (0..rng.gen_range(1..5)).map(|_| random_letter(rng)).collect();
    InstructionSeq::eventually_periodic(pre, per).unwrap()
}

/// Definitional count of `i` in `(l, n]` with `i ≡ (2+b)·2^k mod 2^(k+2)`.
pub fn enumerate_stratum(k: u64, b: Letter, l: u64, n: u64) -> u64 {
    let modulus = 1u128 << (k + 2);
    let target = ((2 + b.value() as i64) as u128) << k;
    (l + 1..=n).filter(|&i| i as u128 % modulus == target).count() as u64
}

/// The instruction sequence with `b_t..b_{t+3} = x` and `fill` everywhere else.
pub fn embed(x: [Letter; 4], t: usize, fill: Letter) -> InstructionSeq {
    let mut pre = vec![fill; t];
    pre.extend_from_slice(&x);
    InstructionSeq::eventually_periodic(pre, vec![fill]).unwrap()
}
