use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures of the counting and scanning layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("positions start at 1; 0 is not a position")]
    ZeroPosition,
    #[error("interval ({lo}, {hi}] has its lower end above its upper end")]
    ReversedInterval { lo: String, hi: String },
    #[error("block length must be at least 1")]
    ZeroLength,
    #[error("block count must be at least 1")]
    ZeroBlocks,
    #[error("modulus must be positive")]
    NonPositiveModulus,
    #[error("value does not fit the scalar type")]
    Overflow,
    #[error("scan up to position {0} exceeds the scan bound 2^32")]
    ScanBound(String),
    #[error("block {block} holds fewer -1s than its length guarantees")]
    NegativeExcess { block: usize },
}

impl Error {
    pub(crate) fn reversed<T: std::fmt::Display>(lo: &T, hi: &T) -> Self {
        Error::ReversedInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        }
    }
}
