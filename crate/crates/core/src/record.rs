//! JSON form of a [`PowerWitness`].
//!
//! `s`, `d` and the trace offsets are decimal strings since they outgrow
//! 64 bits for moderate `m`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructor::{CombineStep, ConstructionParams, PowerWitness};
use crate::natural::Natural;
use crate::strata::DeltaVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub base_s: String,
    pub base_d: String,
    pub r: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub s: String,
    pub d: String,
    pub m: usize,
    pub delta: DeltaVector,
    pub params: ConstructionParams,
    pub trace: Vec<StepRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("field `{field}` is not a decimal natural number: {value:?}")]
pub struct RecordError {
    pub field: &'static str,
    pub value: String,
}

fn parse<T: Natural>(field: &'static str, value: &str) -> Result<T, RecordError> {
    let err = || RecordError {
        field,
        value: value.to_owned(),
    };
    if value.is_empty() || !value.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    T::from_str_radix(value, 10).map_err(|_| err())
}

impl<T: Natural> From<&PowerWitness<T>> for WitnessRecord {
    fn from(w: &PowerWitness<T>) -> Self {
        WitnessRecord {
            s: w.s.to_string(),
            d: w.d.to_string(),
            m: w.m,
            delta: w.delta.clone(),
            params: w.params,
            trace: w
                .trace
                .iter()
                .map(|step| StepRecord {
                    base_s: step.base_s.to_string(),
                    base_d: step.base_d.to_string(),
                    r: step.r,
                })
                .collect(),
        }
    }
}

impl WitnessRecord {
    pub fn to_witness<T: Natural>(&self) -> Result<PowerWitness<T>, RecordError> {
        let trace = self
            .trace
            .iter()
            .map(|step| {
                Ok(CombineStep {
                    base_s: parse("trace.base_s", &step.base_s)?,
                    base_d: parse("trace.base_d", &step.base_d)?,
                    r: step.r,
                })
            })
            .collect::<Result<_, RecordError>>()?;
        Ok(PowerWitness {
            s: parse("s", &self.s)?,
            d: parse("d", &self.d)?,
            m: self.m,
            delta: self.delta.clone(),
            trace,
            params: self.params,
        })
    }
}
