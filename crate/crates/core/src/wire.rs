//! JSON wire forms shared by the library reports and the CLI.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::arith::{ArithError, Ring};

pub(crate) fn big_to_number(value: &BigInt) -> Number {
    Number::from_str(&value.to_string()).expect("decimal integers are valid JSON numbers")
}

pub(crate) fn number_to_big(n: &Number) -> Option<BigInt> {
    BigInt::from_str(&n.to_string()).ok()
}

/// `"Z"` or `{"Fp": p}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingWire {
    #[serde(rename = "Z")]
    Z,
    Fp(u64),
}

impl From<Ring> for RingWire {
    fn from(ring: Ring) -> Self {
        match ring {
            Ring::Integers => RingWire::Z,
            Ring::PrimeField(p) => RingWire::Fp(p.get()),
        }
    }
}

impl TryFrom<RingWire> for Ring {
    type Error = ArithError;

    fn try_from(wire: RingWire) -> Result<Self, Self::Error> {
        match wire {
            RingWire::Z => Ok(Ring::Integers),
            RingWire::Fp(p) => Ring::prime_field(p),
        }
    }
}
