use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::rational::{fmt_q, parse_q, Q};

/// A rational weight `0 <= α <= 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alpha(Q);

impl Alpha {
    pub fn new(value: Q) -> Result<Self, Error> {
        if value.is_negative() || value > Q::one() {
            return Err(Error::Invalid(format!("alpha {value} is outside [0, 1]")));
        }
        Ok(Alpha(value))
    }

    pub fn zero() -> Self {
        Alpha(Q::zero())
    }

    pub fn one() -> Self {
        Alpha(Q::one())
    }

    pub fn value(&self) -> &Q {
        &self.0
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let value = parse_q(s).ok_or_else(|| Error::Invalid(format!("`{s}` is not a rational p/q")))?;
        Alpha::new(value)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q(&self.0))
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
