//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q` with integer `p`, `q` (`q != 0`).
pub fn parse_q(text: &str) -> Option<Q> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Q::new(num, den))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn fmt_q(value: &Q) -> String {
    value.to_string()
}

/// Lossy decimal view, for human-facing columns only.
pub fn approx(value: &Q) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn is_integer(value: &Q) -> bool {
    value.denom().is_one()
}

/// Serde adapter writing rationals as strings.
pub mod as_string {
    use super::{fmt_q, parse_q, Q};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let text = String::deserialize(d)?;
        parse_q(&text).ok_or_else(|| D::Error::custom(format!("invalid rational `{text}`")))
    }
}

/// Serde adapter for optional rationals (`null` when absent).
pub mod as_opt_string {
    use super::{fmt_q, parse_q, Q};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_str(&fmt_q(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        match Option::<String>::deserialize(d)? {
            Some(text) => parse_q(&text)
                .map(Some)
                .ok_or_else(|| D::Error::custom(format!("invalid rational `{text}`"))),
            None => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_q("3"), Some(q(3)));
        assert_eq!(parse_q("-9/4"), Some(q_frac(-9, 4)));
        assert_eq!(parse_q(" 10/4 "), Some(q_frac(5, 2)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("0.5"), None);
    }

    #[test]
    fn format_round_trip() {
        for v in [q(0), q(16), q_frac(45, 2), q_frac(-1, 3)] {
            assert_eq!(parse_q(&fmt_q(&v)), Some(v));
        }
        assert_eq!(fmt_q(&q_frac(45, 2)), "45/2");
    }
}
