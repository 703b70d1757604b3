//! Exact rational values and their textual form.
//!
//! Literals are either integers (`"-3"`, `7`) or fractions `"p/q"`. The
//! canonical rendering is the reduced fraction, with the denominator omitted
//! when it is 1, so parsing then formatting is stable.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserializer, Serializer};
use std::fmt;

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    match trimmed.split_once('/') {
        None => {
            let num: BigInt = trimmed.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(num))
        }
        Some((p, q)) => {
            let num: BigInt = p.trim().parse().map_err(|_| bad())?;
            let den: BigInt = q.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
    }
}

pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Natural logarithm of a positive big integer, robust to values beyond
/// the `f64` range.
fn ln_bigint(value: &BigInt) -> f64 {
    let bits = value.bits();
    if bits <= 1000 {
        return value.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = value >> shift;
    top.to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln(value)` for a strictly positive rational; `-inf` for zero.
pub fn ln_rational(value: &Rational) -> f64 {
    if value.is_zero() {
        return f64::NEG_INFINITY;
    }
    debug_assert!(value.is_positive());
    ln_bigint(value.numer()) - ln_bigint(value.denom())
}

pub fn pow(base: &Rational, exp: usize) -> Rational {
    num_traits::pow(base.clone(), exp)
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn serialize<S: Serializer>(
    value: &Rational,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&format_rational(value))
}

pub fn deserialize<'de, D: Deserializer<'de>>(
    deserializer: D,
) -> std::result::Result<Rational, D::Error> {
    deserializer.deserialize_any(RationalVisitor)
}

struct RationalVisitor;

impl<'de> Visitor<'de> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a \"p/q\" rational string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
        Ok(int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
        Ok(Rational::from_integer(BigInt::from(v)))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Rational, E> {
        Err(E::custom(format!(
            "floating-point literal {v} is not exact; use \"p/q\""
        )))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
        parse_rational(v).map_err(E::custom)
    }
}

/// Serde adapter for `Vec<Rational>` fields.
pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::Deserialize;

    pub fn serialize<S: Serializer>(
        values: &[Rational],
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&format_rational(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        #[derive(Deserialize)]
        struct Wrapped(#[serde(with = "super")] Rational);
        let raw: Vec<Wrapped> = Vec::deserialize(deserializer)?;
        Ok(raw.into_iter().map(|w| w.0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("4").unwrap(), int(4));
        assert_eq!(parse_rational("-10").unwrap(), int(-10));
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational(" -1 / 3 ").unwrap(), ratio(-1, 3));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn canonical_format() {
        assert_eq!(format_rational(&ratio(6, 4)), "3/2");
        assert_eq!(format_rational(&ratio(-8, 4)), "-2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn log_of_huge_values() {
        let big = pow(&int(3), 2000);
        let expected = 2000.0 * 3f64.ln();
        assert!((ln_rational(&big) - expected).abs() < 1e-9 * expected);
        assert!((ln_rational(&ratio(1, 8)) + 8f64.ln()).abs() < 1e-12);
    }

    proptest::proptest! {
        #[test]
        fn format_parse_roundtrip(p in -1_000_000i64..1_000_000, q in 1i64..1_000_000) {
            let value = ratio(p, q);
            let text = format_rational(&value);
            proptest::prop_assert_eq!(parse_rational(&text).unwrap(), value.clone());
            proptest::prop_assert_eq!(format_rational(&parse_rational(&text).unwrap()), text);
        }
    }
}
