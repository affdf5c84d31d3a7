//! Exact rational scalars and their `"p/q"` wire format.
//!
//! Every numerical quantity in this crate is an exact rational; nothing is
//! ever rounded to floating point. On the wire (JSON documents, reports,
//! CLI output) rationals travel as strings `"p/q"` with `q > 0`, always in
//! lowest terms.

use num_rational::Rational64;
use num_traits::Signed;

use crate::error::Error;

/// The scalar type used throughout: an exact rational with `i64` parts.
///
/// Desk-scale instances keep every intermediate value tiny, so an `i64`
/// ratio is ample headroom.
pub type Q = Rational64;

/// Shorthand constructor. Panics on zero denominator; use [`parse_q`] for
/// untrusted input.
pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(numer, denom)
}

/// Integer-to-rational shorthand.
pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

/// Canonical wire form: `"p/q"` in lowest terms with `q > 0`, the `/q` part
/// always present (so `1` prints as `"1/1"`).
pub fn format_q(value: Q) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `"p/q"` (or a bare integer `"p"`, accepted leniently on input).
/// Rejects zero or negative denominators and non-numeric junk.
pub fn parse_q(text: &str) -> Result<Q, Error> {
    let text = text.trim();
    let (num_part, den_part) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer: i64 = num_part
        .trim()
        .parse()
        .map_err(|_| Error::BadRational(text.to_string()))?;
    let denom: i64 = match den_part {
        Some(d) => d
            .trim()
            .parse()
            .map_err(|_| Error::BadRational(text.to_string()))?,
        None => 1,
    };
    if denom <= 0 {
        return Err(Error::BadRational(text.to_string()));
    }
    Ok(Q::new(numer, denom))
}

/// Sign of a rational as -1/0/+1. Convenience for verdict comparisons.
pub fn sign(value: Q) -> i32 {
    if value.is_positive() {
        1
    } else if value.is_negative() {
        -1
    } else {
        0
    }
}

/// Serde adapter putting [`Q`] on the wire as a `"p/q"` string.
pub mod serde_pq {
    use super::{format_q, parse_q, Q};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Q, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_q(*value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Q, D::Error> {
        let text = String::deserialize(de)?;
        parse_q(&text).map_err(de::Error::custom)
    }
}

/// Serde adapter for `Vec<Q>` fields.
pub mod serde_pq_vec {
    use super::{format_q, parse_q, Q};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[Q], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(values.iter().map(|v| format_q(*v)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Q>, D::Error> {
        let texts = Vec::<String>::deserialize(de)?;
        texts
            .iter()
            .map(|t| parse_q(t).map_err(de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_format_is_reduced_with_positive_denominator() {
        assert_eq!(format_q(q(2, 4)), "1/2");
        assert_eq!(format_q(q(1, -2)), "-1/2");
        assert_eq!(format_q(qi(3)), "3/1");
        assert_eq!(format_q(qi(0)), "0/1");
    }

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_q("3").unwrap(), qi(3));
        assert_eq!(parse_q("-5/10").unwrap(), q(-1, 2));
        assert_eq!(parse_q(" 7 / 2 ").unwrap(), q(7, 2));
    }

    #[test]
    fn parse_rejects_zero_denominator_and_junk() {
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("1/-2").is_err());
        assert!(parse_q("a/b").is_err());
        assert!(parse_q("").is_err());
        assert!(parse_q("1/2/3").is_err());
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let v = q(n, d);
            prop_assert_eq!(parse_q(&format_q(v)).unwrap(), v);
        }
    }
}
