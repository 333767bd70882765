//! Exact rational helpers on top of `num-rational`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};

use crate::error::{Error, Result};

/// Exact rational number used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `7`, `-3/4` or `5/2`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn floor_i64(x: &Q) -> Result<i64> {
    x.floor().to_integer().to_i64().ok_or(Error::Overflow("floor"))
}

pub fn ceil_i64(x: &Q) -> Result<i64> {
    x.ceil().to_integer().to_i64().ok_or(Error::Overflow("ceil"))
}

/// Binomial coefficient C(n, k) as a rational; zero when `n < k` or `n < 0`.
pub fn binomial(n: i64, k: u32) -> Q {
    if n < k as i64 || n < 0 {
        return Q::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= BigInt::from(n - i);
    }
    let mut den = BigInt::one();
    for i in 1..=k as i64 {
        den *= BigInt::from(i);
    }
    Q::from_integer(acc.div_floor(&den))
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn is_nonnegative(x: &Q) -> bool {
    !x.is_negative()
}

fn bigint_json<S: Serializer>(v: &BigInt, seq: &mut S::SerializeTuple) -> std::result::Result<(), S::Error> {
    match v.to_i64() {
        Some(i) => seq.serialize_element(&i),
        None => seq.serialize_element(&v.to_string()),
    }
}

/// Serializes a rational as `[num, den]`; parts that overflow `i64` become decimal strings.
pub fn serialize_pair<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_tuple(2)?;
    bigint_json::<S>(x.numer(), &mut seq)?;
    bigint_json::<S>(x.denom(), &mut seq)?;
    seq.end()
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum IntOrString {
    Int(i64),
    Str(String),
}

impl IntOrString {
    fn into_bigint<E: de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            IntOrString::Int(i) => Ok(BigInt::from(i)),
            IntOrString::Str(s) => BigInt::from_str(&s).map_err(E::custom),
        }
    }
}

struct PairVisitor;

impl<'de> Visitor<'de> for PairVisitor {
    type Value = Q;

    fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        f.write_str("a [numerator, denominator] pair")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Q, A::Error> {
        let n: IntOrString = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
        let d: IntOrString = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
        let d = d.into_bigint()?;
        if d.is_zero() {
            return Err(de::Error::custom("zero denominator"));
        }
        Ok(Q::new(n.into_bigint()?, d))
    }
}

pub fn deserialize_pair<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
    d.deserialize_tuple(2, PairVisitor)
}

pub mod pair_vec {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Q;

    struct Wrap<'a>(&'a Q);

    impl serde::Serialize for Wrap<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            super::serialize_pair(self.0, s)
        }
    }

    #[derive(Deserialize)]
    struct Owned(#[serde(deserialize_with = "super::deserialize_pair")] Q);

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&Wrap(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v: Vec<Owned> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|o| o.0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_q("5/4").unwrap(), qr(5, 4));
        assert_eq!(parse_q(" -3 ").unwrap(), q(-3));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 3), q(10));
        assert_eq!(binomial(2, 3), q(0));
        assert_eq!(binomial(3, 0), q(1));
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(floor_i64(&qr(-1, 2)).unwrap(), -1);
        assert_eq!(ceil_i64(&qr(-1, 2)).unwrap(), 0);
        assert_eq!(floor_i64(&qr(11, 4)).unwrap(), 2);
    }
}
