//! JSON helpers: big integers as exact JSON numbers, rationals as `"p/q"`.

use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

use crate::arith::{parse_rational, rat_to_pq, Integer, Rational};

pub fn int_to_number(x: &Integer) -> Number {
    x.to_string()
        .parse()
        .expect("decimal integer is a valid JSON number")
}

pub fn number_to_int(n: &Number) -> Option<Integer> {
    n.to_string().parse().ok()
}

pub fn serialize_int<S: Serializer>(x: &Integer, s: S) -> Result<S::Ok, S::Error> {
    int_to_number(x).serialize(s)
}

pub fn deserialize_int<'de, D: Deserializer<'de>>(d: D) -> Result<Integer, D::Error> {
    let n = Number::deserialize(d)?;
    number_to_int(&n).ok_or_else(|| D::Error::custom(format!("not an integer: {n}")))
}

pub fn serialize_ints<S: Serializer>(xs: &[Integer], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&int_to_number(x))?;
    }
    seq.end()
}

pub fn deserialize_ints<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Integer>, D::Error> {
    Vec::<Number>::deserialize(d)?
        .iter()
        .map(|n| number_to_int(n).ok_or_else(|| D::Error::custom(format!("not an integer: {n}"))))
        .collect()
}

pub fn serialize_rat<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_to_pq(x))
}

pub fn deserialize_rat<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let s = String::deserialize(d)?;
    parse_rational(&s).map_err(D::Error::custom)
}
