//! Serde helpers: big integers as decimal strings (numbers accepted on input),
//! rationals as `a/b` strings.

use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{de, Deserialize, Deserializer, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum NumOrText {
    Num(u64),
    Text(String),
}

pub mod biguint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        match NumOrText::deserialize(d)? {
            NumOrText::Num(n) => Ok(BigUint::from(n)),
            NumOrText::Text(t) => BigUint::from_str(t.trim()).map_err(de::Error::custom),
        }
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }
}

pub mod rationals {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }
}
