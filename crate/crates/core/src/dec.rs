//! Serde helpers writing big integers as decimal strings.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::de::Error;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

fn parse<'de, D: Deserializer<'de>, T: FromStr>(d: D) -> Result<T, D::Error> {
    let s = String::deserialize(d)?;
    s.parse()
        .map_err(|_| D::Error::custom(format!("invalid integer '{s}'")))
}

pub mod bigint {
    use super::*;
    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        parse(d)
    }
}

pub mod biguint {
    use super::*;
    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        parse(d)
    }
}

pub mod opt_biguint {
    use super::*;
    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|x| x.to_string()).serialize(s)
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| {
                s.parse()
                    .map_err(|_| D::Error::custom(format!("invalid integer '{s}'")))
            })
            .transpose()
    }
}

pub mod opt_bigint {
    use super::*;
    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|x| x.to_string()).serialize(s)
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| {
                s.parse()
                    .map_err(|_| D::Error::custom(format!("invalid integer '{s}'")))
            })
            .transpose()
    }
}

pub mod biguint_vec {
    use super::*;
    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .serialize(s)
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|s| {
                s.parse()
                    .map_err(|_| D::Error::custom(format!("invalid integer '{s}'")))
            })
            .collect()
    }
}

/// prime -> exponent, keyed by decimal string (numeric order preserved).
pub mod prime_map {
    use super::*;
    pub fn serialize<S: Serializer>(v: &BTreeMap<BigUint, u32>, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(v.len()))?;
        for (p, e) in v {
            m.serialize_entry(&p.to_string(), e)?;
        }
        m.end()
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<BigUint, u32>, D::Error> {
        let raw = BTreeMap::<String, u32>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, e)| {
                k.parse()
                    .map(|p| (p, e))
                    .map_err(|_| D::Error::custom(format!("invalid prime '{k}'")))
            })
            .collect()
    }
}
