//! JSON encoding of arbitrary-precision integers: a plain number when the
//! value fits in 64 bits, a decimal string otherwise. Both forms are accepted
//! on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Small(i64),
    Text(String),
}

fn to_repr(x: &BigInt) -> Repr {
    match x.to_i64() {
        Some(v) => Repr::Small(v),
        None => Repr::Text(x.to_string()),
    }
}

fn from_repr<E: serde::de::Error>(r: Repr) -> Result<BigInt, E> {
    match r {
        Repr::Small(v) => Ok(BigInt::from(v)),
        Repr::Text(s) => s
            .trim()
            .parse()
            .map_err(|_| E::custom(format!("'{s}' is not a decimal integer"))),
    }
}

pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    to_repr(x).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    from_repr(Repr::deserialize(d)?)
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?
            .into_iter()
            .map(from_repr)
            .collect()
    }
}

pub mod vecvec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        xs.iter()
            .map(|row| row.iter().map(to_repr).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<Repr>>::deserialize(d)?
            .into_iter()
            .map(|row| row.into_iter().map(from_repr).collect())
            .collect()
    }
}

pub mod option_vecvec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &Option<Vec<Vec<BigInt>>>, s: S) -> Result<S::Ok, S::Error> {
        match xs {
            Some(v) => super::vecvec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Vec<BigInt>>>, D::Error> {
        let raw = Option::<Vec<Vec<Repr>>>::deserialize(d)?;
        raw.map(|rows| {
            rows.into_iter()
                .map(|row| row.into_iter().map(from_repr).collect())
                .collect()
        })
        .transpose()
    }
}

pub mod map_vec {
    use super::*;
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|(k, v)| (k, v.iter().map(to_repr).collect::<Vec<_>>()))
            .collect::<BTreeMap<_, _>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, Vec<BigInt>>, D::Error> {
        BTreeMap::<String, Vec<Repr>>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| Ok((k, v.into_iter().map(from_repr).collect::<Result<_, _>>()?)))
            .collect()
    }
}
