//! Serde helpers: arbitrary-precision integers as decimal strings in JSON.
//!
//! Report structures carry `Int` values that are small in practice but must
//! not silently truncate; decimal strings keep the JSON readable and exact.

use crate::Int;
use serde::{Deserialize, Deserializer, Serializer};
use std::str::FromStr;

pub mod ivec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .into_iter()
            .map(|x| Int::from_str(&x).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod ivecvec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Int>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Int>>, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| Int::from_str(&x).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

pub mod rvec {
    use super::*;
    use crate::Rat;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .into_iter()
            .map(|x| Rat::from_str(&x).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod rvec_opt {
    use super::*;
    use crate::Rat;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rat>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            None => s.serialize_none(),
            Some(v) => s.collect_seq(v.iter().map(|x| x.to_string())),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rat>>, D::Error> {
        let strings = Option::<Vec<String>>::deserialize(d)?;
        match strings {
            None => Ok(None),
            Some(v) => v
                .into_iter()
                .map(|x| Rat::from_str(&x).map_err(serde::de::Error::custom))
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::ivec;
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Demo {
        #[serde(with = "super::ivec")]
        v: Vec<crate::Int>,
        #[serde(with = "super::ivecvec")]
        m: Vec<Vec<crate::Int>>,
    }

    #[test]
    fn round_trip() {
        let d = Demo { v: ivec(&[1, -2, 0]), m: vec![ivec(&[3]), ivec(&[-4])] };
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"v":["1","-2","0"],"m":[["3"],["-4"]]}"#);
        let back: Demo = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Rats {
        #[serde(with = "super::rvec")]
        v: Vec<crate::Rat>,
        #[serde(with = "super::rvec_opt")]
        o: Option<Vec<crate::Rat>>,
    }

    #[test]
    fn rational_round_trip() {
        let d = Rats { v: vec![crate::rat(1, 2), crate::rat(-3, 1)], o: None };
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"v":["1/2","-3"],"o":null}"#);
        let back: Rats = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        let d = Rats { v: vec![], o: Some(vec![crate::rat(7, 3)]) };
        let back: Rats = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);
    }
}
