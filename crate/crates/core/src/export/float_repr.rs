//! JSON representation of `f64` that keeps non-finite values.
//!
//! Finite numbers are written as JSON numbers; infinities and NaN are written
//! as the strings `"inf"`, `"-inf"` and `"nan"`.

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum Repr {
    Number(f64),
    Text(String),
}

fn decode<E: de::Error>(repr: Repr) -> Result<f64, E> {
    match repr {
        Repr::Number(v) => Ok(v),
        Repr::Text(s) => match s.as_str() {
            "inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            "nan" => Ok(f64::NAN),
            other => Err(E::custom(format!("expected a number, found {other:?}"))),
        },
    }
}

pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if v.is_nan() {
        s.serialize_str("nan")
    } else if *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    decode(Repr::deserialize(d)?)
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => super::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Option::<Repr>::deserialize(d)?.map(decode).transpose()
    }
}

#[cfg(test)]
mod tests {
    use serde::{Deserialize, Serialize};

    #[derive(Debug, PartialEq, Serialize, Deserialize)]
    struct Wrap {
        #[serde(with = "super")]
        v: f64,
        #[serde(with = "super::option")]
        o: Option<f64>,
    }

    #[test]
    fn keeps_infinities() {
        let w = Wrap {
            v: f64::NEG_INFINITY,
            o: Some(f64::INFINITY),
        };
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(text, r#"{"v":"-inf","o":"inf"}"#);
        assert_eq!(serde_json::from_str::<Wrap>(&text).unwrap(), w);
    }

    #[test]
    fn finite_values_are_numbers() {
        let w = Wrap {
            v: 0.1 + 0.2,
            o: None,
        };
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(text, r#"{"v":0.30000000000000004,"o":null}"#);
        assert_eq!(serde_json::from_str::<Wrap>(&text).unwrap(), w);
    }
}
