//! JSON encodings: a rational is `{"num": "<int>", "den": "<int>"}` with
//! decimal strings so consumers never overflow a 64-bit integer, and a
//! polynomial is an ascending array of such objects.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{RatPoly, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

impl TryFrom<&RationalJson> for Rational {
    type Error = Error;
    fn try_from(j: &RationalJson) -> Result<Rational> {
        let num = BigInt::from_str(j.num.trim()).map_err(|e| Error::Parse(format!("numerator {:?}: {e}", j.num)))?;
        let den = BigInt::from_str(j.den.trim()).map_err(|e| Error::Parse(format!("denominator {:?}: {e}", j.den)))?;
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rational::new(num, den))
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    serde_json::to_value(RationalJson::from(r)).expect("plain struct serializes")
}

pub fn poly_to_json(p: &RatPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rational_to_json).collect())
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    let j: RationalJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    Rational::try_from(&j)
}

pub fn poly_from_json(v: &Value) -> Result<RatPoly> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("polynomial must be a JSON array".into()))?;
    Ok(RatPoly::new(arr.iter().map(rational_from_json).collect::<Result<_>>()?))
}

/// Serde adapter for `Rational` fields: `#[serde(with = "json::rational")]`.
pub mod rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalJson::from(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let j = RationalJson::deserialize(d)?;
        Rational::try_from(&j).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `RatPoly` fields.
pub mod poly {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &RatPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<RationalJson> = p.coeffs().iter().map(RationalJson::from).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<RatPoly, D::Error> {
        let v = Vec::<RationalJson>::deserialize(d)?;
        let coeffs = v.iter().map(Rational::try_from).collect::<Result<Vec<_>>>().map_err(serde::de::Error::custom)?;
        Ok(RatPoly::new(coeffs))
    }
}
