//! Small helpers for moving arbitrary-precision integers through JSON without
//! losing digits.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Number, Value};

use crate::error::{Error, Result};

pub fn bigint_to_json(n: &BigInt) -> Value {
    // With `arbitrary_precision` a number token keeps every digit.
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal is valid JSON"))
}

pub fn bigint_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| Error::Domain(format!("expected an integer, found {n}"))),
        Value::String(s) => {
            BigInt::from_str(s).map_err(|_| Error::Domain(format!("expected an integer, found {s:?}")))
        }
        other => Err(Error::Domain(format!("expected an integer, found {other}"))),
    }
}

pub fn i64_from_json(v: &Value) -> Result<i64> {
    v.as_i64()
        .or_else(|| v.as_u64().and_then(|u| i64::try_from(u).ok()))
        .ok_or_else(|| Error::Domain(format!("expected a machine integer, found {v}")))
}

pub fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| Error::Domain(format!("missing JSON field {name:?}")))
}

pub fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Domain(format!("{what} must be a JSON array")))
}
