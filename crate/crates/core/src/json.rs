//! Small helpers shared by the JSON encoders of the value types.

use num_bigint::BigInt;
use serde_json::{Number, Value};

use crate::error::{Error, Result};

pub(crate) fn int_value(n: &BigInt) -> Value {
    // arbitrary_precision keeps integers of any size exact
    Value::Number(n.to_string().parse::<Number>().expect("integer literal"))
}

pub(crate) fn value_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("expected an integer, found {n}"))),
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}

pub(crate) fn value_u32(v: &Value) -> Result<u32> {
    v.as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| Error::Parse(format!("expected a small nonnegative integer, found {v}")))
}

pub(crate) fn value_i64(v: &Value) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::Parse(format!("expected an integer, found {v}")))
}

pub(crate) fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

pub(crate) fn array<'a>(v: &'a Value) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array, found {v}")))
}
