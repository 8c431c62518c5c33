use num_bigint::BigInt;
use num_traits::ToPrimitive;
use qzeta::numeric::json::rational_to_json;
use qzeta::numeric::Rational;
use qzeta::Result;
use serde_json::{json, Value};

/// Integers as JSON numbers when they fit in 64 bits, else decimal strings.
pub fn int_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

pub fn rat_json(r: &Rational) -> Value {
    rational_to_json(r)
}

pub fn opt_rat_json(r: Option<&Rational>) -> Value {
    r.map(rat_json).unwrap_or(Value::Null)
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Renders rows as CSV with a header line.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| qzeta::Error::Parse(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| qzeta::Error::Parse(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn num_den(r: Option<&Rational>) -> [String; 2] {
    match r {
        Some(r) => [r.numer().to_string(), r.denom().to_string()],
        None => [String::new(), String::new()],
    }
}

pub fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}
