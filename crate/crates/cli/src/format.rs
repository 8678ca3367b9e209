//! Deterministic rendering: every float is rounded to 12 significant
//! digits before it is written, as JSON or as CSV.

use levelrank::{Error, Result};
use serde::Serialize;
use serde_json::{Map, Number, Value};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Keys holding invariant values; entries below this magnitude print as 0.
const VALUE_KEYS: &[&str] = &[
    "value",
    "dual_value",
    "lhs",
    "rhs",
    "inverted",
    "transposed_value",
    "dual_product",
    "bracket",
    "jones",
    "invariant",
    "level_k",
    "level_k1_mirror",
    "level_one",
];
const CHOP: f64 = 1e-12;

pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let s = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let r: f64 = s.parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Shortest decimal spelling of the rounded value.
pub fn format_float(x: f64) -> String {
    let r = round_sig(x);
    if r.fract() == 0.0 && r.abs() < 1e15 {
        format!("{}", r as i64)
    } else {
        format!("{r:?}")
    }
}

fn chop(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_f64() {
                if x.abs() < CHOP && n.is_f64() {
                    *v = Value::Number(Number::from(0));
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(chop),
        Value::Object(map) => map.values_mut().for_each(chop),
        _ => {}
    }
}

fn normalize(v: Value) -> Result<Value> {
    Ok(match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            let r = round_sig(x);
            if r.fract() == 0.0 && r.abs() < 1e15 {
                Value::Number(Number::from(r as i64))
            } else {
                Value::Number(Number::from_f64(r).ok_or_else(|| Error::Numerical(format!("non-finite output {x}")))?)
            }
        }
        Value::Array(items) => Value::Array(items.into_iter().map(normalize).collect::<Result<_>>()?),
        Value::Object(map) => {
            let mut out = Map::new();
            for (k, mut v) in map {
                if VALUE_KEYS.contains(&k.as_str()) {
                    chop(&mut v);
                }
                out.insert(k, normalize(v)?);
            }
            Value::Object(out)
        }
        other => other,
    })
}

/// Pretty JSON with rounded floats and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let raw = serde_json::to_value(value).map_err(|e| Error::Numerical(e.to_string()))?;
    let v = normalize(raw)?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Numerical(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Value cell with tiny magnitudes chopped to zero.
pub fn cell_value(x: f64) -> String {
    format_float(if x.abs() < CHOP { 0.0 } else { x })
}

pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Numerical(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Numerical(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Numerical(e.to_string()))
}
