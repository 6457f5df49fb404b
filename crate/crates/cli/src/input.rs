//! Input documents: JSON objects whose numbers are integers, decimal strings
//! or `"num/den"` strings, all read as exact rationals.

use inose_core::{parse_rational, Error, Rational, Result};
use serde_json::Value;

pub fn parse_document(text: &str) -> Result<Value> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))?;
    if !doc.is_object() {
        return Err(Error::InvalidInput("input must be a JSON object".into()));
    }
    Ok(doc)
}

fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key)
        .ok_or_else(|| Error::InvalidInput(format!("missing field {key:?}")))
}

pub fn rational_value(v: &Value) -> Result<Rational> {
    match v {
        // JSON numbers keep their textual form, so 0.1 stays 1/10.
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(Error::InvalidInput(format!("expected a number, got {other}"))),
    }
}

pub fn rational(doc: &Value, key: &str) -> Result<Rational> {
    rational_value(field(doc, key)?).map_err(|e| match e {
        Error::InvalidInput(m) => Error::InvalidInput(format!("field {key:?}: {m}")),
        e => e,
    })
}

pub fn prime(doc: &Value) -> Result<u64> {
    let p = rational(doc, "p")?;
    if !p.is_integer() || p <= Rational::from_integer(0.into()) {
        return Err(Error::InvalidInput(format!("p must be a positive integer, got {p}")));
    }
    u64::try_from(p.to_integer()).map_err(|_| Error::InvalidInput("p is too large".into()))
}

pub fn rational_list(doc: &Value, key: &str) -> Result<Vec<Rational>> {
    match field(doc, key)? {
        Value::Array(items) => items.iter().map(rational_value).collect(),
        other => Err(Error::InvalidInput(format!(
            "field {key:?} must be a list, got {other}"
        ))),
    }
}

/// `[a, b]` for a curve `y^2 = x^3 + a x + b`.
pub fn curve_pair(doc: &Value, key: &str) -> Result<(Rational, Rational)> {
    let v = rational_list(doc, key)?;
    match <[Rational; 2]>::try_from(v) {
        Ok([a, b]) => Ok((a, b)),
        Err(v) => Err(Error::InvalidInput(format!(
            "field {key:?} must be [a, b] for the short form y^2 = x^3 + a x + b, got {} coefficients",
            v.len()
        ))),
    }
}
