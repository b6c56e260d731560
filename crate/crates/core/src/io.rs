//! Text forms of classes and periods.
//!
//! Classes are JSON objects `{"deg0":"r","deg2":{"H":"a","mu":"b"},"deg4":"c"}`.
//! Missing fields are zero, and values may be strings or JSON integers. The
//! canonical form lists every degree, only nonzero H^2 entries in basis
//! order, and compact separators, so parsing and re-emitting it is the
//! identity on bytes.

use std::str::FromStr;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exact::{ComplexRational, Rational};
use crate::lattice::{GradedClass, K3Model, Side};

fn scalar<T: FromStr<Err = Error>>(v: &Value, what: &'static str) -> Result<T> {
    match v {
        Value::String(s) => s.trim().parse(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string().parse(),
        other => Err(Error::parse(what, other.to_string())),
    }
}

pub fn class_from_value(model: &K3Model, value: &Value) -> Result<GradedClass> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse("class", value.to_string()))?;
    let mut x = model.zero();
    for (key, v) in obj {
        match key.as_str() {
            "deg0" => x.deg0 = scalar(v, "rational")?,
            "deg4" => x.deg4 = scalar(v, "rational")?,
            "deg2" => {
                let entries = v
                    .as_object()
                    .ok_or_else(|| Error::parse("deg2 object", v.to_string()))?;
                for (label, c) in entries {
                    let i = model.h2_index(label)?;
                    x.deg2[i] = &x.deg2[i] + &scalar::<Rational>(c, "rational")?;
                }
            }
            _ => return Err(Error::UnknownLabel(key.clone())),
        }
    }
    Ok(x)
}

pub fn class_to_value(model: &K3Model, x: &GradedClass, side: Side) -> Value {
    let mut deg2 = Map::new();
    for (i, c) in x.deg2.iter().enumerate() {
        if !c.is_zero() {
            deg2.insert(model.h2_key(i, side), Value::String(c.to_string()));
        }
    }
    let mut obj = Map::new();
    obj.insert("deg0".into(), Value::String(x.deg0.to_string()));
    obj.insert("deg2".into(), Value::Object(deg2));
    obj.insert("deg4".into(), Value::String(x.deg4.to_string()));
    Value::Object(obj)
}

pub fn class_to_json(model: &K3Model, x: &GradedClass, side: Side) -> String {
    class_to_value(model, x, side).to_string()
}

/// Parses a class from JSON or from the tuple form `r,a,b,c`
/// (`r + aH + bμ + cw`).
pub fn parse_class(model: &K3Model, text: &str) -> Result<GradedClass> {
    let t = text.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::parse("class JSON", e.to_string()))?;
        return class_from_value(model, &v);
    }
    let [r, a, b, c] = parse_tuple(t)?;
    Ok(model.rabc(r, a, b, c))
}

/// `r,a,b,c` with rational entries.
pub fn parse_tuple(text: &str) -> Result<[Rational; 4]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::parse("tuple r,a,b,c", text));
    }
    let mut out: [Rational; 4] = Default::default();
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p.parse()?;
    }
    Ok(out)
}

/// Complex H^2 vector: a JSON array over the H^2 basis, or an object keyed
/// by basis labels. Entries are strings such as `"1+2*i"` or integers.
pub fn parse_complex_vector(model: &K3Model, text: &str) -> Result<Vec<ComplexRational>> {
    let v: Value = serde_json::from_str(text.trim()).map_err(|e| Error::parse("period JSON", e.to_string()))?;
    let n = model.h2_rank();
    match &v {
        Value::Array(items) => {
            if items.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: items.len(),
                });
            }
            items.iter().map(|z| scalar(z, "complex rational")).collect()
        }
        Value::Object(entries) => {
            let mut out = vec![ComplexRational::zero(); n];
            for (label, z) in entries {
                out[model.h2_index(label)?] = scalar(z, "complex rational")?;
            }
            Ok(out)
        }
        other => Err(Error::parse("period JSON", other.to_string())),
    }
}

pub fn complex_vector_to_json(v: &[ComplexRational]) -> String {
    Value::Array(v.iter().map(|z| Value::String(z.to_string())).collect()).to_string()
}
