//! Canonical JSON encodings.
//!
//! Groups are `{"rank": r, "torsion": [..]}`, elements are integer arrays,
//! sets carry their ambient, maps carry both sets plus their pairs and
//! order, and rationals are `{"num": n, "den": d}`. Objects use sorted
//! keys, so serializing the same value twice gives identical bytes.
//! Integers are emitted at full precision.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use crate::addset::{AdditiveSet, SetError};
use crate::fgab::{FgaGroup, GroupElement, GroupError};
use crate::freiman::{FreimanMap, MapError};
use crate::intlat::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("{path}: expected {expected}")]
    Shape { path: String, expected: &'static str },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Map(#[from] MapError),
}

fn shape(path: &str, expected: &'static str) -> JsonError {
    JsonError::Shape {
        path: path.to_string(),
        expected,
    }
}

pub fn int_to_json(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal integers are valid JSON numbers"))
}

pub fn int_from_json(v: &Value, path: &str) -> Result<BigInt, JsonError> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| shape(path, "an integer")),
        _ => Err(shape(path, "an integer")),
    }
}

pub fn usize_from_json(v: &Value, path: &str) -> Result<usize, JsonError> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| shape(path, "a non-negative integer"))
}

pub fn rational_to_json(r: &BigRational) -> Value {
    json!({"num": int_to_json(r.numer()), "den": int_to_json(r.denom())})
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<BigRational, JsonError> {
    let num = int_from_json(field(v, "num", path)?, &format!("{path}.num"))?;
    let den = int_from_json(field(v, "den", path)?, &format!("{path}.den"))?;
    if den.is_zero() {
        return Err(JsonError::Invalid {
            path: path.to_string(),
            message: "zero denominator".into(),
        });
    }
    Ok(BigRational::new(num, den))
}

pub fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, JsonError> {
    v.as_object()
        .ok_or_else(|| shape(path, "an object"))?
        .get(key)
        .ok_or_else(|| JsonError::Invalid {
            path: path.to_string(),
            message: format!("missing field \"{key}\""),
        })
}

pub fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, JsonError> {
    v.as_array().ok_or_else(|| shape(path, "an array"))
}

pub fn group_to_json(g: &FgaGroup) -> Value {
    json!({
        "rank": g.free_rank(),
        "torsion": g.torsion().iter().map(int_to_json).collect::<Vec<_>>(),
    })
}

/// Accepts any list of torsion orders (0 meaning Z, 1 trivial) and returns
/// the group in canonical form.
pub fn group_from_json(v: &Value, path: &str) -> Result<Arc<FgaGroup>, JsonError> {
    let rank = usize_from_json(field(v, "rank", path)?, &format!("{path}.rank"))?;
    let orders = array(field(v, "torsion", path)?, &format!("{path}.torsion"))?
        .iter()
        .enumerate()
        .map(|(i, t)| int_from_json(t, &format!("{path}.torsion[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    if orders.iter().any(|o| o < &BigInt::zero()) {
        return Err(JsonError::Invalid {
            path: path.to_string(),
            message: "negative cyclic order".into(),
        });
    }
    Ok(FgaGroup::from_cyclic_orders(rank, &orders))
}

pub fn element_to_json(x: &GroupElement) -> Value {
    Value::Array(x.coords().iter().map(int_to_json).collect())
}

/// An integer array, or a bare integer when the group has one generator.
pub fn element_from_json(g: &Arc<FgaGroup>, v: &Value, path: &str) -> Result<GroupElement, JsonError> {
    let coords = match v {
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, c)| int_from_json(c, &format!("{path}[{i}]")))
            .collect::<Result<Vec<_>, _>>()?,
        Value::Number(_) => vec![int_from_json(v, path)?],
        _ => return Err(shape(path, "an integer or an integer array")),
    };
    Ok(g.element(coords)?)
}

pub fn set_to_json(a: &AdditiveSet) -> Value {
    json!({
        "ambient": group_to_json(a.ambient()),
        "elements": a.elements().iter().map(element_to_json).collect::<Vec<_>>(),
    })
}

pub fn elements_from_json(g: &Arc<FgaGroup>, v: &Value, path: &str) -> Result<AdditiveSet, JsonError> {
    let xs = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| element_from_json(g, x, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AdditiveSet::new(Arc::clone(g), xs)?)
}

pub fn set_from_json(v: &Value, path: &str) -> Result<AdditiveSet, JsonError> {
    let g = group_from_json(field(v, "ambient", path)?, &format!("{path}.ambient"))?;
    elements_from_json(&g, field(v, "elements", path)?, &format!("{path}.elements"))
}

pub fn pairs_to_json(f: &FreimanMap) -> Value {
    Value::Array(
        f.pairs()
            .iter()
            .map(|(x, y)| json!([element_to_json(x), element_to_json(y)]))
            .collect(),
    )
}

pub fn map_to_json(f: &FreimanMap) -> Value {
    json!({
        "source": set_to_json(f.source()),
        "target": set_to_json(f.target()),
        "pairs": pairs_to_json(f),
        "order": f.order(),
    })
}

/// Builds a map between known sets from `[[x, f(x)], ...]`.
pub fn map_from_pairs_json(
    source: &AdditiveSet,
    target: &AdditiveSet,
    pairs: &Value,
    order: usize,
    path: &str,
) -> Result<FreimanMap, JsonError> {
    let mut out = Vec::new();
    for (i, p) in array(pairs, path)?.iter().enumerate() {
        let p_path = format!("{path}[{i}]");
        let items = array(p, &p_path)?;
        if items.len() != 2 {
            return Err(shape(&p_path, "a pair [x, f(x)]"));
        }
        out.push((
            element_from_json(source.ambient(), &items[0], &format!("{p_path}[0]"))?,
            element_from_json(target.ambient(), &items[1], &format!("{p_path}[1]"))?,
        ));
    }
    Ok(FreimanMap::from_pairs(source.clone(), target.clone(), &out, order)?)
}

pub fn map_from_json(v: &Value, path: &str) -> Result<FreimanMap, JsonError> {
    let source = set_from_json(field(v, "source", path)?, &format!("{path}.source"))?;
    let target = set_from_json(field(v, "target", path)?, &format!("{path}.target"))?;
    let order = usize_from_json(field(v, "order", path)?, &format!("{path}.order"))?;
    map_from_pairs_json(&source, &target, field(v, "pairs", path)?, order, &format!("{path}.pairs"))
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(int_to_json).collect()))
            .collect(),
    )
}

/// An object from key/value pairs; keys end up sorted.
pub fn object<I, K>(entries: I) -> Value
where
    I: IntoIterator<Item = (K, Value)>,
    K: Into<String>,
{
    Value::Object(entries.into_iter().map(|(k, v)| (k.into(), v)).collect::<Map<_, _>>())
}
