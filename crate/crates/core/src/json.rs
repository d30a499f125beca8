//! JSON encodings for polynomials, trees and decorated trees.
//!
//! Polynomial: array of terms, leading term first, each
//! `{"coeff": "<decimal>", "vars": [[["x", i], e], [["y", i, j], e], ...]}`.
//! Tree: `{"labels": [...], "father": {"<child>": father, ...}}` with keys
//! in numeric order. Decorated tree: a tree object plus
//! `"phi": {"<vertex>": image, ...}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::bijection::{BijectionError, DecoratedTree};
use crate::poly::{Monomial, PolyError, Polynomial, Var, VarKind};
use crate::trees::{LabelSet, RootedTree, TreeError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unexpected shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Bijection(#[from] BijectionError),
}

fn shape(msg: impl Into<String>) -> JsonError {
    JsonError::Shape(msg.into())
}

pub fn var_to_json(v: Var) -> Value {
    match v.kind() {
        VarKind::X => json!(["x", v.i()]),
        VarKind::Y => json!(["y", v.i(), v.j()]),
    }
}

fn as_u32(v: &Value) -> Result<u32, JsonError> {
    v.as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| shape(format!("expected a non-negative integer, got {v}")))
}

pub fn var_from_json(v: &Value) -> Result<Var, JsonError> {
    let arr = v
        .as_array()
        .ok_or_else(|| shape("variable must be an array"))?;
    match (arr.first().and_then(Value::as_str), arr.len()) {
        (Some("x"), 2) => Ok(Var::x(as_u32(&arr[1])?)),
        (Some("y"), 3) => Ok(Var::try_y(as_u32(&arr[1])?, as_u32(&arr[2])?)?),
        _ => Err(shape(format!("unknown variable {v}"))),
    }
}

pub fn poly_to_json(p: &Polynomial) -> Value {
    Value::Array(
        p.terms()
            .rev()
            .map(|(m, c)| {
                let vars: Vec<Value> = m.iter().map(|(v, e)| json!([var_to_json(v), e])).collect();
                json!({"coeff": c.to_string(), "vars": vars})
            })
            .collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Result<Polynomial, JsonError> {
    let terms = v
        .as_array()
        .ok_or_else(|| shape("polynomial must be an array"))?;
    let mut p = Polynomial::zero();
    for t in terms {
        let coeff: BigInt = t
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or_else(|| shape("term needs a string coeff"))?
            .parse()
            .map_err(|_| shape("coeff is not a decimal integer"))?;
        let vars = t
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| shape("term needs a vars array"))?;
        let mut pairs = Vec::with_capacity(vars.len());
        for pair in vars {
            match pair.as_array().map(Vec::as_slice) {
                Some([var, e]) => pairs.push((var_from_json(var)?, as_u32(e)?)),
                _ => return Err(shape(format!("bad variable entry {pair}"))),
            }
        }
        p.add_term(Monomial::from_pairs(pairs), coeff);
    }
    Ok(p)
}

/// Canonical text of a polynomial; equal polynomials give identical bytes.
pub fn poly_to_string(p: &Polynomial) -> String {
    poly_to_json(p).to_string()
}

fn int_keyed(map: &BTreeMap<u32, u32>) -> Value {
    let mut out = Map::new();
    for (k, v) in map {
        out.insert(k.to_string(), json!(v));
    }
    Value::Object(out)
}

fn int_map_from_json(v: &Value, what: &str) -> Result<BTreeMap<u32, u32>, JsonError> {
    let obj = v
        .as_object()
        .ok_or_else(|| shape(format!("{what} must be an object")))?;
    let mut out = BTreeMap::new();
    for (k, val) in obj {
        let key: u32 = k
            .parse()
            .map_err(|_| shape(format!("{what} key {k:?} is not a label")))?;
        out.insert(key, as_u32(val)?);
    }
    Ok(out)
}

pub fn tree_to_json(t: &RootedTree) -> Value {
    json!({
        "labels": t.labels().as_slice(),
        "father": int_keyed(t.father_map()),
    })
}

pub fn tree_from_json(v: &Value) -> Result<RootedTree, JsonError> {
    let labels = v
        .get("labels")
        .and_then(Value::as_array)
        .ok_or_else(|| shape("tree needs a labels array"))?
        .iter()
        .map(as_u32)
        .collect::<Result<Vec<_>, _>>()?;
    let father = int_map_from_json(
        v.get("father")
            .ok_or_else(|| shape("tree needs a father map"))?,
        "father",
    )?;
    Ok(RootedTree::new(LabelSet::new(labels)?, father)?)
}

pub fn phi_to_json(phi: &BTreeMap<u32, u32>) -> Value {
    int_keyed(phi)
}

pub fn phi_from_json(v: &Value) -> Result<BTreeMap<u32, u32>, JsonError> {
    int_map_from_json(v, "phi")
}

pub fn decorated_to_json(d: &DecoratedTree) -> Value {
    let mut v = tree_to_json(d.tree());
    v["phi"] = phi_to_json(d.phi());
    v
}

/// Reads a decorated tree; `phi` may be embedded or given separately, and
/// defaults to the identity when absent.
pub fn decorated_from_json(v: &Value, phi: Option<&Value>) -> Result<DecoratedTree, JsonError> {
    let tree = tree_from_json(v)?;
    match phi.or_else(|| v.get("phi")) {
        Some(p) => Ok(DecoratedTree::new(tree, phi_from_json(p)?)?),
        None => Ok(DecoratedTree::identity(tree)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_layout() {
        let p = &Polynomial::constant(-3) * &(&Polynomial::x(1).pow(2) * &Polynomial::y(1, 2))
            + Polynomial::one();
        let v = poly_to_json(&p);
        assert_eq!(
            v.to_string(),
            r#"[{"coeff":"-3","vars":[[["x",1],2],[["y",1,2],1]]},{"coeff":"1","vars":[]}]"#
        );
        assert_eq!(poly_from_json(&v).unwrap(), p);
        assert_eq!(poly_to_json(&Polynomial::zero()).to_string(), "[]");
    }

    #[test]
    fn big_coefficients_survive() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = Polynomial::constant(big);
        assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn rejects_bad_y() {
        let v: Value = serde_json::from_str(r#"[{"coeff":"1","vars":[[["y",3,2],1]]}]"#).unwrap();
        assert!(matches!(
            poly_from_json(&v),
            Err(JsonError::Poly(PolyError::BadYIndex(3, 2)))
        ));
    }

    #[test]
    fn tree_keys_numeric_order() {
        let t = RootedTree::from_edges(&[(2, 1), (10, 2), (3, 1)]).unwrap();
        let s = tree_to_json(&t).to_string();
        assert_eq!(s, r#"{"labels":[1,2,3,10],"father":{"2":1,"3":1,"10":2}}"#);
        assert_eq!(tree_from_json(&tree_to_json(&t)).unwrap(), t);
    }

    #[test]
    fn decorated_round_trip() {
        let t = RootedTree::from_edges(&[(2, 1), (3, 2)]).unwrap();
        let d = DecoratedTree::new(t, BTreeMap::from([(2, 3), (3, 3)])).unwrap();
        let v = decorated_to_json(&d);
        assert_eq!(decorated_from_json(&v, None).unwrap(), d);
        let bad = json!({"2": 1, "3": 3});
        let err = decorated_from_json(&v, Some(&bad)).unwrap_err();
        let plain = decorated_from_json(&tree_to_json(d.tree()), None).unwrap();
        assert_eq!(plain.phi(), &BTreeMap::from([(2, 2), (3, 3)]));
        assert!(matches!(err, JsonError::Bijection(e) if e.condition() == Some(1)));
    }
}
