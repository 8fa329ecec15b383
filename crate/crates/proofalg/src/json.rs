//! JSON rendering of proof expressions and sets.
//!
//! Sets render as sorted arrays, arrows as `{"head": [..], "body": ..}`,
//! atoms as `{"atom": "<canonical text>"}`. Parsing the rendering of any
//! set reproduces the canonical set.

use crate::alphabet::Alphabet;
use crate::expr::{CanonSet, ProofExpr};
use crate::parse::{parse_atom, ParseError};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum JsonDecodeError {
    #[error("unexpected JSON shape: {0}")]
    Shape(String),
    #[error("bad atom text: {0}")]
    Atom(#[from] ParseError),
}

pub fn expr_to_json<A: Alphabet>(expr: &ProofExpr<A>) -> Value {
    match expr {
        ProofExpr::Leaf(atom) => json!({ "atom": atom.to_string() }),
        ProofExpr::Arrow(head, body) => json!({
            "head": set_to_json(head),
            "body": expr_to_json(body),
        }),
    }
}

pub fn set_to_json<A: Alphabet>(set: &CanonSet<A>) -> Value {
    Value::Array(set.iter().map(expr_to_json).collect())
}

pub fn expr_from_json<A: Alphabet>(value: &Value) -> Result<ProofExpr<A>, JsonDecodeError> {
    let obj = value
        .as_object()
        .ok_or_else(|| JsonDecodeError::Shape(format!("expected object, got {value}")))?;
    if let Some(atom) = obj.get("atom") {
        let text = atom
            .as_str()
            .ok_or_else(|| JsonDecodeError::Shape("\"atom\" must be a string".into()))?;
        return Ok(ProofExpr::leaf(parse_atom::<A>(text)?));
    }
    match (obj.get("head"), obj.get("body")) {
        (Some(head), Some(body)) => Ok(ProofExpr::arrow(
            set_from_json(head)?,
            expr_from_json(body)?,
        )),
        _ => Err(JsonDecodeError::Shape(
            "expected {\"atom\": ..} or {\"head\": .., \"body\": ..}".into(),
        )),
    }
}

pub fn set_from_json<A: Alphabet>(value: &Value) -> Result<CanonSet<A>, JsonDecodeError> {
    let arr = value
        .as_array()
        .ok_or_else(|| JsonDecodeError::Shape(format!("expected array, got {value}")))?;
    arr.iter().map(expr_from_json).collect()
}
