//! JSON input and output for lattices and arrangements.
//!
//! Input accepts either of two document shapes:
//!   {"ambient_dim": n, "subspaces": [[["p/q", ...], ...], ...]}
//!   {"lattice": {"dims": [0, d1, ...], "leq_pairs": [[i, j], ...]}}
//! Rationals may be strings ("3/4", "-2") or plain integers. leq_pairs may
//! list covering pairs only; the transitive closure is computed.

use crate::arrangement::{intersection_lattice, SubspaceArrangement};
use crate::{LabeledLattice, LatticeError};
use exact_linalg::{parse_rat, Rat};
use serde_json::{json, Value};

pub fn lattice_from_json(text: &str) -> Result<LabeledLattice, LatticeError> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| LatticeError::Input(format!("malformed JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| LatticeError::Input("top-level JSON value must be an object".into()))?;
    let has_arrangement = obj.contains_key("subspaces") || obj.contains_key("ambient_dim");
    let has_lattice = obj.contains_key("lattice");
    match (has_arrangement, has_lattice) {
        (true, false) => arrangement_from_value(obj),
        (false, true) => abstract_from_value(&obj["lattice"]),
        (true, true) => Err(LatticeError::Input(
            "document mixes 'subspaces' and 'lattice'; provide exactly one input shape".into(),
        )),
        (false, false) => Err(LatticeError::Input(
            "document needs either 'ambient_dim'+'subspaces' or 'lattice'".into(),
        )),
    }
}

fn arrangement_from_value(
    obj: &serde_json::Map<String, Value>,
) -> Result<LabeledLattice, LatticeError> {
    let ambient = obj
        .get("ambient_dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| LatticeError::Input("'ambient_dim' must be a positive integer".into()))?
        as usize;
    let subs = obj
        .get("subspaces")
        .and_then(Value::as_array)
        .ok_or_else(|| LatticeError::Input("'subspaces' must be an array".into()))?;
    let mut raw: Vec<Vec<Vec<Rat>>> = Vec::with_capacity(subs.len());
    for (i, sub) in subs.iter().enumerate() {
        let rows = sub
            .as_array()
            .ok_or_else(|| LatticeError::Input(format!("subspace {i} must be an array of rows")))?;
        let mut mat = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            let entries = row.as_array().ok_or_else(|| {
                LatticeError::Input(format!("subspace {i} row {r} must be an array"))
            })?;
            let mut vals = Vec::with_capacity(entries.len());
            for (c, e) in entries.iter().enumerate() {
                vals.push(rat_from_value(e).map_err(|m| {
                    LatticeError::Input(format!("subspace {i} row {r} entry {c}: {m}"))
                })?);
            }
            mat.push(vals);
        }
        raw.push(mat);
    }
    let arr = SubspaceArrangement::new(ambient, raw)?;
    intersection_lattice(&arr)
}

fn rat_from_value(v: &Value) -> Result<Rat, String> {
    match v {
        Value::String(s) => parse_rat(s).map_err(|e| e.to_string()),
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| format!("non-integer number {n}"))?;
            Ok(Rat::from_integer(i.into()))
        }
        other => Err(format!("expected rational string or integer, got {other}")),
    }
}

fn abstract_from_value(v: &Value) -> Result<LabeledLattice, LatticeError> {
    let obj = v
        .as_object()
        .ok_or_else(|| LatticeError::Input("'lattice' must be an object".into()))?;
    let dims_v = obj
        .get("dims")
        .and_then(Value::as_array)
        .ok_or_else(|| LatticeError::Input("'lattice.dims' must be an array".into()))?;
    let mut dims = Vec::with_capacity(dims_v.len());
    for (i, d) in dims_v.iter().enumerate() {
        let d = d
            .as_u64()
            .ok_or_else(|| LatticeError::Input(format!("dims[{i}] must be a nonnegative integer")))?;
        dims.push(d as u32);
    }
    let pairs_v = obj
        .get("leq_pairs")
        .and_then(Value::as_array)
        .ok_or_else(|| LatticeError::Input("'lattice.leq_pairs' must be an array".into()))?;
    let mut pairs = Vec::with_capacity(pairs_v.len());
    for (i, p) in pairs_v.iter().enumerate() {
        let pair = p
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| LatticeError::Input(format!("leq_pairs[{i}] must be a pair [i, j]")))?;
        let a = pair[0]
            .as_u64()
            .ok_or_else(|| LatticeError::Input(format!("leq_pairs[{i}][0] must be an index")))?;
        let b = pair[1]
            .as_u64()
            .ok_or_else(|| LatticeError::Input(format!("leq_pairs[{i}][1] must be an index")))?;
        pairs.push((a as usize, b as usize));
    }
    LabeledLattice::from_dims_and_pairs(dims, &pairs)
}

/// Emits the abstract shape with covering pairs only.
pub fn lattice_to_json(l: &LabeledLattice) -> Value {
    let n = l.len();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if !l.lt(a, b) {
                continue;
            }
            let covering = (0..n).all(|c| c == a || c == b || !(l.lt(a, c) && l.lt(c, b)));
            if covering {
                pairs.push(json!([a, b]));
            }
        }
    }
    json!({"lattice": {"dims": l.dims(), "leq_pairs": pairs}})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abstract_roundtrip() {
        let text = r#"{"lattice": {"dims": [0, 1, 1, 2], "leq_pairs": [[0,1],[0,2],[1,3],[2,3]]}}"#;
        let l = lattice_from_json(text).unwrap();
        assert_eq!(l.len(), 4);
        let emitted = lattice_to_json(&l).to_string();
        let l2 = lattice_from_json(&emitted).unwrap();
        assert_eq!(l2.dims(), l.dims());
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(l.leq(a, b), l2.leq(a, b));
            }
        }
    }

    #[test]
    fn arrangement_shape_parses() {
        let text = r#"{"ambient_dim": 2, "subspaces": [[["1", "0"]], [["0", "1"]], [["1", "1"]]]}"#;
        let l = lattice_from_json(text).unwrap();
        assert_eq!(l.len(), 5);
    }

    #[test]
    fn integers_are_accepted_as_entries() {
        let text = r#"{"ambient_dim": 2, "subspaces": [[[1, 0]], [["1/2", 1]]]}"#;
        let l = lattice_from_json(text).unwrap();
        assert_eq!(l.len(), 4);
    }

    #[test]
    fn bad_documents_are_rejected() {
        assert!(lattice_from_json("[]").is_err());
        assert!(lattice_from_json("{}").is_err());
        assert!(lattice_from_json(r#"{"lattice": {"dims": [0,1]}}"#).is_err());
        assert!(lattice_from_json(r#"{"ambient_dim": 2}"#).is_err());
        assert!(
            lattice_from_json(r#"{"lattice": {"dims": [0, 1], "leq_pairs": [[0, 5]]}}"#).is_err()
        );
    }

    #[test]
    fn non_monotone_dims_are_rejected() {
        let text = r#"{"lattice": {"dims": [0, 2, 1], "leq_pairs": [[0,1],[1,2]]}}"#;
        assert!(lattice_from_json(text).is_err());
    }
}
