//! Canonical JSON circuit documents.
//!
//! Complex numbers are `[re, im]` pairs and matrices are row-major arrays of
//! rows. Unknown keys are rejected at every level.

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Circuit, Gate, GateKind, WireSpec};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::simulator::Matrix;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateDoc {
    kind: GateKind,
    wires: Vec<usize>,
    #[serde(default)]
    params: Vec<f64>,
    #[serde(default)]
    control_level: Option<usize>,
    #[serde(default)]
    matrix: Option<Vec<Vec<[f64; 2]>>>,
}

#[derive(Debug, Serialize)]
struct CircuitDoc<'a> {
    wires: &'a [WireSpec],
    gates: Vec<GateDoc>,
    metadata: &'a serde_json::Map<String, Value>,
}

/// Parses and validates a canonical JSON circuit document.
pub fn parse_circuit<T: Real>(text: &str) -> Result<Circuit<T>> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))?;
    let Value::Object(mut top) = value else {
        return Err(Error::schema(None, "top level must be an object"));
    };
    if let Some(key) = top.keys().find(|k| !matches!(k.as_str(), "wires" | "gates" | "metadata")) {
        return Err(Error::schema(None, format!("unknown field `{key}`")));
    }
    let wires_value = top.remove("wires").ok_or_else(|| Error::schema(None, "missing field `wires`"))?;
    let mut wires: Vec<WireSpec> = serde_json::from_value(wires_value)
        .map_err(|e| Error::schema(None, format!("wires: {e}")))?;
    let gates_value = top.remove("gates").ok_or_else(|| Error::schema(None, "missing field `gates`"))?;
    let Value::Array(gate_values) = gates_value else {
        return Err(Error::schema(None, "`gates` must be an array"));
    };
    let metadata = match top.remove("metadata") {
        None => serde_json::Map::new(),
        Some(Value::Object(m)) => m,
        Some(_) => return Err(Error::schema(None, "`metadata` must be an object")),
    };

    wires.sort();
    for (i, w) in wires.iter().enumerate() {
        if w.index != i {
            return Err(Error::semantic(None, format!("wire indices must be 0..{} without gaps or repeats", wires.len())));
        }
    }
    let dims: Vec<usize> = wires.iter().map(|w| w.dim).collect();
    let mut circuit = Circuit::new(&dims)?;
    circuit.metadata = metadata;

    for (i, gv) in gate_values.into_iter().enumerate() {
        let doc: GateDoc = serde_json::from_value(gv).map_err(|e| Error::schema(Some(i), e.to_string()))?;
        let gate = gate_from_doc(doc).map_err(|e| match e {
            Error::Schema { gate: None, message } => Error::Schema { gate: Some(i), message },
            Error::Semantic { gate: None, message } => Error::Semantic { gate: Some(i), message },
            other => other,
        })?;
        circuit.push(gate)?;
    }
    Ok(circuit)
}

fn gate_from_doc<T: Real>(doc: GateDoc) -> Result<Gate<T>> {
    if (doc.kind == GateKind::CustomMatrix) != doc.matrix.is_some() {
        return Err(Error::schema(None, "`matrix` is required for custom-matrix gates and forbidden otherwise"));
    }
    let scalar = |x: f64| -> Result<T> {
        if x.is_finite() {
            T::from_f64(x).ok_or_else(|| Error::semantic(None, format!("{x} is not representable")))
        } else {
            Err(Error::semantic(None, "non-finite number"))
        }
    };
    let params = doc.params.iter().map(|&p| scalar(p)).collect::<Result<Vec<T>>>()?;
    let matrix = match doc.matrix {
        None => None,
        Some(rows) => {
            let rows = rows
                .into_iter()
                .map(|row| row.into_iter().map(|[re, im]| Ok(Complex::new(scalar(re)?, scalar(im)?))).collect())
                .collect::<Result<Vec<Vec<_>>>>()?;
            Some(Matrix::from_rows(rows).map_err(|e| Error::semantic(None, e.to_string()))?)
        }
    };
    Ok(Gate { kind: doc.kind, wires: doc.wires, params, control_level: doc.control_level, matrix })
}

fn gate_to_doc<T: Real>(g: &Gate<T>) -> GateDoc {
    let f = |x: T| x.to_f64().expect("finite scalar");
    GateDoc {
        kind: g.kind,
        wires: g.wires.clone(),
        params: g.params.iter().map(|&p| f(p)).collect(),
        control_level: g.control_level,
        matrix: g
            .matrix
            .as_ref()
            .map(|m| m.to_rows().into_iter().map(|row| row.into_iter().map(|z| [f(z.re), f(z.im)]).collect()).collect()),
    }
}

/// Serializes a circuit to its canonical document, newline terminated.
pub fn serialize_circuit<T: Real>(c: &Circuit<T>) -> String {
    let doc = CircuitDoc { wires: c.wires(), gates: c.gates().iter().map(gate_to_doc).collect(), metadata: &c.metadata };
    let mut s = serde_json::to_string_pretty(&doc).expect("circuit documents always serialize");
    s.push('\n');
    s
}

impl<T: Real> Circuit<T> {
    pub fn to_json(&self) -> String {
        serialize_circuit(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        parse_circuit(text)
    }
}
