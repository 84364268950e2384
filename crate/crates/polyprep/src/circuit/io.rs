use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Circuit, Control, Gate, Op, RegisterLayout, Role};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitJson {
    width: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    layout: BTreeMap<Role, Vec<usize>>,
    gates: Vec<GateJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateJson {
    kind: String,
    targets: Vec<usize>,
    #[serde(default)]
    controls: Vec<(usize, u8)>,
    #[serde(default)]
    params: Vec<f64>,
}

pub fn export_circuit(c: &Circuit) -> String {
    let doc = CircuitJson {
        width: c.width(),
        layout: c.layout.roles.clone(),
        gates: c
            .gates()
            .iter()
            .map(|g| GateJson {
                kind: g.kind().to_string(),
                targets: vec![g.target],
                controls: g.controls.iter().map(|c| (c.qubit, c.bit as u8)).collect(),
                params: g.op.params(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("circuit serializes")
}

fn schema(index: usize, msg: impl Into<String>) -> Error {
    Error::Schema {
        index: Some(index),
        msg: msg.into(),
    }
}

fn parse_gate(i: usize, g: GateJson) -> Result<Gate> {
    let [target] = g.targets[..] else {
        return Err(schema(
            i,
            format!("expected one target, got {}", g.targets.len()),
        ));
    };
    let mut controls = Vec::with_capacity(g.controls.len());
    for (q, b) in g.controls {
        if b > 1 {
            return Err(schema(i, format!("control state {b} is not 0 or 1")));
        }
        controls.push(Control {
            qubit: q,
            bit: b == 1,
        });
    }
    let want_params = match g.kind.as_str() {
        "ry" | "rz" => 1,
        "r" => 3,
        _ => 0,
    };
    if g.params.len() != want_params {
        return Err(schema(
            i,
            format!(
                "{} takes {want_params} params, got {}",
                g.kind,
                g.params.len()
            ),
        ));
    }
    let p = &g.params;
    let (op, arity) = match g.kind.as_str() {
        "x" => (Op::X, None),
        "h" => (Op::H, None),
        "z" => (Op::Z, None),
        "ry" => (Op::Ry(p[0]), None),
        "rz" => (Op::Rz(p[0]), None),
        "r" => (
            Op::R {
                theta: p[0],
                phi: p[1],
                lambda: p[2],
            },
            None,
        ),
        "cx" => (Op::X, Some(1..=1)),
        "ccx" => (Op::X, Some(2..=2)),
        "mcx" => (Op::X, Some(3..=usize::MAX)),
        "cz" => (Op::Z, Some(1..=1)),
        other => return Err(schema(i, format!("unknown gate kind {other:?}"))),
    };
    if let Some(r) = arity {
        if !r.contains(&controls.len()) {
            return Err(schema(
                i,
                format!("{} with {} controls", g.kind, controls.len()),
            ));
        }
    }
    Ok(Gate::controlled(op, controls, target))
}

pub fn import_circuit(text: &str) -> Result<Circuit> {
    let doc: CircuitJson = serde_json::from_str(text).map_err(|e| Error::Schema {
        index: None,
        msg: e.to_string(),
    })?;
    let mut c = Circuit::with_layout(doc.width, RegisterLayout { roles: doc.layout })?;
    for (i, g) in doc.gates.into_iter().enumerate() {
        let gate = parse_gate(i, g)?;
        gate.validate(doc.width)
            .map_err(|e| schema(i, e.to_string()))?;
        c.push(gate)?;
    }
    Ok(c)
}
