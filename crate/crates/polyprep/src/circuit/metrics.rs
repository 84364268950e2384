use serde::Serialize;

use super::{lower, Circuit, Role};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CircuitMetrics {
    pub depth: usize,
    pub size: usize,
    pub width: usize,
    pub ancilla_count: usize,
}

/// ASAP layering: each gate lands one layer after the latest gate sharing a
/// qubit with it. CCX and MCX count as single gates.
pub fn compute_metrics(c: &Circuit) -> CircuitMetrics {
    let mut last = vec![0usize; c.width()];
    let mut depth = 0;
    for g in c.gates() {
        let layer = g.qubits().map(|q| last[q]).max().unwrap_or(0) + 1;
        for q in g.qubits() {
            last[q] = layer;
        }
        depth = depth.max(layer);
    }
    CircuitMetrics {
        depth,
        size: c.len(),
        width: c.width(),
        ancilla_count: c.width() - c.layout.get(Role::System).len(),
    }
}

/// Metrics after expanding open controls, CCX and CZ into one-qubit gates
/// and CNOTs.
pub fn compute_metrics_lowered(c: &Circuit) -> CircuitMetrics {
    compute_metrics(&lower(c))
}

/// Layer index (1-based) of every gate under the ASAP schedule.
pub fn asap_layers(c: &Circuit) -> Vec<usize> {
    let mut last = vec![0usize; c.width()];
    c.gates()
        .iter()
        .map(|g| {
            let layer = g.qubits().map(|q| last[q]).max().unwrap_or(0) + 1;
            for q in g.qubits() {
                last[q] = layer;
            }
            layer
        })
        .collect()
}
