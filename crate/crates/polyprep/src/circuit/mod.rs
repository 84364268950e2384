//! Gate-level circuit representation with open controls, resource metrics,
//! and JSON serialization.

mod fanout;
mod gate;
mod io;
mod lower;
mod mcx;
mod metrics;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use fanout::{fanout_copy, fanout_gates};
pub use gate::{Control, Gate, Op};
pub use io::{export_circuit, import_circuit};
pub use lower::lower;
pub use mcx::{mcx, mcx_gates, mcx_requirements};
pub use metrics::{asap_layers, compute_metrics, compute_metrics_lowered, CircuitMetrics};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    System,
    Control,
    Flag,
    Gqsp,
    Scratch,
    Copy,
}

impl Role {
    pub const ALL: [Role; 6] = [
        Role::System,
        Role::Control,
        Role::Flag,
        Role::Gqsp,
        Role::Scratch,
        Role::Copy,
    ];
}

/// Assignment of named roles to qubit indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterLayout {
    pub roles: BTreeMap<Role, Vec<usize>>,
}

impl RegisterLayout {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, role: Role, qubits: impl IntoIterator<Item = usize>) -> Self {
        self.roles.entry(role).or_default().extend(qubits);
        self
    }

    pub fn get(&self, role: Role) -> &[usize] {
        self.roles.get(&role).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_empty(&self) -> bool {
        self.roles.values().all(Vec::is_empty)
    }

    pub fn validate(&self, width: usize) -> Result<()> {
        let mut seen = vec![false; width];
        for qs in self.roles.values() {
            for &q in qs {
                if q >= width {
                    return Err(Error::QubitOutOfRange { qubit: q, width });
                }
                if seen[q] {
                    return Err(Error::DuplicateQubit(q));
                }
                seen[q] = true;
            }
        }
        Ok(())
    }

    /// Relabels every index through `map`.
    pub fn mapped(&self, map: &[usize]) -> RegisterLayout {
        RegisterLayout {
            roles: self
                .roles
                .iter()
                .map(|(r, qs)| (*r, qs.iter().map(|&q| map[q]).collect()))
                .collect(),
        }
    }
}

/// An ordered gate list over `width` qubits.
///
/// `pivots` marks the gates that have to receive an added control for the
/// circuit to be controlled correctly on its intended input subspace; all
/// remaining gates cancel against each other when the pivots are switched off.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    pub layout: RegisterLayout,
    pivots: Option<Vec<usize>>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Circuit {
            width,
            gates: Vec::new(),
            layout: RegisterLayout::new(),
            pivots: None,
        }
    }

    pub fn with_layout(width: usize, layout: RegisterLayout) -> Result<Self> {
        layout.validate(width)?;
        Ok(Circuit {
            width,
            gates: Vec::new(),
            layout,
            pivots: None,
        })
    }

    pub fn from_gates(width: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(width);
        c.extend(gates)?;
        Ok(c)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn pivots(&self) -> Option<&[usize]> {
        self.pivots.as_deref()
    }

    pub fn set_pivots(&mut self, pivots: Vec<usize>) {
        self.pivots = Some(pivots);
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.width)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends a gate and records it as a pivot.
    pub fn push_pivot(&mut self, gate: Gate) -> Result<()> {
        self.push(gate)?;
        let idx = self.gates.len() - 1;
        self.pivots.get_or_insert_with(Vec::new).push(idx);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    pub fn x(&mut self, q: usize) -> Result<()> {
        self.push(Gate::new(Op::X, q))
    }

    pub fn h(&mut self, q: usize) -> Result<()> {
        self.push(Gate::new(Op::H, q))
    }

    pub fn z(&mut self, q: usize) -> Result<()> {
        self.push(Gate::new(Op::Z, q))
    }

    pub fn ry(&mut self, q: usize, theta: f64) -> Result<()> {
        self.push(Gate::new(Op::Ry(theta), q))
    }

    pub fn rz(&mut self, q: usize, theta: f64) -> Result<()> {
        self.push(Gate::new(Op::Rz(theta), q))
    }

    pub fn r(&mut self, q: usize, theta: f64, phi: f64, lambda: f64) -> Result<()> {
        self.push(Gate::new(Op::R { theta, phi, lambda }, q))
    }

    pub fn cx(&mut self, c: usize, t: usize) -> Result<()> {
        self.push(Gate::cx(c, t))
    }

    pub fn ccx(&mut self, a: Control, b: Control, t: usize) -> Result<()> {
        self.push(Gate::ccx(a, b, t))
    }

    /// Appends `other` with its qubit `i` placed on `map[i]`. Pivots carry over.
    pub fn append_mapped(&mut self, other: &Circuit, map: &[usize]) -> Result<()> {
        if map.len() != other.width {
            return Err(Error::WidthMismatch {
                expected: other.width,
                found: map.len(),
            });
        }
        let offset = self.gates.len();
        for g in &other.gates {
            let mapped = Gate {
                op: g.op,
                target: map[g.target],
                controls: g
                    .controls
                    .iter()
                    .map(|c| Control {
                        qubit: map[c.qubit],
                        bit: c.bit,
                    })
                    .collect(),
            };
            self.push(mapped)?;
        }
        if let Some(p) = &other.pivots {
            self.pivots
                .get_or_insert_with(Vec::new)
                .extend(p.iter().map(|i| i + offset));
        }
        Ok(())
    }

    /// Appends `other` on the same qubit indices.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.width > self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        let map: Vec<usize> = (0..other.width).collect();
        self.append_mapped(other, &map)
    }

    pub fn inverse(&self) -> Circuit {
        let n = self.gates.len();
        let mut pivots = self
            .pivots
            .as_ref()
            .map(|p| p.iter().map(|i| n - 1 - i).collect::<Vec<_>>());
        if let Some(p) = pivots.as_mut() {
            p.sort_unstable();
        }
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            layout: self.layout.clone(),
            pivots,
        }
    }

    fn check_control<'a>(
        &self,
        control: Control,
        gates: impl IntoIterator<Item = &'a Gate>,
    ) -> Result<()> {
        if control.qubit >= self.width {
            return Err(Error::QubitOutOfRange {
                qubit: control.qubit,
                width: self.width,
            });
        }
        if gates
            .into_iter()
            .any(|g| g.qubits().any(|q| q == control.qubit))
        {
            return Err(Error::DuplicateQubit(control.qubit));
        }
        Ok(())
    }

    /// Adds `control` to every gate.
    pub fn controlled(&self, control: Control) -> Result<Circuit> {
        self.check_control(control, &self.gates)?;
        let mut out = self.clone();
        out.pivots = None;
        for g in &mut out.gates {
            g.controls.insert(0, control);
        }
        Ok(out)
    }

    /// Adds `control` to the pivot gates only, falling back to
    /// [`Circuit::controlled`] when no pivots are recorded. Other gates may
    /// use the control qubit as long as they leave it unchanged.
    pub fn controlled_pivots(&self, control: Control) -> Result<Circuit> {
        let Some(pivots) = &self.pivots else {
            return self.controlled(control);
        };
        self.check_control(control, pivots.iter().map(|&i| &self.gates[i]))?;
        let mut out = self.clone();
        out.pivots = None;
        for &i in pivots {
            out.gates[i].controls.insert(0, control);
        }
        Ok(out)
    }

    /// Same gates on a wider register.
    pub fn widened(&self, width: usize) -> Result<Circuit> {
        if width < self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: width,
            });
        }
        let mut out = self.clone();
        out.width = width;
        Ok(out)
    }
}
