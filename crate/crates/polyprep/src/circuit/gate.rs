use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Single-qubit operation applied to a gate's target.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Op {
    X,
    H,
    Z,
    Ry(f64),
    Rz(f64),
    /// `[[e^{i(λ+φ)}cosθ, e^{iφ}sinθ], [e^{iλ}sinθ, −cosθ]]`
    R {
        theta: f64,
        phi: f64,
        lambda: f64,
    },
}

impl Op {
    pub fn params(&self) -> Vec<f64> {
        match *self {
            Op::Ry(t) | Op::Rz(t) => vec![t],
            Op::R { theta, phi, lambda } => vec![theta, phi, lambda],
            _ => Vec::new(),
        }
    }

    pub fn base_name(&self) -> &'static str {
        match self {
            Op::X => "x",
            Op::H => "h",
            Op::Z => "z",
            Op::Ry(_) => "ry",
            Op::Rz(_) => "rz",
            Op::R { .. } => "r",
        }
    }

    pub fn inverse(&self) -> Op {
        match *self {
            Op::Ry(t) => Op::Ry(-t),
            Op::Rz(t) => Op::Rz(-t),
            Op::R { theta, phi, lambda } => Op::R {
                theta,
                phi: -lambda,
                lambda: -phi,
            },
            op => op,
        }
    }

    /// Permutation-type ops map basis states to basis states.
    pub fn is_classical(&self) -> bool {
        matches!(self, Op::X | Op::Z)
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self, Op::Z | Op::Rz(_))
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let zero = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        match *self {
            Op::X => [[zero, one], [one, zero]],
            Op::Z => [[one, zero], [zero, -one]],
            Op::H => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                [[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]]
            }
            Op::Ry(t) => {
                let (s, co) = (t / 2.0).sin_cos();
                [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
            }
            Op::Rz(t) => [
                [Complex64::from_polar(1.0, -t / 2.0), zero],
                [zero, Complex64::from_polar(1.0, t / 2.0)],
            ],
            Op::R { theta, phi, lambda } => {
                let (s, co) = theta.sin_cos();
                [
                    [
                        Complex64::from_polar(co, lambda + phi),
                        Complex64::from_polar(s, phi),
                    ],
                    [Complex64::from_polar(s, lambda), c(-co, 0.0)],
                ]
            }
        }
    }
}

/// A control wire: the gate fires when `qubit` reads `bit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Control {
    pub qubit: usize,
    pub bit: bool,
}

impl Control {
    pub fn on(qubit: usize) -> Self {
        Control { qubit, bit: true }
    }

    pub fn off(qubit: usize) -> Self {
        Control { qubit, bit: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub op: Op,
    pub target: usize,
    pub controls: Vec<Control>,
}

impl Gate {
    pub fn new(op: Op, target: usize) -> Self {
        Gate {
            op,
            target,
            controls: Vec::new(),
        }
    }

    pub fn controlled(op: Op, controls: Vec<Control>, target: usize) -> Self {
        Gate {
            op,
            target,
            controls,
        }
    }

    pub fn x(t: usize) -> Self {
        Gate::new(Op::X, t)
    }

    pub fn cx(c: usize, t: usize) -> Self {
        Gate::controlled(Op::X, vec![Control::on(c)], t)
    }

    pub fn ccx(a: Control, b: Control, t: usize) -> Self {
        Gate::controlled(Op::X, vec![a, b], t)
    }

    /// Canonical kind label used in the JSON form.
    pub fn kind(&self) -> &'static str {
        match (self.op, self.controls.len()) {
            (Op::X, 1) => "cx",
            (Op::X, 2) => "ccx",
            (Op::X, k) if k >= 3 => "mcx",
            (Op::Z, 1) => "cz",
            (op, _) => op.base_name(),
        }
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls
            .iter()
            .map(|c| c.qubit)
            .chain(std::iter::once(self.target))
    }

    pub fn inverse(&self) -> Gate {
        Gate {
            op: self.op.inverse(),
            target: self.target,
            controls: self.controls.clone(),
        }
    }

    pub fn validate(&self, width: usize) -> Result<()> {
        let mut seen = Vec::with_capacity(self.controls.len() + 1);
        for q in self.qubits() {
            if q >= width {
                return Err(Error::QubitOutOfRange { qubit: q, width });
            }
            if seen.contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
            seen.push(q);
        }
        if self.op.params().iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFiniteAngle);
        }
        Ok(())
    }

    /// Mask/value pair over a `width`-qubit basis index (qubit 0 is the MSB)
    /// selecting the states on which the controls fire.
    pub fn control_mask(&self, width: usize) -> (u128, u128) {
        let mut mask = 0u128;
        let mut value = 0u128;
        for c in &self.controls {
            let b = 1u128 << (width - 1 - c.qubit);
            mask |= b;
            if c.bit {
                value |= b;
            }
        }
        (mask, value)
    }
}
