use nalgebra::DMatrix;
use num_complex::Complex64;

use super::StateVector;
use crate::circuit::{Circuit, Control, Gate, Op, Role};
use crate::error::{Error, Result};

/// A circuit plus the projectors and normalization that make it a projected
/// unitary encoding of an operator on its system register.
///
/// The encoded operator is `normalization · ⟨left| U |right⟩` where every
/// projector entry fixes one non-system qubit to a bit.
#[derive(Clone, Debug)]
pub struct SpueDescriptor {
    pub circuit: Circuit,
    pub left: Vec<Control>,
    pub right: Vec<Control>,
    pub normalization: f64,
}

impl SpueDescriptor {
    /// Symmetric encoding with every non-system qubit projected onto 0.
    pub fn all_zero(circuit: Circuit, normalization: f64) -> Self {
        let system = circuit.layout.get(Role::System).to_vec();
        let proj: Vec<Control> = (0..circuit.width())
            .filter(|q| !system.contains(q))
            .map(Control::off)
            .collect();
        SpueDescriptor {
            circuit,
            left: proj.clone(),
            right: proj,
            normalization,
        }
    }

    pub fn system(&self) -> &[usize] {
        self.circuit.layout.get(Role::System)
    }

    pub fn is_symmetric(&self) -> bool {
        self.left == self.right
    }

    pub fn validate(&self) -> Result<()> {
        let w = self.circuit.width();
        for p in self.left.iter().chain(&self.right) {
            if p.qubit >= w {
                return Err(Error::QubitOutOfRange {
                    qubit: p.qubit,
                    width: w,
                });
            }
            if self.system().contains(&p.qubit) {
                return Err(Error::InvalidArgument(format!(
                    "projector qubit {} lies in the system register",
                    p.qubit
                )));
            }
        }
        if !(self.normalization > 0.0) {
            return Err(Error::InvalidArgument(
                "normalization must be positive".into(),
            ));
        }
        Ok(())
    }

    fn index(&self, x: usize, proj: &[Control]) -> usize {
        let w = self.circuit.width();
        let sys = self.system();
        let mut idx = 0usize;
        for (k, &q) in sys.iter().enumerate() {
            if x >> (sys.len() - 1 - k) & 1 == 1 {
                idx |= 1 << (w - 1 - q);
            }
        }
        for p in proj {
            if p.bit {
                idx |= 1 << (w - 1 - p.qubit);
            }
        }
        idx
    }
}

/// Selected columns of the encoded operator. Non-system qubits outside the
/// projectors start in and are read at 0.
pub fn extract_columns(d: &SpueDescriptor, cols: &[usize]) -> Result<Vec<Vec<Complex64>>> {
    d.validate()?;
    let n = d.system().len();
    let w = d.circuit.width();
    let rows: Vec<usize> = (0..1usize << n).map(|y| d.index(y, &d.left)).collect();
    cols.iter()
        .map(|&x| {
            let mut s = StateVector::basis(w, d.index(x, &d.right))?;
            s.apply_circuit(&d.circuit)?;
            let amps = s.amplitudes();
            Ok(rows.iter().map(|&r| amps[r] * d.normalization).collect())
        })
        .collect()
}

pub fn extract_block(d: &SpueDescriptor) -> Result<DMatrix<Complex64>> {
    let n = d.system().len();
    let dim = 1usize << n;
    let cols: Vec<usize> = (0..dim).collect();
    let data = extract_columns(d, &cols)?;
    Ok(DMatrix::from_fn(dim, dim, |i, j| data[j][i]))
}

/// Rewrites `H(t) · X_C(t) · H(t)` on system targets into `Z_C(t)` and returns
/// the result if no other gate has a system target outside the diagonal ops.
/// Such a circuit never moves the system register off its basis states.
pub fn system_diagonal_form(c: &Circuit) -> Option<Circuit> {
    let sys = c.layout.get(Role::System);
    let gates = c.gates();
    let mut out = Vec::with_capacity(gates.len());
    let mut i = 0;
    while i < gates.len() {
        let g = &gates[i];
        if !sys.contains(&g.target) || g.op.is_diagonal() {
            out.push(g.clone());
            i += 1;
            continue;
        }
        let bare_h = |h: &Gate| h.op == Op::H && h.target == g.target && h.controls.is_empty();
        match (gates.get(i + 1), gates.get(i + 2)) {
            (Some(x), Some(h2))
                if bare_h(g) && x.op == Op::X && x.target == g.target && bare_h(h2) =>
            {
                out.push(Gate::controlled(Op::Z, x.controls.clone(), g.target));
                i += 3;
            }
            _ => return None,
        }
    }
    let mut fused = Circuit::with_layout(c.width(), c.layout.clone()).ok()?;
    fused.extend(out).ok()?;
    Some(fused)
}

/// Diagonal of the encoded operator from a single run over a uniform
/// superposition of system inputs. `None` if the circuit is not of
/// [`system_diagonal_form`]; off-diagonal entries are then exactly zero.
pub fn extract_diagonal(d: &SpueDescriptor) -> Result<Option<Vec<Complex64>>> {
    d.validate()?;
    let Some(fused) = system_diagonal_form(&d.circuit) else {
        return Ok(None);
    };
    let n = d.system().len();
    let w = d.circuit.width();
    let dim = 1usize << n;
    let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << w];
    for x in 0..dim {
        amps[d.index(x, &d.right)] = amp;
    }
    let mut s = StateVector::from_amplitudes(amps)?;
    s.apply_circuit(&fused)?;
    let scale = d.normalization * (dim as f64).sqrt();
    Ok(Some(
        (0..dim)
            .map(|x| s.amplitudes()[d.index(x, &d.left)] * scale)
            .collect(),
    ))
}

/// Column `x` of the encoded operator, simulated on the non-system qubits
/// alone: after [`system_diagonal_form`] the system register stays in `|x⟩`
/// and every gate can be specialized to it. `None` when the circuit does not
/// reduce (system targets other than `Z`).
pub fn extract_column_fixed_system(d: &SpueDescriptor, x: usize) -> Result<Option<Vec<Complex64>>> {
    d.validate()?;
    let Some(fused) = system_diagonal_form(&d.circuit) else {
        return Ok(None);
    };
    let sys = d.system();
    let n = sys.len();
    let w = d.circuit.width();
    let mut value = vec![None; w];
    for (k, &q) in sys.iter().enumerate() {
        value[q] = Some(x >> (n - 1 - k) & 1 == 1);
    }
    let rest: Vec<usize> = (0..w).filter(|q| value[*q].is_none()).collect();
    let mut index = vec![usize::MAX; w];
    for (i, &q) in rest.iter().enumerate() {
        index[q] = i;
    }
    let relabel = |c: &Control| Control {
        qubit: index[c.qubit],
        bit: c.bit,
    };
    let mut reduced = Circuit::new(rest.len());
    let mut scalar = Complex64::new(1.0, 0.0);
    for g in fused.gates() {
        if g.controls
            .iter()
            .any(|c| value[c.qubit].is_some_and(|v| v != c.bit))
        {
            continue;
        }
        let ctl: Vec<Control> = g
            .controls
            .iter()
            .filter(|c| value[c.qubit].is_none())
            .map(relabel)
            .collect();
        match value[g.target] {
            None => reduced.push(Gate::controlled(g.op, ctl, index[g.target]))?,
            Some(v) => {
                if g.op != Op::Z {
                    return Ok(None);
                }
                if !v {
                    continue;
                }
                // −1 on the remaining controls, moved onto the last of them
                match ctl.split_last() {
                    None => scalar = -scalar,
                    Some((last, others)) => {
                        if !last.bit {
                            reduced.x(last.qubit)?;
                        }
                        reduced.push(Gate::controlled(Op::Z, others.to_vec(), last.qubit))?;
                        if !last.bit {
                            reduced.x(last.qubit)?;
                        }
                    }
                }
            }
        }
    }
    let sub_index = |proj: &[Control]| -> usize {
        proj.iter()
            .filter(|p| p.bit)
            .map(|p| 1usize << (rest.len() - 1 - index[p.qubit]))
            .sum()
    };
    let mut s = StateVector::basis(rest.len(), sub_index(&d.right))?;
    s.apply_circuit(&reduced)?;
    let mut col = vec![Complex64::new(0.0, 0.0); 1 << n];
    col[x] = s.amplitudes()[sub_index(&d.left)] * scalar * d.normalization;
    Ok(Some(col))
}

/// [`extract_block`], taking the single-run path when the circuit allows it.
pub fn extract_block_fast(d: &SpueDescriptor) -> Result<DMatrix<Complex64>> {
    match extract_diagonal(d)? {
        Some(diag) => Ok(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag))),
        None => extract_block(d),
    }
}
