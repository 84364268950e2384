use num_complex::Complex64;

use super::gqsp::{gqsp_in_place, gqsp_phases, PhaseSequence};
use super::scaling::{scaling_factor, ScalingFactorReport};
use crate::circuit::{mcx_gates, mcx_requirements, Circuit, Control, Gate, Op, Role};
use crate::error::{Error, Result};
use crate::sim::SpueDescriptor;

/// Extra headroom tried in turn when the completion step fails with the
/// circle maximum scaled to exactly 1.
const MARGINS: [f64; 5] = [0.0, 1e-10, 1e-8, 1e-6, 1e-4];

#[derive(Clone, Debug)]
pub struct Gqet {
    pub spue: SpueDescriptor,
    pub phases: PhaseSequence,
    pub scaling: ScalingFactorReport,
    /// The signal polynomial actually synthesized is `Υ / divisor`.
    pub divisor: f64,
}

/// Helper qubits the reflection needs for `k` projector qubits, given one
/// dirty qubit supplied from outside.
pub fn walk_helpers(k: usize) -> usize {
    match k {
        0 | 1 => 0,
        2 => 1,
        _ => 2 + mcx_requirements(k).1.saturating_sub(1),
    }
}

/// `(2Π − 1)·U` with qubit 0 left free for the GQSP ancilla (it is borrowed
/// dirty by the reflection), then `helpers` zeroed qubits, then `U`.
/// Pivots of the result are those of `U` plus the centre phase gate.
pub fn walk_circuit(spue: &SpueDescriptor, helpers: usize) -> Result<Circuit> {
    let u = &spue.circuit;
    let shift = 1 + helpers;
    let w = u.width() + shift;
    let map: Vec<usize> = (shift..w).collect();
    let mut layout = u.layout.mapped(&map);
    if helpers > 0 {
        layout = layout.with(Role::Scratch, 1..shift);
    }
    let mut out = Circuit::with_layout(w, layout)?;
    out.append_mapped(u, &map)?;
    let proj: Vec<Control> = spue
        .right
        .iter()
        .map(|c| Control {
            qubit: map[c.qubit],
            bit: c.bit,
        })
        .collect();
    match proj.len() {
        0 => return Err(Error::InvalidArgument("walk needs a projector".into())),
        1 => {
            let q = proj[0].qubit;
            if proj[0].bit {
                out.x(q)?;
                out.push_pivot(Gate::new(Op::Z, q))?;
                out.x(q)?;
            } else {
                out.push_pivot(Gate::new(Op::Z, q))?;
            }
        }
        k => {
            if helpers < walk_helpers(k) {
                return Err(Error::InsufficientAncillae {
                    kind: "clean",
                    needed: walk_helpers(k),
                    available: helpers,
                });
            }
            let h1 = 1;
            let clean: Vec<usize> = (2..shift).collect();
            let gates = mcx_gates(&proj, h1, &clean, &[0])?;
            out.extend(gates.iter().cloned())?;
            out.x(h1)?;
            out.push_pivot(Gate::new(Op::Z, h1))?;
            out.x(h1)?;
            out.extend(gates.into_iter().rev())?;
        }
    }
    Ok(out)
}

/// Phases realizing `b / divisor` on the circle, with `divisor` the circle
/// maximum of `Σ b_k T_k` raised by the first margin whose completion passes.
pub fn gqet_phases(b: &[Complex64]) -> Result<(PhaseSequence, ScalingFactorReport, f64)> {
    let scaling = scaling_factor(b)?;
    let mut last = Error::CompletionResidual(f64::NAN);
    for margin in MARGINS {
        let divisor = scaling.circle_max * (1.0 + margin);
        let p: Vec<Complex64> = b.iter().map(|c| c / divisor).collect();
        match gqsp_phases(&p) {
            Ok(phases) => return Ok((phases, scaling, divisor)),
            Err(e @ Error::CompletionResidual(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// GQSP on the walk operator of a symmetric encoding with unitary `U = U†`,
/// realizing `Σ b_k T_k(A)` for Chebyshev coefficients `b`.
///
/// The returned normalization makes the extracted block equal
/// `Σ b_k T_k(A) / max(β, 1)` where `A` is the raw block of `spue`.
pub fn build_gqet(spue: &SpueDescriptor, b: &[Complex64]) -> Result<Gqet> {
    spue.validate()?;
    if !spue.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let helpers = walk_helpers(spue.right.len());
    let walk = walk_circuit(spue, helpers)?;
    let (phases, scaling, divisor) = gqet_phases(b)?;
    let circuit = gqsp_in_place(&phases, &walk, 0)?;
    let shift = helpers + 1;
    let mut proj = vec![Control::off(0)];
    proj.extend((1..shift).map(Control::off));
    proj.extend(spue.right.iter().map(|c| Control {
        qubit: c.qubit + shift,
        bit: c.bit,
    }));
    let normalization = divisor / scaling.beta.max(1.0);
    Ok(Gqet {
        spue: SpueDescriptor {
            circuit,
            left: proj.clone(),
            right: proj,
            normalization,
        },
        phases,
        scaling,
        divisor,
    })
}
