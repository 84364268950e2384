use std::f64::consts::FRAC_PI_4;

use super::{Circuit, Control, Gate, Op};

fn t(q: usize, dagger: bool) -> Gate {
    Gate::new(Op::Rz(if dagger { -FRAC_PI_4 } else { FRAC_PI_4 }), q)
}

fn toffoli(a: usize, b: usize, c: usize, out: &mut Vec<Gate>) {
    out.extend([
        Gate::new(Op::H, c),
        Gate::cx(b, c),
        t(c, true),
        Gate::cx(a, c),
        t(c, false),
        Gate::cx(b, c),
        t(c, true),
        Gate::cx(a, c),
        t(b, false),
        t(c, false),
        Gate::new(Op::H, c),
        Gate::cx(a, b),
        t(a, false),
        t(b, true),
        Gate::cx(a, b),
    ]);
}

fn lower_filled(g: &Gate, out: &mut Vec<Gate>) {
    let qs: Vec<usize> = g.controls.iter().map(|c| c.qubit).collect();
    match (g.op, qs.len()) {
        (Op::X, 2) => toffoli(qs[0], qs[1], g.target, out),
        (Op::Z, 1) => {
            out.push(Gate::new(Op::H, g.target));
            out.push(Gate::cx(qs[0], g.target));
            out.push(Gate::new(Op::H, g.target));
        }
        (Op::Z, 2) => {
            out.push(Gate::new(Op::H, g.target));
            toffoli(qs[0], qs[1], g.target, out);
            out.push(Gate::new(Op::H, g.target));
        }
        _ => out.push(g.clone()),
    }
}

/// Rewrites open controls as X-conjugated filled controls and expands CCX,
/// CZ and doubly controlled Z into one-qubit gates and CNOTs. Gates with three
/// or more controls stay atomic. Equal to the input up to a global phase.
pub fn lower(c: &Circuit) -> Circuit {
    let mut gates = Vec::with_capacity(c.len() * 4);
    for g in c.gates() {
        let open: Vec<usize> = g
            .controls
            .iter()
            .filter(|c| !c.bit)
            .map(|c| c.qubit)
            .collect();
        for &q in &open {
            gates.push(Gate::x(q));
        }
        let filled = Gate {
            op: g.op,
            target: g.target,
            controls: g.controls.iter().map(|c| Control::on(c.qubit)).collect(),
        };
        lower_filled(&filled, &mut gates);
        for &q in &open {
            gates.push(Gate::x(q));
        }
    }
    let mut out = Circuit::from_gates(c.width(), gates).expect("lowering keeps gates valid");
    out.layout = c.layout.clone();
    out
}
