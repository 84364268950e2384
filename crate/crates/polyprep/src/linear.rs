//! PREPARE/SELECT block-encoding of the linear diagonal operator
//! `L_n = diag(x / (1 − 2^{-n}))` and the closed-form overlap analytics.

use crate::circuit::{fanout_gates, Circuit, Control, Gate, Op, RegisterLayout, Role};
use crate::error::{Error, Result};
use crate::hamming::exact_one_gates;
use crate::sim::SpueDescriptor;

/// Overlap `p_n` of the dyadic product state with the one-hot span:
/// `(1 − 2^{-n}) Π_{j=1..n} (1 − 1/(2^j + 1))`.
pub fn compute_pn(n: usize) -> f64 {
    let prod: f64 = (1..=n)
        .map(|j| 1.0 - 1.0 / (2f64.powi(j as i32) + 1.0))
        .product();
    (1.0 - 2f64.powi(-(n as i32))) * prod
}

/// `P_n = 2^{-n} Σ_x (1 − 2 p_n x / (1 − 2^{-n}))²` over the grid `x = i/2^n`.
pub fn compute_success_prob(n: usize) -> f64 {
    let big_n = 2f64.powi(n as i32);
    let mean_x = (big_n - 1.0) / (2.0 * big_n);
    let mean_x2 = (big_n - 1.0) * (2.0 * big_n - 1.0) / (6.0 * big_n * big_n);
    let c = 2.0 * compute_pn(n) / (1.0 - 1.0 / big_n);
    1.0 - 2.0 * c * mean_x + c * c * mean_x2
}

/// Diagonal of `L_n`, indexed by the system basis state.
pub fn l_n_diagonal(n: usize) -> Vec<f64> {
    let big_n = (1u64 << n) as f64;
    (0..1u64 << n)
        .map(|i| (i as f64 / big_n) / (1.0 - 1.0 / big_n))
        .collect()
}

/// Diagonal of `(1/(1 − 2^{-n})) Σ_k Z_k / 2^k`, computed bit by bit.
pub fn pauli_sum_diagonal(n: usize) -> Vec<f64> {
    let norm = 1.0 - 2f64.powi(-(n as i32));
    (0..1u64 << n)
        .map(|i| {
            let s: f64 = (1..=n)
                .map(|k| {
                    let bit = i >> (n - k) & 1;
                    let z = if bit == 1 { -1.0 } else { 1.0 };
                    z * 2f64.powi(-(k as i32))
                })
                .sum();
            s / norm
        })
        .collect()
}

/// `θ_k = 2 arcsin √(1/(1 + 2^k))` for k = 1..n.
pub fn alpha_angles(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|k| 2.0 * (1.0 / (1.0 + 2f64.powi(k as i32))).sqrt().asin())
        .collect()
}

/// Normalized amplitudes of `|β_n⟩` on the one-hot states `|1/2^k⟩`.
pub fn beta_amplitudes(n: usize) -> Vec<f64> {
    let norm = (1.0 - 2f64.powi(-(n as i32))).sqrt();
    (1..=n)
        .map(|k| 2f64.powf(-(k as f64) / 2.0) / norm)
        .collect()
}

/// Qubit assignment for the encodings, in register order
/// `[a | flag | control | copy | scratch | system]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearLayout {
    pub n: usize,
    pub a: Option<usize>,
    pub flag: usize,
    pub control: Vec<usize>,
    pub copy: Vec<usize>,
    pub scratch: Vec<usize>,
    pub system: Vec<usize>,
    pub width: usize,
}

impl LinearLayout {
    pub fn new(n: usize, with_a: bool) -> Self {
        let off = usize::from(with_a);
        let flag = off;
        let control: Vec<usize> = (off + 1..off + 1 + n).collect();
        let copy: Vec<usize> = (off + 1 + n..off + 1 + 2 * n).collect();
        let s = off + 1 + 2 * n;
        let system: Vec<usize> = (s + 2..s + 2 + n).collect();
        LinearLayout {
            n,
            a: with_a.then_some(0),
            flag,
            control,
            copy,
            scratch: vec![s, s + 1],
            system,
            width: s + 2 + n,
        }
    }

    /// Flag, control and scratch only: the qubits PREPARE touches.
    pub fn prepare_only(n: usize) -> Self {
        LinearLayout {
            n,
            a: None,
            flag: 0,
            control: (1..=n).collect(),
            copy: Vec::new(),
            scratch: vec![n + 1, n + 2],
            system: Vec::new(),
            width: n + 3,
        }
    }

    pub fn register_layout(&self) -> RegisterLayout {
        RegisterLayout::new()
            .with(Role::Gqsp, self.a)
            .with(Role::Flag, [self.flag])
            .with(Role::Control, self.control.iter().copied())
            .with(Role::Copy, self.copy.iter().copied())
            .with(Role::Scratch, self.scratch.iter().copied())
            .with(Role::System, self.system.iter().copied())
    }

    fn circuit(&self) -> Result<Circuit> {
        let mut layout = self.register_layout();
        layout.roles.retain(|_, v| !v.is_empty());
        Circuit::with_layout(self.width, layout)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(())
}

/// One parallel layer of RY rotations loading `|α_n⟩`.
pub fn build_alpha_layer(n: usize) -> Result<Circuit> {
    check_n(n)?;
    let layout = RegisterLayout::new().with(Role::Control, 0..n);
    let mut c = Circuit::with_layout(n, layout)?;
    for (q, t) in alpha_angles(n).into_iter().enumerate() {
        c.ry(q, t)?;
    }
    Ok(c)
}

/// `Ψ_n`: the RY layer on the control register, then the EXACT-one oracle
/// onto the flag.
pub fn prepare_circuit(lay: &LinearLayout) -> Result<Circuit> {
    check_n(lay.n)?;
    let mut c = lay.circuit()?;
    for (&q, t) in lay.control.iter().zip(alpha_angles(lay.n)) {
        c.ry(q, t)?;
    }
    let scratch: [usize; 2] = lay
        .scratch
        .as_slice()
        .try_into()
        .map_err(|_| Error::InvalidArgument("PREPARE needs two scratch qubits".into()))?;
    c.extend(exact_one_gates(&lay.control, scratch, lay.flag)?)?;
    Ok(c)
}

pub fn build_prepare(n: usize) -> Result<Circuit> {
    prepare_circuit(&LinearLayout::prepare_only(n))
}

/// `S_n`: the flag is broadcast onto the copy register, each copy gates a
/// doubly controlled Z, and the broadcast is undone. The two gates reading
/// the flag are the pivots.
pub fn select_circuit(lay: &LinearLayout) -> Result<Circuit> {
    check_n(lay.n)?;
    if lay.copy.len() != lay.n || lay.system.len() != lay.n {
        return Err(Error::InvalidArgument(
            "layout lacks copy or system qubits".into(),
        ));
    }
    let mut c = lay.circuit()?;
    let spread = if lay.n > 1 {
        fanout_gates(lay.copy[0], &lay.copy[1..])?
    } else {
        Vec::new()
    };
    c.push_pivot(Gate::cx(lay.flag, lay.copy[0]))?;
    c.extend(spread.iter().cloned())?;
    for k in 0..lay.n {
        let t = lay.system[k];
        c.h(t)?;
        c.ccx(Control::on(lay.copy[k]), Control::on(lay.control[k]), t)?;
        c.h(t)?;
    }
    c.extend(spread.into_iter().rev())?;
    c.push_pivot(Gate::cx(lay.flag, lay.copy[0]))?;
    Ok(c)
}

/// Flag, control, copy and system registers in that order.
pub fn build_select(n: usize) -> Result<Circuit> {
    check_n(n)?;
    select_circuit(&LinearLayout {
        n,
        a: None,
        flag: 0,
        control: (1..=n).collect(),
        copy: (n + 1..=2 * n).collect(),
        scratch: Vec::new(),
        system: (2 * n + 1..=3 * n).collect(),
        width: 3 * n + 1,
    })
}

/// `prep† · S_n · prep` for any preparation circuit on `lay`.
pub fn u_aff_circuit(lay: &LinearLayout, prep: &Circuit) -> Result<Circuit> {
    let mut c = lay.circuit()?;
    c.append(prep)?;
    c.append(&select_circuit(lay)?)?;
    c.append(&prep.inverse())?;
    Ok(c)
}

/// `H_a · Z_a · C_a(U_aff) · H_a`, with `C_a` placed on the pivots of
/// `u_aff` only. The new pivots are the gated broadcasts and `Z_a`.
pub fn u_linear_circuit(lay: &LinearLayout, u_aff: &Circuit) -> Result<Circuit> {
    let a = lay
        .a
        .ok_or_else(|| Error::InvalidArgument("layout has no control ancilla".into()))?;
    let inner_pivots: Vec<usize> = u_aff.pivots().map(<[usize]>::to_vec).unwrap_or_default();
    let mut c = lay.circuit()?;
    c.h(a)?;
    c.append(&u_aff.controlled_pivots(Control::on(a))?)?;
    c.push(Gate::new(Op::Z, a))?;
    let z = c.len() - 1;
    c.h(a)?;
    let mut pivots: Vec<usize> = inner_pivots.iter().map(|i| i + 1).collect();
    pivots.push(z);
    c.set_pivots(pivots);
    Ok(c)
}

/// Encodes `1 − 2 p_n L_n` with every non-system qubit projected onto 0.
pub fn build_u_aff(n: usize) -> Result<SpueDescriptor> {
    let lay = LinearLayout::new(n, false);
    let c = u_aff_circuit(&lay, &prepare_circuit(&lay)?)?;
    Ok(SpueDescriptor::all_zero(c, 1.0))
}

/// Encodes `p_n L_n` with every non-system qubit projected onto 0.
pub fn build_u_linear(n: usize) -> Result<SpueDescriptor> {
    let lay = LinearLayout::new(n, true);
    let aff = u_aff_circuit(&lay, &prepare_circuit(&lay)?)?;
    Ok(SpueDescriptor::all_zero(u_linear_circuit(&lay, &aff)?, 1.0))
}
