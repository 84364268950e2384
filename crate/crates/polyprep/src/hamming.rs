//! Hamming-weight circuits: the weight-class counter `G_n`, the merge block
//! `h`, and the two-scratch EXACT-one oracle `E_n`.

use crate::circuit::{mcx_gates, Circuit, Control, Gate, RegisterLayout, Role};
use crate::error::{Error, Result};

/// `min(popcount(x), 2)`.
pub fn classical_g(x: &[bool]) -> u8 {
    x.iter().filter(|&&b| b).count().min(2) as u8
}

/// Whether `x` has Hamming weight exactly one.
pub fn classical_f(x: &[bool]) -> bool {
    x.iter().filter(|&&b| b).count() == 1
}

/// Two-bit code of a weight class: 0 ↦ (0,0), 1 ↦ (1,0), 2 ↦ (0,1).
pub fn encode_class(g: u8) -> (bool, bool) {
    match g {
        0 => (false, false),
        1 => (true, false),
        _ => (false, true),
    }
}

/// Inverse of [`encode_class`]; `None` for the unused code (1,1).
pub fn decode_class(code: (bool, bool)) -> Option<u8> {
    match code {
        (false, false) => Some(0),
        (true, false) => Some(1),
        (false, true) => Some(2),
        (true, true) => None,
    }
}

/// Work qubits `G_m` needs besides its output pair: `2(m−2) + (m mod 2)`.
pub fn gn_work_count(m: usize) -> usize {
    2 * m.saturating_sub(2) + m % 2
}

fn g2_gates(x0: usize, x1: usize, o: (usize, usize)) -> [Gate; 3] {
    [
        Gate::cx(x0, o.0),
        Gate::cx(x1, o.0),
        Gate::ccx(Control::on(x0), Control::on(x1), o.1),
    ]
}

/// Writes the class of `h(a, c) = min(a + c, 2)` onto the zeroed pair `o`.
pub fn h_merge_gates(a: (usize, usize), c: (usize, usize), o: (usize, usize)) -> [Gate; 5] {
    [
        Gate::ccx(Control::on(a.0), Control::off(c.1), o.0),
        Gate::ccx(Control::on(c.0), Control::off(a.1), o.0),
        Gate::x(o.1),
        Gate::ccx(Control::off(a.1), Control::off(c.1), o.1),
        Gate::ccx(Control::on(a.0), Control::on(c.0), o.1),
    ]
}

/// Weight-class counter over `data` onto the zeroed pair `out`, drawing
/// intermediate codes from the zeroed `work` qubits.
///
/// Leaves are adjacent data pairs (a lone last qubit becomes a leaf with one
/// work qubit as its second bit); codes are merged pairwise level by level and
/// an odd node at the end of a level is carried up unchanged.
pub fn gn_gates(data: &[usize], work: &[usize], out: (usize, usize)) -> Result<Vec<Gate>> {
    let m = data.len();
    if m < 2 {
        return Err(Error::InvalidArgument(
            "G_n needs at least two data qubits".into(),
        ));
    }
    let need = gn_work_count(m);
    if work.len() < need {
        return Err(Error::InsufficientAncillae {
            kind: "zeroed",
            needed: need,
            available: work.len(),
        });
    }
    if m == 2 {
        return Ok(g2_gates(data[0], data[1], out).to_vec());
    }
    let mut free = work[..need].iter().copied();
    let mut take = || free.next().expect("work count covers the tree");
    let mut gates = Vec::new();
    let mut level: Vec<(usize, usize)> = Vec::with_capacity(m / 2 + 1);
    for chunk in data.chunks(2) {
        if let [x0, x1] = *chunk {
            let o = (take(), take());
            gates.extend(g2_gates(x0, x1, o));
            level.push(o);
        } else {
            level.push((chunk[0], take()));
        }
    }
    while level.len() > 1 {
        let last = level.len() == 2;
        let mut next = Vec::with_capacity(level.len() / 2 + 1);
        for chunk in level.chunks(2) {
            if let [a, c] = *chunk {
                let o = if last { out } else { (take(), take()) };
                gates.extend(h_merge_gates(a, c, o));
                next.push(o);
            } else {
                next.push(chunk[0]);
            }
        }
        level = next;
    }
    Ok(gates)
}

/// One data qubit and one zeroed ancilla; the pair `(x, 0)` already is the
/// code of `g_1(x)`, so no gates are needed.
pub fn build_g1() -> Circuit {
    let layout = RegisterLayout::new()
        .with(Role::System, [0])
        .with(Role::Flag, [1]);
    Circuit::with_layout(2, layout).expect("fixed layout")
}

/// Data qubits 0, 1; output pair 2, 3.
pub fn build_g2() -> Circuit {
    let layout = RegisterLayout::new()
        .with(Role::System, [0, 1])
        .with(Role::Flag, [2, 3]);
    let mut c = Circuit::with_layout(4, layout).expect("fixed layout");
    c.extend(g2_gates(0, 1, (2, 3))).expect("valid gates");
    c
}

/// Inputs (0,1) and (2,3); output pair (4,5).
pub fn build_h_merge() -> Circuit {
    let layout = RegisterLayout::new()
        .with(Role::System, 0..4)
        .with(Role::Flag, [4, 5]);
    let mut c = Circuit::with_layout(6, layout).expect("fixed layout");
    c.extend(h_merge_gates((0, 1), (2, 3), (4, 5)))
        .expect("valid gates");
    c
}

/// Data `0..n`, work qubits next, output pair last. Intermediate codes are
/// left in place.
pub fn build_gn(n: usize) -> Result<Circuit> {
    build_gn_with(n, false)
}

/// As [`build_gn`]; with `uncompute` the work qubits are returned to zero at
/// the cost of roughly doubling the depth.
pub fn build_gn_with(n: usize, uncompute: bool) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::InvalidArgument("G_n needs n >= 2".into()));
    }
    let w = gn_work_count(n);
    let width = n + w + 2;
    let work: Vec<usize> = (n..n + w).collect();
    let out = (width - 2, width - 1);
    let layout = RegisterLayout::new()
        .with(Role::System, 0..n)
        .with(Role::Scratch, work.iter().copied())
        .with(Role::Flag, [out.0, out.1]);
    let mut c = Circuit::with_layout(width, layout)?;
    let gates = gn_gates(&(0..n).collect::<Vec<_>>(), &work, out)?;
    if uncompute && n > 2 {
        let undo: Vec<Gate> = gates[..gates.len() - 5].iter().rev().cloned().collect();
        c.extend(gates)?;
        c.extend(undo)?;
    } else {
        c.extend(gates)?;
    }
    Ok(c)
}

/// Segment lengths `(k, k + l1, k + l2)` with `n = 3k + r`.
pub fn segments(n: usize) -> [usize; 3] {
    let (k, r) = (n / 3, n % 3);
    [k, k + usize::from(r >= 1), k + usize::from(r == 2)]
}

/// `flag ^= [popcount(data) = 1]` using the two zeroed `scratch` qubits,
/// which are returned to zero.
///
/// The data is split into three segments. For each segment an open-controlled
/// MCX sets the second scratch qubit when the other two segments are all
/// zero; those qubits are then clean and host the segment's weight counter,
/// whose weight-one bit lands on the first scratch qubit.
pub fn exact_one_gates(data: &[usize], scratch: [usize; 2], flag: usize) -> Result<Vec<Gate>> {
    let n = data.len();
    match n {
        0 => return Err(Error::InvalidArgument("E_n needs n >= 1".into())),
        1 => return Ok(vec![Gate::cx(data[0], flag)]),
        2 => return Ok(vec![Gate::cx(data[0], flag), Gate::cx(data[1], flag)]),
        _ => {}
    }
    let [s1, s2] = scratch;
    let [a, b, _] = segments(n);
    let bounds = [(a + b, n), (a, a + b), (0, a)];
    let mut gates = Vec::new();
    for (lo, hi) in bounds {
        let seg = &data[lo..hi];
        let others: Vec<usize> = data[..lo].iter().chain(&data[hi..]).copied().collect();
        let controls: Vec<Control> = others.iter().map(|&q| Control::off(q)).collect();
        let mut dirty = seg.to_vec();
        dirty.push(flag);
        let select = mcx_gates(&controls, s2, &[s1], &dirty)?;
        let body = if seg.len() == 1 {
            vec![Gate::ccx(Control::on(seg[0]), Control::on(s2), flag)]
        } else {
            let need = gn_work_count(seg.len()) + 1;
            if others.len() < need {
                return Err(Error::InsufficientAncillae {
                    kind: "conditionally clean",
                    needed: need,
                    available: others.len(),
                });
            }
            let count = gn_gates(seg, &others[1..need], (s1, others[0]))?;
            let mut body = count.clone();
            body.push(Gate::ccx(Control::on(s1), Control::on(s2), flag));
            body.extend(count.into_iter().rev());
            body
        };
        gates.extend(select.iter().cloned());
        gates.extend(body);
        gates.extend(select.into_iter().rev());
    }
    Ok(gates)
}

/// Data `0..n`, flag `n`, scratch `n+1, n+2`.
pub fn build_exact_one(n: usize) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::InvalidArgument("E_n needs n >= 1".into()));
    }
    let layout = RegisterLayout::new()
        .with(Role::System, 0..n)
        .with(Role::Flag, [n])
        .with(Role::Scratch, [n + 1, n + 2]);
    let mut c = Circuit::with_layout(n + 3, layout)?;
    let data: Vec<usize> = (0..n).collect();
    c.extend(exact_one_gates(&data, [n + 1, n + 2], n)?)?;
    Ok(c)
}
