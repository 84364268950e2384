use std::collections::VecDeque;

use super::{Circuit, Control, Gate};
use crate::error::{Error, Result};

/// Batched AND ladder over `controls` (at least two) rooted at the clean `anc`.
///
/// Returns the gates and a chain of controls whose conjunction equals the
/// conjunction of `controls`. Each batch is tree-reduced onto qubits freed by
/// earlier batches; those qubits hold known values whenever every earlier
/// batch is satisfied, which is the only case where the result matters.
fn ladder(controls: &[Control], anc: usize) -> (Vec<Gate>, Vec<Control>) {
    let mut gates = vec![Gate::ccx(controls[0], controls[1], anc)];
    let mut chain = vec![Control::on(anc)];
    // (qubit, value it holds when the chain so far is satisfied)
    let mut pool: VecDeque<(usize, bool)> =
        controls[..2].iter().map(|c| (c.qubit, c.bit)).collect();
    let mut rest = &controls[2..];
    while rest.len() >= 2 {
        let take = (pool.len() + 1).min(rest.len());
        let (batch, tail) = rest.split_at(take);
        rest = tail;
        let mut level = batch.to_vec();
        let mut freed = Vec::new();
        while level.len() > 1 {
            let mut next = Vec::with_capacity(level.len() / 2 + 1);
            for pair in level.chunks(2) {
                if let [a, b] = *pair {
                    let (q, v) = pool.pop_front().expect("pool covers batch");
                    if v {
                        gates.push(Gate::x(q));
                    }
                    gates.push(Gate::ccx(a, b, q));
                    freed.push((a.qubit, a.bit));
                    freed.push((b.qubit, b.bit));
                    next.push(Control::on(q));
                } else {
                    next.push(pair[0]);
                }
            }
            level = next;
        }
        chain.push(level[0]);
        pool.extend(freed);
    }
    chain.extend_from_slice(rest);
    (gates, chain)
}

/// `target ^= AND(controls)` with `controls.len() - 2` dirty qubits, restored.
fn dirty_chain(controls: &[Control], target: usize, dirty: &[usize]) -> Vec<Gate> {
    let m = controls.len();
    match m {
        1 => return vec![Gate::controlled(super::Op::X, controls.to_vec(), target)],
        2 => return vec![Gate::ccx(controls[0], controls[1], target)],
        _ => {}
    }
    let a = |i: usize| dirty[i - 1];
    let c = |i: usize| controls[i - 1];
    let top = Gate::ccx(c(m), Control::on(a(m - 2)), target);
    let mut sweep = Vec::new();
    for i in (3..m).rev() {
        sweep.push(Gate::ccx(c(i), Control::on(a(i - 2)), a(i - 1)));
    }
    sweep.push(Gate::ccx(c(1), c(2), a(1)));
    for i in 3..m {
        sweep.push(Gate::ccx(c(i), Control::on(a(i - 2)), a(i - 1)));
    }
    let mut gates = Vec::with_capacity(2 * sweep.len() + 2);
    for _ in 0..2 {
        gates.push(top.clone());
        gates.extend(sweep.iter().cloned());
    }
    gates
}

fn chain_len(k: usize) -> usize {
    let controls: Vec<Control> = (0..k).map(Control::on).collect();
    ladder(&controls, k).1.len()
}

/// `(clean, dirty)` qubits needed for `k` controls.
pub fn mcx_requirements(k: usize) -> (usize, usize) {
    if k <= 2 {
        return (0, 0);
    }
    (1, chain_len(k).saturating_sub(2))
}

/// Multi-controlled X with open or filled controls in logarithmic depth.
///
/// Three or more controls need one qubit of `clean` (zeroed, returned zeroed)
/// and `mcx_requirements(k).1` qubits drawn from the remaining clean ones and
/// `dirty` (arbitrary state, restored exactly).
pub fn mcx_gates(
    controls: &[Control],
    target: usize,
    clean: &[usize],
    dirty: &[usize],
) -> Result<Vec<Gate>> {
    let k = controls.len();
    if k == 0 {
        return Err(Error::InvalidArgument(
            "mcx needs at least one control".into(),
        ));
    }
    let mut used: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
    used.push(target);
    let (need_clean, need_dirty) = mcx_requirements(k);
    if clean.len() < need_clean {
        return Err(Error::InsufficientAncillae {
            kind: "clean",
            needed: need_clean,
            available: clean.len(),
        });
    }
    let borrow: Vec<usize> = clean
        .iter()
        .skip(need_clean)
        .chain(dirty)
        .copied()
        .collect();
    if borrow.len() < need_dirty {
        return Err(Error::InsufficientAncillae {
            kind: "dirty",
            needed: need_dirty,
            available: borrow.len(),
        });
    }
    used.extend_from_slice(&clean[..need_clean]);
    used.extend_from_slice(&borrow[..need_dirty]);
    let mut sorted = used.clone();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateQubit(w[0]));
    }
    if k <= 2 {
        return Ok(dirty_chain(controls, target, &[]));
    }
    let (up, chain) = ladder(controls, clean[0]);
    let mut gates = up.clone();
    gates.extend(dirty_chain(&chain, target, &borrow[..need_dirty]));
    gates.extend(up.into_iter().rev());
    Ok(gates)
}

pub fn mcx(
    width: usize,
    controls: &[Control],
    target: usize,
    clean: &[usize],
    dirty: &[usize],
) -> Result<Circuit> {
    Circuit::from_gates(width, mcx_gates(controls, target, clean, dirty)?)
}
