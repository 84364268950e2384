use super::{Circuit, Gate};
use crate::error::{Error, Result};

/// CNOTs copying `source` onto zeroed `dests` in a doubling tree:
/// every qubit already holding the value feeds one new qubit per layer.
pub fn fanout_gates(source: usize, dests: &[usize]) -> Result<Vec<Gate>> {
    if dests.is_empty() {
        return Err(Error::InvalidArgument(
            "fan-out needs at least one destination".into(),
        ));
    }
    if dests.contains(&source) {
        return Err(Error::DuplicateQubit(source));
    }
    let mut holders = vec![source];
    let mut next = 0;
    let mut gates = Vec::with_capacity(dests.len());
    while next < dests.len() {
        let round = holders.len().min(dests.len() - next);
        for i in 0..round {
            gates.push(Gate::cx(holders[i], dests[next + i]));
        }
        holders.extend_from_slice(&dests[next..next + round]);
        next += round;
    }
    Ok(gates)
}

pub fn fanout_copy(width: usize, source: usize, dests: &[usize]) -> Result<Circuit> {
    Circuit::from_gates(width, fanout_gates(source, dests)?)
}
