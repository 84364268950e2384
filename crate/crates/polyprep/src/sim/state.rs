use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, Op};
use crate::error::{Error, Result};

/// Largest register the dense engine will allocate.
pub const SIM_CAP: usize = 26;

/// Dense amplitudes over `n_qubits`, qubit 0 the most significant index bit.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

fn check_cap(n: usize) -> Result<()> {
    if n > SIM_CAP {
        return Err(Error::TooManyQubits {
            qubits: n,
            cap: SIM_CAP,
        });
    }
    Ok(())
}

impl StateVector {
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_cap(n_qubits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits, amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "{len} amplitudes is not a power of two"
            )));
        }
        let n_qubits = len.trailing_zeros() as usize;
        check_cap(n_qubits)?;
        Ok(StateVector { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn bit(&self, q: usize) -> usize {
        1 << (self.n_qubits - 1 - q)
    }

    pub fn apply_gate(&mut self, g: &Gate) {
        let n = self.n_qubits;
        let tb = self.bit(g.target);
        let (mask, value) = g.control_mask(n);
        let (mask, value) = (mask as usize, value as usize);
        let free = ((1usize << n) - 1) & !(mask | tb);
        let amps = &mut self.amps;
        match g.op {
            Op::X => for_each_subset(free, value, |i| amps.swap(i, i | tb)),
            Op::Z => for_each_subset(free, value, |i| amps[i | tb] = -amps[i | tb]),
            op if op.is_diagonal() => {
                let m = op.matrix();
                let (d0, d1) = (m[0][0], m[1][1]);
                for_each_subset(free, value, |i| {
                    amps[i] *= d0;
                    amps[i | tb] *= d1;
                })
            }
            op => {
                let m = op.matrix();
                for_each_subset(free, value, |i0| {
                    let i1 = i0 | tb;
                    let (a0, a1) = (amps[i0], amps[i1]);
                    amps[i0] = m[0][0] * a0 + m[0][1] * a1;
                    amps[i1] = m[1][0] * a0 + m[1][1] * a1;
                })
            }
        }
    }

    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<()> {
        if c.width() != self.n_qubits {
            return Err(Error::WidthMismatch {
                expected: self.n_qubits,
                found: c.width(),
            });
        }
        for g in c.gates() {
            self.apply_gate(g);
        }
        Ok(())
    }

    /// Probability that `qubits` read `outcomes`.
    pub fn probability(&self, qubits: &[usize], outcomes: &[bool]) -> f64 {
        let (mask, value) = self.pattern(qubits, outcomes);
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask == value)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    fn pattern(&self, qubits: &[usize], outcomes: &[bool]) -> (usize, usize) {
        let mut mask = 0;
        let mut value = 0;
        for (&q, &b) in qubits.iter().zip(outcomes) {
            mask |= self.bit(q);
            if b {
                value |= self.bit(q);
            }
        }
        (mask, value)
    }

    /// Projects `qubits` onto `outcomes`; returns the renormalized state and
    /// the projection probability.
    pub fn postselect(&self, qubits: &[usize], outcomes: &[bool]) -> Result<(StateVector, f64)> {
        if qubits.len() != outcomes.len() {
            return Err(Error::InvalidArgument(
                "qubits and outcomes differ in length".into(),
            ));
        }
        let mut sorted = qubits.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateQubit(w[0]));
        }
        if let Some(&q) = qubits.iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                width: self.n_qubits,
            });
        }
        let (mask, value) = self.pattern(qubits, outcomes);
        let prob = self.probability(qubits, outcomes);
        if prob <= 0.0 {
            return Err(Error::ZeroProbability);
        }
        let scale = 1.0 / prob.sqrt();
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if i & mask == value {
                    a * scale
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok((
            StateVector {
                n_qubits: self.n_qubits,
                amps,
            },
            prob,
        ))
    }

    /// Amplitudes of the `qubits` register when every other qubit reads 0,
    /// ordered with `qubits[0]` as the most significant bit.
    pub fn restrict(&self, qubits: &[usize]) -> Vec<Complex64> {
        (0..1usize << qubits.len())
            .map(|x| {
                let mut idx = 0;
                for (k, &q) in qubits.iter().enumerate() {
                    if x >> (qubits.len() - 1 - k) & 1 == 1 {
                        idx |= self.bit(q);
                    }
                }
                self.amps[idx]
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let pairs: Vec<[f64; 2]> = self.amps.iter().map(|a| [a.re, a.im]).collect();
        serde_json::to_string(&pairs).expect("amplitudes serialize")
    }
}

/// Calls `f(j | value)` for every subset `j` of `free`, in increasing order
/// (carry-rippler enumeration).
#[inline(always)]
fn for_each_subset(free: usize, value: usize, mut f: impl FnMut(usize)) {
    let mut j = 0usize;
    loop {
        f(j | value);
        if j == free {
            break;
        }
        j = j.wrapping_sub(free) & free;
    }
}

pub fn apply(state: &StateVector, c: &Circuit) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply_circuit(c)?;
    Ok(out)
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn fidelity(a: &StateVector, b: &StateVector) -> f64 {
    inner(&a.amps, &b.amps).norm_sqr().min(1.0)
}

/// `min_φ ‖a − e^{iφ} b‖₂` for amplitude vectors, summed directly after
/// aligning the phase so small distances are not lost to cancellation.
pub fn distance_up_to_phase(a: &[Complex64], b: &[Complex64]) -> f64 {
    let ov = inner(b, a);
    let phase = if ov.norm() > 0.0 {
        ov / ov.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - phase * y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
