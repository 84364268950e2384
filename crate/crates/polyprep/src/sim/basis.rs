use crate::circuit::{Circuit, Gate, Op};
use crate::error::{Error, Result};

/// A computational basis state with a ±1 phase, evolved exactly under
/// X- and Z-type gates with any number of controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisState {
    width: usize,
    bits: u128,
    negative: bool,
}

impl BasisState {
    pub fn new(width: usize) -> Self {
        assert!(width <= 128, "basis simulator holds at most 128 qubits");
        BasisState {
            width,
            bits: 0,
            negative: false,
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut s = BasisState::new(bits.len());
        for (q, &b) in bits.iter().enumerate() {
            s.set(q, b);
        }
        s
    }

    fn mask(&self, q: usize) -> u128 {
        1u128 << (self.width - 1 - q)
    }

    pub fn get(&self, q: usize) -> bool {
        self.bits & self.mask(q) != 0
    }

    pub fn set(&mut self, q: usize, b: bool) {
        let m = self.mask(q);
        if b {
            self.bits |= m;
        } else {
            self.bits &= !m;
        }
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.width).map(|q| self.get(q)).collect()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        let (mask, value) = g.control_mask(self.width);
        if self.bits & mask != value {
            return Ok(());
        }
        match g.op {
            Op::X => self.bits ^= self.mask(g.target),
            Op::Z => self.negative ^= self.get(g.target),
            op => {
                return Err(Error::InvalidArgument(format!(
                    "{} is not a basis-preserving gate",
                    op.base_name()
                )))
            }
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<()> {
        if c.width() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: c.width(),
            });
        }
        for g in c.gates() {
            self.apply_gate(g)?;
        }
        Ok(())
    }
}
