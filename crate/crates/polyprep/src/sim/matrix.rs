use nalgebra::DMatrix;
use num_complex::Complex64;

use super::StateVector;
use crate::circuit::Circuit;
use crate::error::Result;

/// `Σ b_k T_k(A)` through `T_{k+1} = 2A·T_k − T_{k−1}`.
pub fn matrix_chebyshev_oracle(a: &DMatrix<Complex64>, b: &[Complex64]) -> DMatrix<Complex64> {
    let dim = a.nrows();
    let mut out = DMatrix::zeros(dim, dim);
    let mut prev = DMatrix::identity(dim, dim);
    let mut cur = a.clone();
    for (k, &bk) in b.iter().enumerate() {
        match k {
            0 => out += &prev * bk,
            1 => out += &cur * bk,
            _ => {
                let next = a * &cur * Complex64::new(2.0, 0.0) - &prev;
                prev = std::mem::replace(&mut cur, next);
                out += &cur * bk;
            }
        }
    }
    out
}

/// Full unitary of a small circuit, column by column.
pub fn unitary_of(c: &Circuit) -> Result<DMatrix<Complex64>> {
    let dim = 1usize << c.width();
    let mut m = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        let mut s = StateVector::basis(c.width(), j)?;
        s.apply_circuit(c)?;
        for (i, a) in s.amplitudes().iter().enumerate() {
            m[(i, j)] = *a;
        }
    }
    Ok(m)
}
