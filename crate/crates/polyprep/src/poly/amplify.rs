use std::f64::consts::PI;

use crate::circuit::{mcx_gates, Circuit, Control, Gate, Op};
use crate::error::{Error, Result};
use crate::linear::{compute_pn, prepare_circuit, u_aff_circuit, u_linear_circuit, LinearLayout};
use crate::sim::SpueDescriptor;

/// Lower bound on the flag probability of `Ψ_n` over all `n`.
pub const MIN_OVERLAP: f64 = 1.0 / 6.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Amplification {
    /// Phase-matched amplification from the known overlap; flag probability
    /// reaches 1 up to rounding.
    #[default]
    Exact,
    /// Fixed-point sequence needing only `p_n ≥ 1/6`, with
    /// `O(log(1/δ))` rounds.
    FixedPoint,
}

/// `(rounds, phase)` for exact amplification of overlap `p`.
pub fn exact_schedule(p: f64) -> (usize, f64) {
    let theta = p.sqrt().asin();
    let j = (PI / (4.0 * theta) - 0.5).ceil().max(0.0) as usize;
    if j == 0 {
        return (0, 0.0);
    }
    let s = ((PI / (4 * j + 2) as f64).sin() / theta.sin()).min(1.0);
    (j, 2.0 * s.asin())
}

/// Per-round `(α_j, β_j)` of the fixed-point sequence reaching failure
/// probability at most `delta` whenever the overlap is at least `w`.
pub fn fixed_point_schedule(delta: f64, w: f64) -> Vec<(f64, f64)> {
    let d = delta.sqrt();
    let mut len = ((2.0 / d).ln() / w.sqrt()).ceil() as usize;
    if len % 2 == 0 {
        len += 1;
    }
    let l = (len - 1) / 2;
    let inv_gamma = ((1.0 / d).acosh() / len as f64).cosh();
    let root = (1.0 - 1.0 / (inv_gamma * inv_gamma)).max(0.0).sqrt();
    let alpha = |j: usize| 2.0 * (1.0 / ((2.0 * PI * j as f64 / len as f64).tan() * root)).atan();
    (1..=l).map(|j| (alpha(j), -alpha(l - j + 1))).collect()
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "delta {delta} outside (0, 1)"
        )));
    }
    Ok(())
}

/// One round: phase on the flag, `Ψ†`, phase on the all-zero state of the
/// flag and control registers, `Ψ`.
fn round(
    c: &mut Circuit,
    lay: &LinearLayout,
    psi: &Circuit,
    flag_phase: f64,
    zero_phase: f64,
) -> Result<()> {
    c.rz(lay.flag, flag_phase)?;
    c.append(&psi.inverse())?;
    let controls: Vec<Control> = std::iter::once(lay.flag)
        .chain(lay.control.iter().copied())
        .map(Control::off)
        .collect();
    let (s1, s2) = (lay.scratch[0], lay.scratch[1]);
    let dirty: Vec<usize> = lay
        .copy
        .iter()
        .chain(&lay.system)
        .chain(lay.a.iter())
        .copied()
        .collect();
    let gates = mcx_gates(&controls, s2, &[s1], &dirty)?;
    c.extend(gates.iter().cloned())?;
    c.push(Gate::new(Op::Rz(zero_phase), s2))?;
    c.extend(gates.into_iter().rev())?;
    c.append(psi)?;
    Ok(())
}

/// `Ψ_n^δ` on `lay`, built from `r` rounds around `Ψ_n`; returns the circuit
/// and `r`. Copy and system qubits serve as dirty ancillae.
pub fn amplified_prepare(
    lay: &LinearLayout,
    delta: f64,
    strategy: Amplification,
) -> Result<(Circuit, usize)> {
    check_delta(delta)?;
    let psi = prepare_circuit(lay)?;
    let mut c = psi.clone();
    let rounds = match strategy {
        Amplification::Exact => {
            let (j, phi) = exact_schedule(compute_pn(lay.n));
            for _ in 0..j {
                round(&mut c, lay, &psi, phi, phi)?;
            }
            j
        }
        Amplification::FixedPoint => {
            let sched = fixed_point_schedule(delta, MIN_OVERLAP);
            for &(alpha, beta) in &sched {
                round(&mut c, lay, &psi, -beta, alpha)?;
            }
            sched.len()
        }
    };
    Ok((c, rounds))
}

/// `Ψ_n^δ` on the full linear-encoding register without the `a` qubit.
pub fn amplify_prepare(n: usize, delta: f64) -> Result<Circuit> {
    Ok(amplified_prepare(&LinearLayout::new(n, false), delta, Amplification::Exact)?.0)
}

/// Encodes `1 − 2(1 − ε)L_n`; also returns the round count.
pub fn build_u_aff_amplified(
    n: usize,
    delta: f64,
    strategy: Amplification,
) -> Result<(SpueDescriptor, usize)> {
    let lay = LinearLayout::new(n, false);
    let (prep, rounds) = amplified_prepare(&lay, delta, strategy)?;
    Ok((
        SpueDescriptor::all_zero(u_aff_circuit(&lay, &prep)?, 1.0),
        rounds,
    ))
}

/// Encodes `(1 − ε)L_n`; also returns the round count.
pub fn build_u_linear_amplified(
    n: usize,
    delta: f64,
    strategy: Amplification,
) -> Result<(SpueDescriptor, usize)> {
    let lay = LinearLayout::new(n, true);
    let (prep, rounds) = amplified_prepare(&lay, delta, strategy)?;
    let aff = u_aff_circuit(&lay, &prep)?;
    Ok((
        SpueDescriptor::all_zero(u_linear_circuit(&lay, &aff)?, 1.0),
        rounds,
    ))
}

/// Odd polynomial approximating `sign(x)` to `delta` on `|x| ≥ gap`, bounded
/// by 1 on `[−1, 1]`, stored by Chebyshev coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SignPolynomial {
    pub kappa: f64,
    pub gap: f64,
    pub chebyshev: Vec<f64>,
}

impl SignPolynomial {
    pub fn degree(&self) -> usize {
        self.chebyshev.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = x.clamp(-1.0, 1.0).acos();
        self.chebyshev
            .iter()
            .enumerate()
            .map(|(k, b)| b * (k as f64 * t).cos())
            .sum()
    }
}

/// Truncated Chebyshev series of `erf(κx)`, separating amplitudes
/// `√p_n ≥ 1/√6` from 0.
pub fn sign_polynomial(delta: f64) -> Result<SignPolynomial> {
    sign_polynomial_with_gap(delta, MIN_OVERLAP.sqrt())
}

pub fn sign_polynomial_with_gap(delta: f64, gap: f64) -> Result<SignPolynomial> {
    check_delta(delta)?;
    if !(gap > 0.0 && gap < 1.0) {
        return Err(Error::InvalidArgument(format!("gap {gap} outside (0, 1)")));
    }
    // smallest κ with erfc(κ·gap) ≤ δ/2
    let (mut lo, mut hi) = (0.0, 1.0);
    while libm::erfc(hi * gap) > delta / 2.0 {
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if libm::erfc(mid * gap) > delta / 2.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let kappa = hi;
    let nodes = 1024;
    let f = |t: f64| libm::erf(kappa * t.cos());
    let full: Vec<f64> = (0..nodes)
        .map(|k| {
            let s: f64 = (0..nodes)
                .map(|i| {
                    let t = PI * (i as f64 + 0.5) / nodes as f64;
                    f(t) * (k as f64 * t).cos()
                })
                .sum();
            s * 2.0 / nodes as f64
        })
        .collect();
    let grid: Vec<f64> = (0..=4000).map(|i| -1.0 + i as f64 / 2000.0).collect();
    let mut d = 1;
    loop {
        let cheb: Vec<f64> = (0..=d)
            .map(|k| if k % 2 == 1 { full[k] } else { 0.0 })
            .collect();
        let cand = SignPolynomial {
            kappa,
            gap,
            chebyshev: cheb,
        };
        let err = grid
            .iter()
            .map(|&x| (cand.eval(x) - libm::erf(kappa * x)).abs())
            .fold(0.0, f64::max);
        if err <= delta / 4.0 {
            let scale = 1.0 / (1.0 + delta / 4.0);
            return Ok(SignPolynomial {
                chebyshev: cand.chebyshev.iter().map(|b| b * scale).collect(),
                ..cand
            });
        }
        d += 2;
        if d >= nodes {
            return Err(Error::InvalidArgument(format!("delta {delta} too small")));
        }
    }
}
