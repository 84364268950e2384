//! End-to-end preparation of `|p⟩ ∝ Σ_x p(x)|x⟩` over the grid
//! `x = i/2^n`, and its verification by simulation.

use num_complex::Complex64;
use serde::Serialize;

use crate::circuit::{compute_metrics, Circuit, CircuitMetrics, Role};
use crate::error::{Error, Result};
use crate::poly::{
    build_gqet, build_u_linear_amplified, scaling_factor, Amplification, Polynomial,
};
use crate::sim::{distance_up_to_phase, inner, StateVector, SIM_CAP};

/// Smallest accepted target error.
pub const MIN_EPSILON_PRIME: f64 = 1e-10;
const MAX_EPSILON: f64 = 0.1;

#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    pub amplification: Amplification,
    pub simulate: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            amplification: Amplification::Exact,
            simulate: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub n: usize,
    pub degree: usize,
    pub epsilon_target: Option<f64>,
    pub epsilon: Option<f64>,
    pub metrics: CircuitMetrics,
    pub amplification_rounds: Option<usize>,
    /// Probability that every non-system qubit reads 0.
    pub success_probability: Option<f64>,
    /// The same probability from the synthesized polynomial on the exact grid.
    pub success_analytic: Option<f64>,
    /// `‖p‖₂² / (β·‖p‖_∞)²` with `β` and the sup-norm on `[−1, 1]` taken for
    /// `p` itself: the large-`n` limit of the success probability.
    pub success_limit: Option<f64>,
    pub fidelity: Option<f64>,
    /// Phase-minimized two-norm distance to the normalized target.
    pub two_norm_error: Option<f64>,
    /// `2ε‖p′‖₂/‖p‖₂`.
    pub error_bound: Option<f64>,
    pub beta: Option<f64>,
    /// `max_{[−1,1]} |q|` of the rescaled polynomial `q(y) = p((1−2^{−n})y)`.
    pub sup_norm: Option<f64>,
    pub divisor: Option<f64>,
}

impl PipelineReport {
    fn from_metrics(n: usize, degree: usize, metrics: CircuitMetrics) -> Self {
        PipelineReport {
            n,
            degree,
            epsilon_target: None,
            epsilon: None,
            metrics,
            amplification_rounds: None,
            success_probability: None,
            success_analytic: None,
            success_limit: None,
            fidelity: None,
            two_norm_error: None,
            error_bound: None,
            beta: None,
            sup_norm: None,
            divisor: None,
        }
    }
}

/// Target amplitudes `p(i/2^n)`, normalized.
pub fn target_state(p: &Polynomial, n: usize) -> Result<Vec<Complex64>> {
    let norm = p.discrete_norm(n);
    if norm == 0.0 {
        return Err(Error::ZeroProbability);
    }
    let big_n = (1u64 << n) as f64;
    Ok((0..1u64 << n)
        .map(|i| p.eval_real(i as f64 / big_n) / norm)
        .collect())
}

/// `ε = ε′‖p‖₂ / (2‖p′‖₂)`, at most 0.1.
pub fn epsilon_budget(p: &Polynomial, epsilon_prime: f64) -> Result<f64> {
    if !(epsilon_prime >= MIN_EPSILON_PRIME) || !epsilon_prime.is_finite() {
        return Err(Error::BudgetInfeasible(epsilon_prime));
    }
    let dp = p.derivative().two_norm();
    if dp == 0.0 {
        return Ok(MAX_EPSILON);
    }
    Ok((epsilon_prime * p.two_norm() / (2.0 * dp)).min(MAX_EPSILON))
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(())
}

/// Synthesizes the preparation circuit: `H^{⊗n}` on the system register, then
/// the eigenvalue transform of `q(y) = p((1−2^{−n})y)` applied to the
/// amplified encoding of `L_n`. Success means every non-system qubit reads 0.
pub fn prepare_state(
    p: &Polynomial,
    n: usize,
    epsilon_prime: f64,
    options: PipelineOptions,
) -> Result<(Circuit, PipelineReport)> {
    check_n(n)?;
    let p = p.clone().nonzero()?;
    let epsilon = epsilon_budget(&p, epsilon_prime)?;
    let (enc, rounds) = build_u_linear_amplified(n, epsilon, options.amplification)?;
    let scale = 1.0 - (-(n as f64)).exp2();
    let q = p.rescaled_argument(scale);
    let g = build_gqet(&enc, &q.chebyshev())?;

    let body = g.spue.circuit;
    let mut circuit = Circuit::with_layout(body.width(), body.layout.clone())?;
    for &s in body.layout.get(Role::System) {
        circuit.h(s)?;
    }
    circuit.append(&body)?;

    let mut report = if options.simulate {
        verify(&circuit, &p, n)?
    } else {
        PipelineReport::from_metrics(n, p.degree(), compute_metrics(&circuit))
    };
    let big_n = (1u64 << n) as f64;
    let analytic = (0..1u64 << n)
        .map(|i| (p.eval_real(i as f64 / big_n) / g.divisor).norm_sqr())
        .sum::<f64>()
        / big_n;
    let sup = q.sup_norm_symmetric().0;
    let dp = p.derivative().two_norm();
    report.epsilon_target = Some(epsilon_prime);
    report.epsilon = Some(epsilon);
    report.amplification_rounds = Some(rounds);
    report.success_analytic = Some(analytic);
    let limit = scaling_factor(&p.chebyshev())?;
    report.success_limit = Some(p.two_norm().powi(2) / limit.circle_max.powi(2));
    report.error_bound = Some(2.0 * epsilon * dp / p.two_norm());
    report.beta = Some(g.scaling.beta);
    report.sup_norm = Some(sup);
    report.divisor = Some(g.divisor);
    Ok((circuit, report))
}

/// Simulates `circuit` from `|0⟩`, postselects every non-system qubit on 0
/// and compares the system register with the normalized `p` on the grid.
pub fn verify(circuit: &Circuit, p: &Polynomial, n: usize) -> Result<PipelineReport> {
    check_n(n)?;
    let system = circuit.layout.get(Role::System).to_vec();
    if system.len() != n {
        return Err(Error::WidthMismatch {
            expected: n,
            found: system.len(),
        });
    }
    if circuit.width() > SIM_CAP {
        return Err(Error::TooManyQubits {
            qubits: circuit.width(),
            cap: SIM_CAP,
        });
    }
    let target = target_state(p, n)?;
    let mut s = StateVector::zero(circuit.width())?;
    s.apply_circuit(circuit)?;
    let amps = s.restrict(&system);
    let success: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if success <= 0.0 {
        return Err(Error::ZeroProbability);
    }
    let out: Vec<Complex64> = amps.iter().map(|a| a / success.sqrt()).collect();
    let mut report = PipelineReport::from_metrics(n, p.degree(), compute_metrics(circuit));
    report.success_probability = Some(success.min(1.0));
    report.fidelity = Some(inner(&target, &out).norm_sqr().min(1.0));
    report.two_norm_error = Some(distance_up_to_phase(&target, &out));
    Ok(report)
}
