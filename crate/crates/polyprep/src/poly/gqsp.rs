use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::completion::complementary_polynomial;
use crate::circuit::{Circuit, Control, Gate, Op, Role};
use crate::error::{Error, Result};

const DEGENERATE: f64 = 1e-13;

/// GQSP angles: `R(θ_0, φ_0, λ)` then `d` rounds of
/// (ancilla-open-controlled `U`, `R(θ_j, φ_j, 0)`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseSequence {
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
    pub lambda: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhaseJson {
    degree: usize,
    lambda: f64,
    thetas: Vec<f64>,
    phis: Vec<f64>,
    convention: String,
}

const CONVENTION: &str = "phi = phi' - pi";

impl PhaseSequence {
    pub fn degree(&self) -> usize {
        self.thetas.len() - 1
    }

    /// Shifted phases `φ′_j = φ_j + π` of the drawn-circuit convention.
    pub fn phis_primed(&self) -> Vec<f64> {
        self.phis.iter().map(|p| p + std::f64::consts::PI).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.thetas.is_empty() || self.thetas.len() != self.phis.len() {
            return Err(Error::InvalidArgument(format!(
                "{} thetas against {} phis",
                self.thetas.len(),
                self.phis.len()
            )));
        }
        if !self
            .thetas
            .iter()
            .chain(&self.phis)
            .chain([&self.lambda])
            .all(|x| x.is_finite())
        {
            return Err(Error::NonFiniteAngle);
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PhaseJson {
            degree: self.degree(),
            lambda: self.lambda,
            thetas: self.thetas.clone(),
            phis: self.phis.clone(),
            convention: CONVENTION.into(),
        })
        .expect("phases serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: PhaseJson = serde_json::from_str(s)?;
        let out = PhaseSequence {
            thetas: j.thetas,
            phis: j.phis,
            lambda: j.lambda,
        };
        out.validate()?;
        if out.degree() != j.degree {
            return Err(Error::Schema {
                index: None,
                msg: format!(
                    "degree {} does not match {} angle pairs",
                    j.degree,
                    out.thetas.len()
                ),
            });
        }
        if j.convention != CONVENTION {
            return Err(Error::Schema {
                index: None,
                msg: format!("unknown convention {:?}", j.convention),
            });
        }
        Ok(out)
    }
}

/// Angles for an admissible pair `(P, Q)` by peeling the top layer off
/// repeatedly.
pub fn phases_from_pair(p: &[Complex64], q: &[Complex64]) -> Result<PhaseSequence> {
    let d = p.len().max(q.len()).max(1) - 1;
    let mut p: Vec<Complex64> = (0..=d)
        .map(|k| p.get(k).copied().unwrap_or_default())
        .collect();
    let mut q: Vec<Complex64> = (0..=d)
        .map(|k| q.get(k).copied().unwrap_or_default())
        .collect();
    let mut thetas = Vec::with_capacity(d + 1);
    let mut phis = Vec::with_capacity(d + 1);
    while p.len() > 1 {
        let top = p.len() - 1;
        let (pd, qd) = (p[top], q[top]);
        if pd.norm() < DEGENERATE && qd.norm() < DEGENERATE {
            p.pop();
            q.pop();
            continue;
        }
        let theta = qd.norm().atan2(pd.norm());
        let phi = pd.arg() - qd.arg();
        let (s, c) = theta.sin_cos();
        let e = Complex64::from_polar(1.0, -phi);
        let top_row: Vec<Complex64> = p.iter().zip(&q).map(|(a, b)| e * c * a + b * s).collect();
        let bottom: Vec<Complex64> = p.iter().zip(&q).map(|(a, b)| e * s * a - b * c).collect();
        p = top_row[1..].to_vec();
        q = bottom[..top].to_vec();
        thetas.push(theta);
        phis.push(phi);
    }
    let (p0, q0) = (p[0], q[0]);
    let lambda = q0.arg();
    thetas.push(q0.norm().atan2(p0.norm()));
    phis.push(p0.arg() - lambda);
    thetas.reverse();
    phis.reverse();
    let out = PhaseSequence {
        thetas,
        phis,
        lambda,
    };
    out.validate()?;
    Ok(out)
}

/// Angles whose GQSP circuit has `⟨0|·|0⟩` block `P(U)`.
pub fn gqsp_phases(p: &[Complex64]) -> Result<PhaseSequence> {
    let q = complementary_polynomial(p)?;
    phases_from_pair(p, &q)
}

/// GQSP ancilla on qubit 0, `u` shifted up by one. Gates of `u` that carry
/// pivots are the only ones to receive the open ancilla control.
pub fn build_gqsp_circuit(phases: &PhaseSequence, u: &Circuit) -> Result<Circuit> {
    let w = u.width() + 1;
    let map: Vec<usize> = (1..w).collect();
    let mut shifted = Circuit::with_layout(w, u.layout.mapped(&map))?;
    shifted.append_mapped(u, &map)?;
    gqsp_in_place(phases, &shifted, 0)
}

/// GQSP with ancilla `anc`, a qubit of `u` that no gate of `u` touches.
pub fn gqsp_in_place(phases: &PhaseSequence, u: &Circuit, anc: usize) -> Result<Circuit> {
    phases.validate()?;
    let mut layout = u.layout.clone();
    for qs in layout.roles.values_mut() {
        qs.retain(|&q| q != anc);
    }
    let mut out = Circuit::with_layout(u.width(), layout.with(Role::Gqsp, [anc]))?;
    let controlled = u.controlled_pivots(Control::off(anc))?;
    out.r(anc, phases.thetas[0], phases.phis[0], phases.lambda)?;
    for j in 1..phases.thetas.len() {
        out.extend(controlled.gates().iter().cloned())?;
        out.push(Gate::new(
            Op::R {
                theta: phases.thetas[j],
                phi: phases.phis[j],
                lambda: 0.0,
            },
            anc,
        ))?;
    }
    Ok(out)
}
