//! Metrics-only scaling sweep of the linear encoding.

use std::fmt::Write as _;

use serde::Serialize;

use crate::circuit::compute_metrics;
use crate::error::{Error, Result};
use crate::linear::{build_u_linear, compute_pn, compute_success_prob};

pub const CSV_HEADER: &str = "n,depth,size,ancillae,p_n,P_n";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SweepTarget {
    #[default]
    Depth,
    Size,
    SuccessProb,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub depth: usize,
    pub size: usize,
    pub ancillae: usize,
    pub p_n: f64,
    pub success: f64,
}

/// Least-squares fit `y ≈ α·log2(n) + β`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogFit {
    pub alpha: f64,
    pub beta: f64,
    pub r_squared: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    pub fit: LogFit,
}

impl SweepRow {
    fn value(&self, target: SweepTarget) -> f64 {
        match target {
            SweepTarget::Depth => self.depth as f64,
            SweepTarget::Size => self.size as f64,
            SweepTarget::SuccessProb => self.success,
        }
    }
}

impl Sweep {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            writeln!(
                s,
                "{},{},{},{},{:.12},{:.12}",
                r.n, r.depth, r.size, r.ancillae, r.p_n, r.success
            )
            .unwrap();
        }
        s
    }
}

pub fn fit_log2(points: &[(f64, f64)]) -> LogFit {
    let m = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.log2()).collect();
    let mx = xs.iter().sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(points)
        .map(|(x, p)| (x - mx) * (p.1 - my))
        .sum();
    let alpha = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let beta = my - alpha * mx;
    let ss_tot: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(points)
        .map(|(x, p)| (p.1 - alpha * x - beta).powi(2))
        .sum();
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else {
        1.0
    };
    LogFit {
        alpha,
        beta,
        r_squared,
    }
}

/// Builds `U_linear` for every `n`, records its metrics and the analytic
/// overlap and success probability, and fits the chosen column.
pub fn scaling_sweep(n_values: &[usize], target: SweepTarget) -> Result<Sweep> {
    if n_values.is_empty() || n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "n values must be non-empty and increasing".into(),
        ));
    }
    let mut rows = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let m = compute_metrics(&build_u_linear(n)?.circuit);
        rows.push(SweepRow {
            n,
            depth: m.depth,
            size: m.size,
            ancillae: m.ancilla_count,
            p_n: compute_pn(n),
            success: compute_success_prob(n),
        });
    }
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.value(target))).collect();
    Ok(Sweep {
        fit: fit_log2(&pts),
        rows,
    })
}

/// Powers of two from `min` to `max` inclusive.
pub fn doubling(min: usize, max: usize) -> Vec<usize> {
    std::iter::successors(Some(min.max(1)), |&n| n.checked_mul(2))
        .take_while(|&n| n <= max)
        .collect()
}
