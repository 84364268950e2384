use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::polynomial::{eval_signal, max_abs_on};
use crate::error::{Error, Result};

/// `β = max_{|z|=1} |Υ(z)| / max_{[−1,1]} |υ|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingFactorReport {
    pub beta: f64,
    pub circle_max: f64,
    pub interval_max: f64,
    /// Angle `t` of the circle maximizer `e^{it}`.
    pub circle_argmax: f64,
    pub interval_argmax: f64,
}

/// `b` holds the Chebyshev coefficients of `υ`.
pub fn scaling_factor(b: &[Complex64]) -> Result<ScalingFactorReport> {
    if b.iter().all(|c| c.norm() < 1e-14) {
        return Err(Error::ZeroPolynomial);
    }
    let m = 4096.max(64 * b.len());
    let (circle_max, circle_argmax) = max_abs_on(
        |t| eval_signal(b, Complex64::from_polar(1.0, t)).norm(),
        0.0,
        2.0 * PI,
        m,
    );
    let cheb = |t: f64| -> f64 {
        b.iter()
            .enumerate()
            .map(|(k, bk)| bk * (k as f64 * t).cos())
            .sum::<Complex64>()
            .norm()
    };
    let (interval_max, t) = max_abs_on(cheb, 0.0, PI, m);
    Ok(ScalingFactorReport {
        beta: circle_max / interval_max,
        circle_max,
        interval_max,
        circle_argmax,
        interval_argmax: t.cos(),
    })
}
