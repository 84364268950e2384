use nalgebra::DMatrix;
use num_complex::Complex64;

use super::polynomial::eval_signal;
use crate::error::{Error, Result};

/// Circle samples used for residual checks.
pub const CIRCLE_SAMPLES: usize = 8192;
pub const COMPLETION_TOL: f64 = 1e-9;

fn z0() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn circle(m: usize, k: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64)
}

/// `max_k | |P|² + |Q|² − 1 |` over `m` equispaced circle points.
pub fn completion_residual(p: &[Complex64], q: &[Complex64], m: usize) -> f64 {
    (0..m)
        .map(|k| {
            let z = circle(m, k);
            (eval_signal(p, z).norm_sqr() + eval_signal(q, z).norm_sqr() - 1.0).abs()
        })
        .fold(0.0, f64::max)
}

/// Roots of `Σ c_k z^k` (leading coefficient nonzero) from the companion
/// matrix, polished by Newton steps. `None` when the QR iteration does not
/// converge, which happens for clustered roots.
pub fn poly_roots(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return Some(Vec::new());
    }
    let lead = coeffs[d];
    let mut comp = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        comp[(i, d - 1)] = -coeffs[i] / lead;
    }
    let eig = nalgebra::Schur::try_new(comp, f64::EPSILON, 200 * d)?.eigenvalues()?;
    let deriv: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    let roots = eig
        .iter()
        .map(|&r0| {
            let mut r = r0;
            for _ in 0..8 {
                let f = eval_signal(coeffs, r);
                let df = eval_signal(&deriv, r);
                if df.norm() == 0.0 {
                    break;
                }
                let step = f / df;
                let next = r - step;
                if eval_signal(coeffs, next).norm() >= f.norm() {
                    break;
                }
                r = next;
            }
            r
        })
        .collect();
    Some(roots)
}

/// A polynomial `Q` of degree ≤ deg P with `|P(z)|² + |Q(z)|² = 1` on the
/// unit circle, built from the inside-disk roots of `z^d − P(z)·P^R(z)`.
pub fn complementary_polynomial(p: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = p.len().saturating_sub(1);
    if p.is_empty() {
        return Err(Error::InvalidArgument("empty polynomial".into()));
    }
    // F(z) = z^d − P(z)·P^R(z), P^R(z) = z^d·conj(P(1/conj z))
    let mut f = vec![z0(); 2 * d + 1];
    f[d] += 1.0;
    for (j, pj) in p.iter().enumerate() {
        for (k, pk) in p.iter().enumerate() {
            f[j + d - k] -= pj * pk.conj();
        }
    }
    let scale = f.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let tol = 1e-14;
    if scale < 1e-12 {
        return Ok(vec![z0(); d + 1]);
    }
    let lo = f
        .iter()
        .position(|c| c.norm() > tol * scale.max(1.0))
        .unwrap_or(0);
    let hi = f
        .iter()
        .rposition(|c| c.norm() > tol * scale.max(1.0))
        .unwrap_or(0);
    let g = &f[lo..=hi];
    let mut roots = poly_roots(g).ok_or(Error::CompletionResidual(f64::INFINITY))?;
    roots.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    let keep = (hi - lo) / 2;
    let inside = &roots[..keep.min(roots.len())];

    let mut q = vec![Complex64::new(1.0, 0.0)];
    for &r in inside {
        let mut next = vec![z0(); q.len() + 1];
        for (i, &qi) in q.iter().enumerate() {
            next[i + 1] += qi;
            next[i] -= qi * r;
        }
        q = next;
    }
    // |c|² by least squares against 1 − |P|² on the circle
    let m = 1024.max(8 * (d + 1));
    let (mut num, mut den) = (0.0, 0.0);
    for k in 0..m {
        let z = circle(m, k);
        let h = 1.0 - eval_signal(p, z).norm_sqr();
        let gq = eval_signal(&q, z).norm_sqr();
        num += gq * h;
        den += gq * gq;
    }
    let c = (num / den).max(0.0).sqrt();
    let mut out = vec![z0(); d + 1];
    for (i, qi) in q.iter().enumerate() {
        out[i] = qi * c;
    }
    let res = completion_residual(p, &out, CIRCLE_SAMPLES);
    if res > COMPLETION_TOL {
        return Err(Error::CompletionResidual(res));
    }
    Ok(out)
}
