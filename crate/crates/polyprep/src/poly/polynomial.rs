use num_complex::Complex64;

use crate::error::{Error, Result};

const TRUNC: f64 = 1e-14;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Chebyshev coefficients `b` with `Σ a_k x^k = Σ b_k T_k(x)`.
pub fn monomial_to_chebyshev(a: &[Complex64]) -> Vec<Complex64> {
    let d = a.len();
    let mut b = vec![c(0.0); d];
    // Chebyshev expansion of x^k, updated through x·T_j = (T_{j+1} + T_{|j-1|}) / 2
    let mut pow = vec![c(0.0); d.max(1)];
    pow[0] = c(1.0);
    for (k, &ak) in a.iter().enumerate() {
        if k > 0 {
            let mut next = vec![c(0.0); d];
            for (j, &pj) in pow.iter().enumerate().take(k) {
                if j == 0 {
                    next[1] += pj;
                } else {
                    next[j + 1] += pj * 0.5;
                    next[j - 1] += pj * 0.5;
                }
            }
            pow = next;
        }
        for (bj, pj) in b.iter_mut().zip(&pow) {
            *bj += ak * pj;
        }
    }
    b
}

/// Monomial coefficients from Chebyshev ones via `T_{k+1} = 2x T_k − T_{k−1}`.
pub fn chebyshev_to_monomial(b: &[Complex64]) -> Vec<Complex64> {
    let d = b.len();
    let mut a = vec![c(0.0); d];
    let mut prev = vec![c(0.0); d.max(1)];
    prev[0] = c(1.0);
    let mut cur = vec![c(0.0); d.max(2)];
    if d > 1 {
        cur[1] = c(1.0);
    }
    for (k, &bk) in b.iter().enumerate() {
        let t = match k {
            0 => &prev,
            1 => &cur,
            _ => {
                let mut next = vec![c(0.0); d];
                for j in 0..d - 1 {
                    next[j + 1] += cur[j] * 2.0;
                }
                for j in 0..d {
                    next[j] -= prev[j];
                }
                prev = std::mem::replace(&mut cur, next);
                &cur
            }
        };
        for (aj, tj) in a.iter_mut().zip(t.iter()) {
            *aj += bk * tj;
        }
    }
    a
}

/// Signal-processing polynomial `Υ(z) = Σ b_k z^k` evaluated at `z`.
pub fn eval_signal(b: &[Complex64], z: Complex64) -> Complex64 {
    b.iter().rev().fold(c(0.0), |acc, &bk| acc * z + bk)
}

/// Largest `|f|` on `[lo, hi]`: a uniform scan followed by golden-section
/// refinement around the best samples.
pub fn max_abs_on(f: impl Fn(f64) -> f64, lo: f64, hi: f64, samples: usize) -> (f64, f64) {
    let step = (hi - lo) / samples as f64;
    let vals: Vec<(f64, f64)> = (0..=samples)
        .map(|i| {
            let x = (lo + step * i as f64).min(hi);
            (x, f(x))
        })
        .collect();
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&i, &j| vals[j].1.total_cmp(&vals[i].1));
    let mut best = vals[order[0]];
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    for &i in order.iter().take(8) {
        let (mut a, mut b) = ((vals[i].0 - step).max(lo), (vals[i].0 + step).min(hi));
        let mut x1 = b - invphi * (b - a);
        let mut x2 = a + invphi * (b - a);
        let (mut f1, mut f2) = (f(x1), f(x2));
        for _ in 0..80 {
            if f1 > f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - invphi * (b - a);
                f1 = f(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + invphi * (b - a);
                f2 = f(x2);
            }
        }
        for cand in [(x1, f1), (x2, f2)] {
            if cand.1 > best.1 {
                best = cand;
            }
        }
    }
    (best.1, best.0)
}

/// A polynomial stored by monomial coefficients `a_0..a_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Trailing coefficients below `1e−14` are dropped.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(|a| a.norm() < TRUNC) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(c(0.0));
        }
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&x| c(x)).collect())
    }

    pub fn from_chebyshev(b: &[Complex64]) -> Self {
        Polynomial::new(chebyshev_to_monomial(b))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| a.norm() < TRUNC)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|a| a.im.abs() < TRUNC)
    }

    pub fn chebyshev(&self) -> Vec<Complex64> {
        monomial_to_chebyshev(&self.coeffs)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(c(0.0), |acc, &a| acc * x + a)
    }

    pub fn eval_real(&self, x: f64) -> Complex64 {
        self.eval(c(x))
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::new(vec![c(0.0)]);
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &a)| a * k as f64)
                .collect(),
        )
    }

    pub fn scaled(&self, s: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * s).collect())
    }

    /// `q(y) = p(s·y)`.
    pub fn rescaled_argument(&self, s: f64) -> Polynomial {
        let mut f = 1.0;
        Polynomial::new(
            self.coeffs
                .iter()
                .map(|&a| {
                    let out = a * f;
                    f *= s;
                    out
                })
                .collect(),
        )
    }

    fn samples(&self) -> usize {
        4096.max(64 * self.degree())
    }

    /// `max_{[0,1]} |p|`.
    pub fn sup_norm_unit(&self) -> f64 {
        max_abs_on(|x| self.eval_real(x).norm(), 0.0, 1.0, self.samples()).0
    }

    /// `max_{[−1,1]} |p|`, maximizer included.
    pub fn sup_norm_symmetric(&self) -> (f64, f64) {
        let (m, t) = max_abs_on(
            |t| self.eval_real(t.cos()).norm(),
            0.0,
            std::f64::consts::PI,
            self.samples(),
        );
        (m, t.cos())
    }

    /// `√(∫_0^1 |p|²)` from the coefficients.
    pub fn two_norm(&self) -> f64 {
        let mut s = 0.0;
        for (j, aj) in self.coeffs.iter().enumerate() {
            for (k, ak) in self.coeffs.iter().enumerate() {
                s += (aj.conj() * ak).re / (j + k + 1) as f64;
            }
        }
        s.max(0.0).sqrt()
    }

    /// `√(Σ_{x ∈ B_n} |p(x)|²)` over the grid `x = i/2^n`.
    pub fn discrete_norm(&self, n: usize) -> f64 {
        let big_n = (1u64 << n) as f64;
        (0..1u64 << n)
            .map(|i| self.eval_real(i as f64 / big_n).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Rejects the zero polynomial.
    pub fn nonzero(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self)
    }
}

/// `ε · sup_{[0,1]} |p′|`, bounding `|p((1−ε)x) − p(x)|` on `[0,1]`.
pub fn rolle_error_bound(p: &Polynomial, epsilon: f64) -> f64 {
    let dp = p.derivative();
    if dp.is_zero() {
        return 0.0;
    }
    epsilon * dp.sup_norm_unit()
}

/// Parses `re`, `re±imj`, `imj` (or with `i`).
pub fn parse_coefficient(s: &str) -> Result<Complex64> {
    let t = s.trim();
    let bad = || Error::InvalidArgument(format!("cannot parse coefficient {s:?}"));
    let Some(body) = t.strip_suffix(['j', 'i']) else {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    let im = im.parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

/// Comma-separated coefficients, lowest order first.
pub fn parse_coefficients(s: &str) -> Result<Vec<Complex64>> {
    s.split(',').map(parse_coefficient).collect()
}
