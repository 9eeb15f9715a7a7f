use num_traits::{FromPrimitive, Num};
use serde::{Deserialize, Serialize};

use super::{ln_gamma, rgamma, Result, SpecFunError};
use crate::rational::{q, Q};

/// Degree and Laguerre parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolynomialParams {
    pub degree: usize,
    pub alpha: f64,
}

impl PolynomialParams {
    pub fn new(degree: usize, alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(SpecFunError::Domain(format!("Laguerre parameter must exceed -1, got {alpha}")));
        }
        Ok(Self { degree, alpha })
    }

    pub fn laguerre(&self, x: f64) -> f64 {
        laguerre(self.degree, &self.alpha, &x)
    }

    pub fn norm_sq(&self) -> f64 {
        laguerre_norm_sq(self.degree, self.alpha)
    }
}

fn lift<T: FromPrimitive>(n: usize) -> T {
    T::from_usize(n).expect("small integer is representable")
}

/// `L_k^α(x)` by the three-term recurrence; exact when `T` is a rational type.
pub fn laguerre<T>(k: usize, alpha: &T, x: &T) -> T
where
    T: Clone + Num + FromPrimitive,
{
    let one = T::one();
    if k == 0 {
        return one;
    }
    let mut prev = one.clone();
    let mut cur = one.clone() + alpha.clone() - x.clone();
    for j in 1..k {
        let two_j1: T = lift(2 * j + 1);
        let jt: T = lift(j);
        let next = ((two_j1 + alpha.clone() - x.clone()) * cur.clone() - (jt + alpha.clone()) * prev) / lift(j + 1);
        prev = cur;
        cur = next;
    }
    cur
}

/// Physicists' Hermite polynomial `H_n(x)`.
pub fn hermite<T>(n: usize, x: &T) -> T
where
    T: Clone + Num + FromPrimitive,
{
    let two: T = lift(2);
    if n == 0 {
        return T::one();
    }
    let mut prev = T::one();
    let mut cur = two.clone() * x.clone();
    for j in 1..n {
        let next = two.clone() * x.clone() * cur.clone() - two.clone() * lift::<T>(j) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficients of `L_k^α` in the monomial basis, lowest degree first.
pub fn laguerre_coeffs(k: usize, alpha: &Q) -> Vec<Q> {
    // c_j = (-1)^j binom(k+α, k-j) / j!
    (0..=k)
        .map(|j| {
            let mut binom = q(1);
            for i in 1..=(k - j) {
                binom = binom * (q(j as i64 + i as i64) + alpha) / q(i as i64);
            }
            let mut fact = q(1);
            for i in 2..=j {
                fact *= q(i as i64);
            }
            let v = binom / fact;
            if j % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect()
}

/// Coefficients of `H_n`, lowest degree first.
pub fn hermite_coeffs(n: usize) -> Vec<Q> {
    let mut prev = vec![q(1)];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![q(0), q(2)];
    for j in 1..n {
        let mut next = vec![q(0); j + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * q(2);
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c * q(2 * j as i64);
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `Γ(k+α+1)/k!`, the squared norm of `L_k^α` against `x^α e^{-x} dx`.
pub fn laguerre_norm_sq(k: usize, alpha: f64) -> f64 {
    let l = ln_gamma(k as f64 + alpha + 1.0).expect("alpha > -1") - ln_gamma(k as f64 + 1.0).expect("positive");
    l.exp()
}

/// `L_k^α(u) e^{-u/2} / sqrt(Γ(k+α+1)/k!)` for `k < n`, via the orthonormal
/// recurrence (stable for large `k`).
pub fn laguerre_functions(n: usize, alpha: f64, u: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let p0 = (-0.5 * u).exp() * rgamma(alpha + 1.0).sqrt();
    out.push(p0);
    if n == 1 {
        return out;
    }
    let p1 = (1.0 + alpha - u) * p0 / (1.0 + alpha).sqrt();
    out.push(p1);
    for k in 1..(n - 1) {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - u) * out[k] - (kf * (kf + alpha)).sqrt() * out[k - 1])
            / ((kf + 1.0) * (kf + 1.0 + alpha)).sqrt();
        out.push(next);
    }
    out
}
