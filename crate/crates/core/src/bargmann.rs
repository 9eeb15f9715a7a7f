//! Segal–Bargmann transforms: the classical one on `ℝ^m` (`m ≤ 2`) and the
//! rank-one transform onto a Fock space weighted by `K̃_{λ-1}(|z|)`.
//!
//! Rank one. The orbit is `ℂ∖{0}` with measure `|z|^{2λ-2} K̃_{λ-1}(|z|) d²z`,
//! so the monomial norms are
//! `w_n = c_F·2π ∫₀^∞ ρ^{2n+2λ-1} K̃_{λ-1}(ρ) dρ = c_F·2π·4^{n+λ-1} n! Γ(n+λ)`.
//! Taylor coefficients of `ℬf` come from the moments `∫ x^{j} e^{-x} f dμ`
//! and the power series of `Ĩ_{λ-1}` and `e^{-z/2}`.

use serde::Serialize;
use thiserror::Error;

use crate::inversion::{InversionError, RankOneInversion, RankOneModel};
use crate::quadrature::{exp_sinh, gauss_laguerre, LaguerreRule};
use crate::specfun::{bessel_k_renorm, gamma, hermite, ln_gamma};

#[derive(Debug, Error)]
pub enum BargmannError {
    #[error("Fock weight diverges for lambda = {0}")]
    Divergent(f64),
    #[error("classical transform supports m = 1 or 2, got {0}")]
    Dimension(u32),
    #[error(transparent)]
    Inversion(#[from] InversionError),
}

pub type Result<T> = std::result::Result<T, BargmannError>;

#[derive(Debug, Clone, Serialize)]
pub struct FockSpaceModel {
    pub lambda: f64,
    pub c_f: f64,
}

impl FockSpaceModel {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(BargmannError::Divergent(lambda));
        }
        Ok(Self { lambda, c_f: 1.0 })
    }

    /// `ln w_n`.
    pub fn ln_weight(&self, n: usize) -> f64 {
        let l = self.lambda;
        self.c_f.ln()
            + (2.0 * std::f64::consts::PI).ln()
            + (n as f64 + l - 1.0) * 4f64.ln()
            + ln_gamma(n as f64 + 1.0).expect("positive")
            + ln_gamma(n as f64 + l).expect("positive")
    }

    pub fn weight(&self, n: usize) -> f64 {
        self.ln_weight(n).exp()
    }

    /// `w_n` by quadrature of the weight integral.
    pub fn weight_by_quadrature(&self, n: usize) -> f64 {
        let l = self.lambda;
        let p = 2.0 * n as f64 + 2.0 * l - 1.0;
        let integrand = |rho: f64| {
            if rho == 0.0 {
                return 0.0;
            }
            rho.powf(p) * bessel_k_renorm(l - 1.0, rho).expect("positive argument")
        };
        self.c_f * 2.0 * std::f64::consts::PI * exp_sinh(integrand, 1e-13)
    }
}

/// `Σ |a_n|² w_n`.
pub fn fock_norm(model: &FockSpaceModel, coeffs: &[num_complex::Complex64]) -> Result<f64> {
    if !(model.lambda > 0.0) {
        return Err(BargmannError::Divergent(model.lambda));
    }
    Ok(coeffs.iter().enumerate().map(|(n, a)| a.norm_sqr() * model.weight(n)).sum())
}

/// Taylor coefficients of `ℬf` with a tail diagnostic.
#[derive(Debug, Clone, Serialize)]
pub struct FockCoefficients {
    pub coeffs: Vec<f64>,
    /// Fraction of the Fock norm in the last three coefficients.
    pub tail_fraction: f64,
    pub truncation_warning: bool,
}

#[derive(Debug, Clone)]
pub struct BargmannOperator {
    pub model: RankOneModel,
    pub fock: FockSpaceModel,
    rule: LaguerreRule,
}

impl BargmannOperator {
    /// Takes `c_μ` from the calibrated inversion operator and fixes `c_F` by
    /// sending the ground state to a unit-preserving vacuum.
    pub fn calibrate(lambda: f64) -> Result<Self> {
        let inv = RankOneInversion::calibrate(lambda)?;
        Self::with_c_mu(lambda, inv.model.c_mu.expect("calibrated"))
    }

    pub fn with_c_mu(lambda: f64, c_mu: f64) -> Result<Self> {
        let mut model = RankOneModel::new(lambda)?;
        model.c_mu = Some(c_mu);
        let fock = FockSpaceModel::new(lambda)?;
        // weight e^{-2x}: nodes of the u^{λ-1}e^{-u} rule halved
        let rule = gauss_laguerre(80, lambda - 1.0).expect("valid order").scaled(2.0);
        let mut op = Self { model, fock, rule };
        let f0 = |x: f64| op.model.eigenfunction(0, x);
        let b = op.apply(&f0, 0);
        op.fock.c_f = op.l2_norm_sq(&f0) / (b.coeffs[0].powi(2) * op.fock.weight(0));
        Ok(op)
    }

    /// `‖f‖²` in `L²(c_μ x^{λ-1}dx)` for `f` decaying like `e^{-x}`.
    pub fn l2_norm_sq(&self, f: &dyn Fn(f64) -> f64) -> f64 {
        let c = self.model.c_mu.expect("set at construction");
        c * self.rule.nodes.iter().zip(&self.rule.weights).map(|(&x, &w)| w * f(x).powi(2)).sum::<f64>()
    }

    /// Coefficients `b_0..b_n` of `ℬf`.
    pub fn apply(&self, f: &dyn Fn(f64) -> f64, n: usize) -> FockCoefficients {
        let l = self.model.lambda;
        let c = self.model.c_mu.expect("set at construction");
        // m_j = c_μ ∫ x^{j+λ-1} e^{-x} f(x) dx, evaluated against e^{-2x}
        let vals: Vec<f64> = self.rule.nodes.iter().map(|&x| f(x) * (-x).exp()).collect();
        let g = gamma(l).expect("lambda > 0");
        let a: Vec<f64> = (0..=n)
            .map(|j| {
                let m: f64 = self.rule.nodes.iter().zip(&self.rule.weights).zip(&vals).map(|((&x, &w), &v)| w * x.powi(j as i32) * v).sum();
                // Γ(λ)·m_j/(j! Γ(j+λ))
                g * c * m * (-(ln_gamma(j as f64 + 1.0).unwrap() + ln_gamma(j as f64 + l).unwrap())).exp()
            })
            .collect();
        let coeffs: Vec<f64> = (0..=n)
            .map(|k| {
                (0..=k)
                    .map(|j| a[j] * (-0.5f64).powi((k - j) as i32) * (-ln_gamma((k - j) as f64 + 1.0).unwrap()).exp())
                    .sum()
            })
            .collect();
        let norms: Vec<f64> = coeffs.iter().enumerate().map(|(k, b)| b * b * self.fock.weight(k)).collect();
        let total: f64 = norms.iter().sum();
        let tail: f64 = norms.iter().rev().take(3).sum();
        let tail_fraction = if total > 0.0 { tail / total } else { 0.0 };
        FockCoefficients { coeffs, tail_fraction, truncation_warning: n >= 3 && tail_fraction > 1e-12 }
    }

    /// Scales `c_μ` while keeping `c_F`, breaking the calibration.
    pub fn perturb_c_mu(mut self, factor: f64) -> Self {
        self.model.c_mu = self.model.c_mu.map(|c| c * factor);
        self
    }

    pub fn fock_norm_sq(&self, coeffs: &[f64]) -> f64 {
        coeffs.iter().enumerate().map(|(k, b)| b * b * self.fock.weight(k)).sum()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BargmannReport {
    pub lambda: f64,
    pub c_mu: f64,
    #[serde(rename = "c_F")]
    pub c_f: f64,
    /// Per `k`: Fock-norm fraction of `ℬf_k` outside index `k`.
    pub leakage: Vec<f64>,
    /// Largest `|‖ℬf‖/‖f‖ - 1|` on the test suite.
    pub isometry_residual: f64,
}

/// Monomial-image and isometry checks on `f_0..f_kmax` and on fixed
/// combinations of them.
pub fn cayley_consistency(op: &BargmannOperator, kmax: usize) -> BargmannReport {
    let n = kmax + 12;
    let mut leakage = Vec::new();
    let mut iso: f64 = 0.0;
    for k in 0..=kmax {
        let f = |x: f64| op.model.eigenfunction(k, x);
        let b = op.apply(&f, n);
        let norms: Vec<f64> = b.coeffs.iter().enumerate().map(|(j, c)| c * c * op.fock.weight(j)).collect();
        let total: f64 = norms.iter().sum();
        leakage.push((total - norms[k]) / total);
        iso = iso.max(ratio_defect(total, op.l2_norm_sq(&f)));
    }
    // deterministic mixtures across the span
    for s in 0..10usize {
        let coef: Vec<f64> = (0..=kmax).map(|k| (((k * 7 + s * 13) % 11) as f64 - 5.0) / 5.0).collect();
        let f = |x: f64| coef.iter().enumerate().map(|(k, c)| c * op.model.eigenfunction(k, x)).sum::<f64>();
        let b = op.apply(&f, n);
        iso = iso.max(ratio_defect(op.fock_norm_sq(&b.coeffs), op.l2_norm_sq(&f)));
    }
    BargmannReport {
        lambda: op.model.lambda,
        c_mu: op.model.c_mu.unwrap_or(f64::NAN),
        c_f: op.fock.c_f,
        leakage,
        isometry_residual: iso,
    }
}

fn ratio_defect(fock: f64, l2: f64) -> f64 {
    ((fock / l2).sqrt() - 1.0).abs()
}

/// Classical transform with kernel `exp(-½⟨z,z⟩ + 2⟨z,x⟩ - ⟨x,x⟩)`.
#[derive(Debug, Clone, Serialize)]
pub struct ClassicalBargmann {
    pub m: u32,
    /// Taylor coefficients indexed by multi-index, row-major for `m = 2`.
    pub coeffs: Vec<f64>,
    pub degree: usize,
    /// `‖ℬf‖²_Fock / ‖f‖²`, the same for every `f`.
    pub norm_ratio: f64,
}

const CLASSICAL_HALF_WIDTH: f64 = 8.0;

fn classical_nodes() -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = crate::quadrature::gauss_legendre(16).expect("order 16");
    let panels = 40;
    let h = 2.0 * CLASSICAL_HALF_WIDTH / panels as f64;
    let mut x = Vec::new();
    let mut w = Vec::new();
    for p in 0..panels {
        let mid = -CLASSICAL_HALF_WIDTH + (p as f64 + 0.5) * h;
        for (xi, wi) in gx.iter().zip(&gw) {
            x.push(mid + 0.5 * h * xi);
            w.push(0.5 * h * wi);
        }
    }
    (x, w)
}

fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0).expect("positive")
}

/// `φ_n(x) = H_n(√2 x) e^{-x²} / (2^{n/2} n!)`, so that
/// `K_B(x,z) = Σ_n φ_n(x) z^n`.
fn classical_basis(n: usize, x: f64) -> f64 {
    hermite(n, &(std::f64::consts::SQRT_2 * x)) * (-x * x - 0.5 * n as f64 * 2f64.ln() - ln_factorial(n)).exp()
}

/// `h_n(x) = H_n(√2 x) e^{-x²}`, mapped to `z^n` by the classical kernel.
pub fn classical_eigenfunction(n: usize, x: f64) -> f64 {
    hermite(n, &(std::f64::consts::SQRT_2 * x)) * (-x * x).exp()
}

/// Fock norm of `z^α` for the weight `e^{-|z|²}`: `π^m α!`.
fn classical_weight(alpha: &[usize]) -> f64 {
    alpha.iter().map(|&a| std::f64::consts::PI * ln_factorial(a).exp()).product()
}

/// Taylor coefficients of the classical transform up to total degree
/// `degree` in each variable.
pub fn classical_bargmann(m: u32, f: &dyn Fn(&[f64]) -> f64, degree: usize) -> Result<ClassicalBargmann> {
    let (x, w) = classical_nodes();
    let basis: Vec<Vec<f64>> = (0..=degree).map(|n| x.iter().map(|&xi| classical_basis(n, xi)).collect()).collect();
    let (coeffs, l2) = match m {
        1 => {
            let fx: Vec<f64> = x.iter().map(|&xi| f(&[xi])).collect();
            let c = basis.iter().map(|b| b.iter().zip(&w).zip(&fx).map(|((b, w), f)| b * w * f).sum()).collect();
            let l2 = fx.iter().zip(&w).map(|(f, w)| w * f * f).sum::<f64>();
            (c, l2)
        }
        2 => {
            let n = x.len();
            let mut fx = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    fx[i * n + j] = f(&[x[i], x[j]]);
                }
            }
            // contract the second variable first
            let partial: Vec<Vec<f64>> = (0..=degree)
                .map(|q| (0..n).map(|i| (0..n).map(|j| basis[q][j] * w[j] * fx[i * n + j]).sum()).collect())
                .collect();
            let mut c = Vec::with_capacity((degree + 1) * (degree + 1));
            for p in 0..=degree {
                for row in partial.iter() {
                    c.push((0..n).map(|i| basis[p][i] * w[i] * row[i]).sum());
                }
            }
            let l2 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| w[i] * w[j] * fx[i * n + j].powi(2)).sum::<f64>();
            (c, l2)
        }
        other => return Err(BargmannError::Dimension(other)),
    };
    let fock: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(idx, c): (usize, &f64)| {
            let alpha: Vec<usize> = if m == 1 { vec![idx] } else { vec![idx / (degree + 1), idx % (degree + 1)] };
            c * c * classical_weight(&alpha)
        })
        .sum();
    Ok(ClassicalBargmann { m, coeffs, degree, norm_ratio: fock / l2 })
}

/// The global constant `‖ℬf‖²/‖f‖² = (π √(π/2))^m`.
pub fn classical_norm_constant(m: u32) -> f64 {
    let pi = std::f64::consts::PI;
    (pi * (0.5 * pi).sqrt()).powi(m as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_closed_form_vs_quadrature() {
        for &l in &[0.5, 1.0, 1.5] {
            let m = FockSpaceModel::new(l).unwrap();
            for n in 0..=10 {
                let a = m.weight(n);
                let b = m.weight_by_quadrature(n);
                assert!(((a - b) / a).abs() < 1e-8, "lambda={l} n={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn weight_ratios_increase() {
        let m = FockSpaceModel::new(0.5).unwrap();
        let r: Vec<f64> = (0..12).map(|n| m.weight(n + 1) / m.weight(n)).collect();
        assert!(r.windows(2).all(|p| p[1] > p[0]));
        assert!(FockSpaceModel::new(0.0).is_err());
    }

    #[test]
    fn single_term_norm() {
        let m = FockSpaceModel::new(1.0).unwrap();
        let c = [num_complex::Complex64::new(1.0, 0.0)];
        assert_eq!(fock_norm(&m, &c).unwrap(), m.weight(0));
    }

    #[test]
    fn classical_vacuum() {
        let b = classical_bargmann(1, &|x| (-x[0] * x[0]).exp(), 6).unwrap();
        assert!((b.coeffs[0] - (0.5 * std::f64::consts::PI).sqrt()).abs() < 1e-12);
        assert!(b.coeffs[1..].iter().all(|c| c.abs() < 1e-12));
        assert!((b.norm_ratio / classical_norm_constant(1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn miscalibration_is_flagged() {
        let op = BargmannOperator::calibrate(0.5).unwrap();
        assert!(cayley_consistency(&op, 3).isometry_residual < 1e-8);
        let bad = op.perturb_c_mu(1.1);
        assert!(cayley_consistency(&bad, 3).isometry_residual > 1e-2);
    }
}
