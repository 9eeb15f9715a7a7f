//! The unitary inversion operator `F = c·e^{iπD_a}` per sector, in spectral
//! and kernel form, and the rank-one Jordan model with its `J̃`-Bessel kernel.
//!
//! Phase convention: `c` is fixed so that the `ℓ = 0` ground state is
//! invariant. Then `F g_k = (-1)^k e^{-iπ(ν-ν₀)/2} g_k` with `ν₀ = (m-2)/a`,
//! which for `a = 2` is the unitary Euclidean Fourier transform.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadrature::{gauss_legendre, integrate_interval, LaguerreRule};
use crate::rational::{q, q_to_f64};
use crate::specfun::{bessel_j, bessel_j_renorm, cos_pi, gamma, laguerre, sin_pi};
use crate::spectral::{self, analyze, synthesize, LaguerreExpansion, RadialSamples, SectorModel, SpectralError};

#[derive(Debug, Error)]
pub enum InversionError {
    #[error("measure normalisation c_mu has not been calibrated")]
    CalibrationMissing,
    #[error("invalid rank-one parameter lambda = {0}")]
    InvalidLambda(f64),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

pub type Result<T> = std::result::Result<T, InversionError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Spectral,
    Kernel,
}

#[derive(Debug, Clone, Serialize)]
pub struct Calibration {
    pub c_mu: f64,
    pub residual: f64,
}

/// `F` restricted to one sector.
#[derive(Debug, Clone, Serialize)]
pub struct InversionOperator {
    pub sector: SectorModel,
    /// The constant `c` in `F = c·e^{iπD_a}`.
    pub phase: Complex64,
    pub backend: Backend,
    pub calibration: Option<Calibration>,
}

fn unit(x: f64) -> Complex64 {
    // e^{iπx}, exact at half-integers
    Complex64::new(cos_pi(x), sin_pi(x))
}

fn ground_order(sector: &SectorModel) -> f64 {
    q_to_f64(&(q(sector.m() as i64 - 2) / sector.a()))
}

impl InversionOperator {
    pub fn new(sector: SectorModel, backend: Backend) -> Self {
        let phase = unit(0.5 * (ground_order(&sector) + 1.0));
        Self { sector, phase, backend, calibration: None }
    }

    /// `phase·e^{iπλ_k}`.
    pub fn multiplier(&self, k: usize) -> Complex64 {
        let nu0 = ground_order(&self.sector);
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        unit(-0.5 * (self.sector.nu() - nu0)) * sign
    }

    /// The scalar `F²` on this sector.
    pub fn square(&self) -> Complex64 {
        unit(-(self.sector.nu() - ground_order(&self.sector)))
    }

    /// `F` on a sector function, by the selected backend; grid output.
    pub fn apply(&self, f: &dyn Fn(f64) -> Complex64, grid: &[f64], n: usize, rule: &LaguerreRule) -> Result<RadialSamples> {
        match self.backend {
            Backend::Spectral => {
                let e = analyze(f, &self.sector, n)?;
                Ok(synthesize(&invert_spectral(self, &e), grid))
            }
            Backend::Kernel => Ok(invert_kernel(self, f, grid, rule)),
        }
    }

    /// `F(r, s)`.
    pub fn kernel_value(&self, r: f64, s: f64) -> Complex64 {
        self.phase * e_i_pi_kernel_value(&self.sector, r, s)
    }
}

/// `c_k ↦ phase·e^{iπλ_k} c_k`.
pub fn invert_spectral(op: &InversionOperator, f: &LaguerreExpansion) -> LaguerreExpansion {
    let coeffs = f.coeffs.iter().enumerate().map(|(k, c)| c * op.multiplier(k)).collect();
    LaguerreExpansion::new(f.sector.clone(), coeffs)
}

/// Kernel of `e^{iπD_a}`: `(rs)^ℓ a^{-ν} e^{-iπ(ν+1)/2} J̃_ν(√(uv))`.
pub fn e_i_pi_kernel_value(sector: &SectorModel, r: f64, s: f64) -> Complex64 {
    let nu = sector.nu();
    let a = sector.a_f64();
    let arg = (sector.u_of_r(r) * sector.u_of_r(s)).sqrt();
    let j = bessel_j_renorm(nu, arg).expect("nonnegative argument");
    unit(-0.5 * (nu + 1.0)) * (a.powf(-nu) * j * (r * s).powi(sector.ell() as i32))
}

/// Kernel backend: Gauss–Laguerre in `v` against `v^ν e^{-v/2}`.
pub fn invert_kernel(op: &InversionOperator, f: &dyn Fn(f64) -> Complex64, grid: &[f64], rule: &LaguerreRule) -> RadialSamples {
    let s = &op.sector;
    let scaled = rule.scaled(0.5);
    let nu = s.nu();
    let ell = s.ell() as i32;
    let pre = op.phase * unit(-0.5 * (nu + 1.0)) * (0.5 * (0.5 * s.a_f64()).powf(nu) * s.a_f64().powf(-nu));
    let values = grid
        .iter()
        .map(|&r| {
            let u = s.u_of_r(r);
            let sum: Complex64 = scaled
                .nodes
                .iter()
                .zip(&scaled.weights)
                .map(|(&v, &w)| {
                    let rs = s.r_of_u(v);
                    f(rs) / rs.powi(ell) * (w * bessel_j_renorm(nu, (u * v).sqrt()).expect("nonnegative"))
                })
                .sum();
            pre * sum * r.powi(ell)
        })
        .collect();
    RadialSamples { r: grid.to_vec(), values }
}

/// Kernel at `t = iπ` from the semigroup limit `Re t ↓ 0`.
pub fn boundary_limit_at_i_pi(sector: &SectorModel, r: f64, s: f64) -> Result<Complex64> {
    Ok(spectral::boundary_kernel_value(sector, PI, r, s)?)
}

/// Rank-one model on `(0, ∞)` with measure `c_μ x^{λ-1} dx`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RankOneModel {
    pub lambda: f64,
    pub c_mu: Option<f64>,
    /// Spread of the calibrated value between `f₀` and `f₁`.
    pub calibration_residual: Option<f64>,
}

/// Truncation of `(0, ∞)` for rank-one quadrature; `x^{2k} e^{-2X}` is
/// negligible for `k < 20`.
const RANK1_CUTOFF: f64 = 120.0;

/// Composite Gauss–Legendre in `s = √x` for `∫₀^X x^{λ-1} φ(x) dx`.
#[derive(Debug, Clone)]
pub struct RankOneGrid {
    pub x: Vec<f64>,
    pub w: Vec<f64>,
}

impl RankOneGrid {
    pub fn new(lambda: f64, panels: usize) -> Self {
        let (gx, gw) = gauss_legendre(16).expect("order 16");
        let top = RANK1_CUTOFF.sqrt();
        let h = top / panels as f64;
        let mut x = Vec::with_capacity(panels * 16);
        let mut w = Vec::with_capacity(panels * 16);
        for p in 0..panels {
            let mid = (p as f64 + 0.5) * h;
            for (xi, wi) in gx.iter().zip(&gw) {
                let s = mid + 0.5 * h * xi;
                x.push(s * s);
                // x^{λ-1} dx = 2 s^{2λ-1} ds
                w.push(0.5 * h * wi * 2.0 * s.powf(2.0 * lambda - 1.0));
            }
        }
        Self { x, w }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

fn rank1_kernel(lambda: f64, x: f64, y: f64) -> f64 {
    bessel_j_renorm(lambda - 1.0, 2.0 * (x * y).sqrt()).expect("nonnegative argument")
}

impl RankOneModel {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(InversionError::InvalidLambda(lambda));
        }
        Ok(Self { lambda, c_mu: None, calibration_residual: None })
    }

    /// `2^λ/Γ(λ)`, the value unitarity forces.
    pub fn closed_form_c_mu(&self) -> f64 {
        2f64.powf(self.lambda) / gamma(self.lambda).expect("lambda > 0")
    }

    pub fn grid(&self) -> RankOneGrid {
        RankOneGrid::new(self.lambda, 48)
    }

    /// `f_k(x) = L_k^{λ-1}(2x) e^{-x}`.
    pub fn eigenfunction(&self, k: usize, x: f64) -> f64 {
        laguerre(k, &(self.lambda - 1.0), &(2.0 * x)) * (-x).exp()
    }

    /// `‖f‖²` in `L²(c_μ x^{λ-1}dx)` from values on `grid`.
    pub fn norm_sq(&self, values: &[Complex64], grid: &RankOneGrid) -> Result<f64> {
        let c = self.c_mu.ok_or(InversionError::CalibrationMissing)?;
        Ok(c * values.iter().zip(&grid.w).map(|(v, &w)| w * v.norm_sqr()).sum::<f64>())
    }

    /// The equivalent sector `(a, m, ℓ) = (2, 2λ, 0)` with `u = 2x`.
    pub fn sector(&self) -> Result<SectorModel> {
        let m = 2.0 * self.lambda;
        if m.fract() != 0.0 {
            return Err(InversionError::InvalidLambda(self.lambda));
        }
        Ok(SectorModel::new(q(2), m as u32, 0)?)
    }
}

/// Rank-one inversion with the kernel tabulated on the quadrature grid.
///
/// Construction calibrates `c_μ` by unitarity on `f₀` and `f₁`.
#[derive(Debug, Clone)]
pub struct RankOneInversion {
    pub model: RankOneModel,
    pub grid: RankOneGrid,
    /// `J̃_{λ-1}(2√(x_i x_j))`, symmetric.
    table: Vec<f64>,
}

impl RankOneInversion {
    pub fn calibrate(lambda: f64) -> Result<Self> {
        let mut model = RankOneModel::new(lambda)?;
        let grid = model.grid();
        let n = grid.len();
        let mut table = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = rank1_kernel(lambda, grid.x[i], grid.x[j]);
                table[i * n + j] = v;
                table[j * n + i] = v;
            }
        }
        model.c_mu = Some(1.0);
        let mut op = Self { model, grid, table };
        let ratio = |op: &Self, k: usize| {
            let f: Vec<Complex64> = op.grid.x.iter().map(|&x| Complex64::new(op.model.eigenfunction(k, x), 0.0)).collect();
            let image = op.apply_on_grid(&f);
            let n_in = op.model.norm_sq(&f, &op.grid).expect("set");
            let n_out = op.model.norm_sq(&image, &op.grid).expect("set");
            // F scales as c_μ and the norm² carries one more c_μ
            (n_in / n_out).sqrt()
        };
        let c0 = ratio(&op, 0);
        let c1 = ratio(&op, 1);
        op.model.c_mu = Some(0.5 * (c0 + c1));
        op.model.calibration_residual = Some((c0 - c1).abs() / c0);
        Ok(op)
    }

    /// Replaces `c_μ`, e.g. for negative controls.
    pub fn with_c_mu(mut self, c: f64) -> Self {
        self.model.c_mu = Some(c);
        self
    }

    fn prefactor(&self) -> f64 {
        let l = self.model.lambda;
        2f64.powf(-l) * gamma(l).expect("lambda > 0") * self.model.c_mu.expect("calibrated")
    }

    /// `F` applied to values on the grid, returned on the grid.
    pub fn apply_on_grid(&self, values: &[Complex64]) -> Vec<Complex64> {
        let n = self.grid.len();
        let wv: Vec<Complex64> = values.iter().zip(&self.grid.w).map(|(v, &w)| v * w).collect();
        let pre = self.prefactor();
        (0..n)
            .map(|i| {
                let row = &self.table[i * n..(i + 1) * n];
                row.iter().zip(&wv).map(|(k, v)| v * *k).sum::<Complex64>() * pre
            })
            .collect()
    }

    /// `F` applied to values on the grid, evaluated at arbitrary `ys`.
    pub fn apply_at(&self, values: &[Complex64], ys: &[f64]) -> Vec<Complex64> {
        let pre = self.prefactor();
        let l = self.model.lambda;
        ys.iter()
            .map(|&y| {
                self.grid
                    .x
                    .iter()
                    .zip(&self.grid.w)
                    .zip(values)
                    .map(|((&x, &w), v)| v * (w * rank1_kernel(l, x, y)))
                    .sum::<Complex64>()
                    * pre
            })
            .collect()
    }

    pub fn sample(&self, f: &dyn Fn(f64) -> f64) -> Vec<Complex64> {
        self.grid.x.iter().map(|&x| Complex64::new(f(x), 0.0)).collect()
    }

    pub fn norm_sq(&self, values: &[Complex64]) -> f64 {
        self.model.norm_sq(values, &self.grid).expect("calibrated")
    }
}

/// `(Ff)(y) = 2^{-λ}Γ(λ) ∫ J̃_{λ-1}(2√(xy)) f(x) c_μ x^{λ-1} dx` at each `y`.
pub fn invert_kernel_rank1(model: &RankOneModel, f: &dyn Fn(f64) -> f64, ys: &[f64]) -> Result<Vec<Complex64>> {
    let c = model.c_mu.ok_or(InversionError::CalibrationMissing)?;
    let grid = model.grid();
    let pre = 2f64.powf(-model.lambda) * gamma(model.lambda).expect("lambda > 0") * c;
    let fx: Vec<f64> = grid.x.iter().map(|&x| f(x)).collect();
    Ok(ys
        .iter()
        .map(|&y| {
            let s: f64 =
                grid.x.iter().zip(&grid.w).zip(&fx).map(|((&x, &w), &v)| w * v * rank1_kernel(model.lambda, x, y)).sum();
            Complex64::new(pre * s, 0.0)
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct FoldingReport {
    pub m: u32,
    pub ell: u32,
    pub sup_error: f64,
    pub grid: Vec<f64>,
}

/// Compares the `a = 2` spectral inversion with the Fourier–Hankel transform
/// `(-i)^ℓ ρ^{1-m/2} ∫ J_{ℓ+m/2-1}(rρ) f(r) r^{m/2} dr` by direct quadrature.
pub fn folding_check(m: u32, ell: u32, f: &dyn Fn(f64) -> f64, grid: &[f64]) -> Result<FoldingReport> {
    let sector = SectorModel::new(q(2), m, ell)?;
    let op = InversionOperator::new(sector.clone(), Backend::Spectral);
    let fc = |r: f64| Complex64::new(f(r), 0.0);
    let e = analyze(fc, &sector, spectral::DEFAULT_TRUNCATION)?;
    let ours = synthesize(&invert_spectral(&op, &e), grid);
    let order = ell as f64 + 0.5 * m as f64 - 1.0;
    let phase = unit(-0.5 * ell as f64);
    let mut sup: f64 = 0.0;
    for (rho, got) in grid.iter().zip(&ours.values) {
        let integral = integrate_interval(
            |r| if r == 0.0 { 0.0 } else { bessel_j(order, r * rho).expect("nonnegative") * f(r) * r.powf(0.5 * m as f64) },
            0.0,
            14.0,
            160,
            16,
        );
        let want = phase * (rho.powf(1.0 - 0.5 * m as f64) * integral);
        sup = sup.max((got - want).norm());
    }
    Ok(FoldingReport { m, ell, sup_error: sup, grid: grid.to_vec() })
}

#[derive(Debug, Clone, Serialize)]
pub struct IntertwiningReport {
    pub m: u32,
    pub ell: u32,
    pub k: usize,
    pub sup_error: f64,
}

/// `F(r² f) = -Δ_ℓ(F f)` at `a = 2` on `f = g_k`, with `Δ_ℓ` by fourth-order
/// differences.
pub fn intertwining_check(m: u32, ell: u32, k: usize, grid: &[f64]) -> Result<IntertwiningReport> {
    let sector = SectorModel::new(q(2), m, ell)?;
    let op = InversionOperator::new(sector.clone(), Backend::Spectral);
    let n = k + 4;
    let gk = |r: f64| sector.eigenfunctions(n, r)[k];
    let rhs_input = |r: f64| Complex64::new(r * r * gk(r), 0.0);
    let lhs = synthesize(&invert_spectral(&op, &analyze(rhs_input, &sector, n)?), grid);
    let mult = op.multiplier(k);
    let h = 1e-3;
    let (mf, lf) = (m as f64, ell as f64);
    let mut sup: f64 = 0.0;
    for (&r, l) in grid.iter().zip(&lhs.values) {
        let (fm2, fm1, f0, fp1, fp2) = (gk(r - 2.0 * h), gk(r - h), gk(r), gk(r + h), gk(r + 2.0 * h));
        let d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
        let d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
        let lap = d2 + (mf - 1.0) / r * d1 - lf * (lf + mf - 2.0) / (r * r) * f0;
        sup = sup.max((l - mult * (-lap)).norm());
    }
    Ok(IntertwiningReport { m, ell, k, sup_error: sup })
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegrabilityReport {
    pub radii: Vec<f64>,
    pub integrals: Vec<f64>,
    /// Least-squares slope of `log ∫∫|K|` against `log R`.
    pub growth_exponent: f64,
    pub sup_abs_kernel: f64,
    /// Evidence only; `None` when the slope is not clearly near 2.
    pub bounded_like: Option<bool>,
}

fn probe_boxes(kernel: &dyn Fn(f64, f64) -> f64, radii: &[f64]) -> IntegrabilityReport {
    let (gx, gw) = gauss_legendre(8).expect("order 8");
    let mut integrals = Vec::new();
    let mut sup: f64 = 0.0;
    for &rad in radii {
        let panels = (4.0 * rad).ceil() as usize;
        let h = rad / panels as f64;
        let pts: Vec<(f64, f64)> = (0..panels)
            .flat_map(|p| {
                let mid = (p as f64 + 0.5) * h;
                gx.iter().zip(&gw).map(move |(x, w)| (mid + 0.5 * h * x, 0.5 * h * w)).collect::<Vec<_>>()
            })
            .collect();
        let mut total = 0.0;
        for &(r, wr) in &pts {
            for &(s, ws) in &pts {
                let v = kernel(r, s).abs();
                sup = sup.max(v);
                total += wr * ws * v;
            }
        }
        integrals.push(total);
    }
    let lx: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let ly: Vec<f64> = integrals.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let bounded_like = if (slope - 2.0).abs() < 0.25 {
        Some(true)
    } else if slope > 2.5 {
        Some(false)
    } else {
        None
    };
    IntegrabilityReport { radii: radii.to_vec(), integrals, growth_exponent: slope, sup_abs_kernel: sup, bounded_like }
}

/// `∫∫_{[0,R]²} |F(r, s)| dr ds` on expanding boxes.
pub fn kernel_local_integrability_probe(sector: &SectorModel, radii: &[f64]) -> IntegrabilityReport {
    let op = InversionOperator::new(sector.clone(), Backend::Kernel);
    probe_boxes(&|r, s| op.kernel_value(r, s).norm(), radii)
}

/// Same probe for the rank-one kernel `2^{-λ}Γ(λ) J̃_{λ-1}(2√(xy))`.
pub fn rank1_integrability_probe(model: &RankOneModel, radii: &[f64]) -> IntegrabilityReport {
    let l = model.lambda;
    let pre = 2f64.powf(-l) * gamma(l).expect("lambda > 0");
    probe_boxes(&|x, y| pre * rank1_kernel(l, x, y), radii)
}
