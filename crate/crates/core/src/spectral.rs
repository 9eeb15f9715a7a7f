//! Floating-point spectral engine for one sector `(a, m, ℓ)` of
//! `L²(ℝ^m, |x|^{a-2}dx)`.
//!
//! In the variable `u = (2/a) r^a` the sector eigenfunctions of
//! `D_a = (1/(2a))(r^{2-a}Δ_ℓ - r^a)` are `g_k = r^ℓ L_k^ν(u) e^{-u/2}` with
//! `ν = (2ℓ+m-2)/a`, eigenvalue `-(k + (ν+1)/2)` and squared norm
//! `h_k = ½ (a/2)^ν Γ(k+ν+1)/k!` against `r^{m+a-3} dr`. The identity
//! `r^{2ℓ} r^{m+a-3} dr = ½ (a/2)^ν u^ν du` turns every sector integral into a
//! Gauss–Laguerre sum.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cones::harmonic_dim;
use crate::quadrature::{LaguerreRule, NodeCache, NodeKey, QuadratureError};
use crate::rational::{fmt_q, q, q_to_f64, serde_q, Q};
use crate::specfun::{bessel_i_renorm_sq_shifted, laguerre_functions, ln_gamma};

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("invalid sector: {0}")]
    InvalidSector(String),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("input is not square-integrable on the quadrature grid (tail fraction {0:.3e})")]
    NotSquareIntegrable(f64),
    #[error("singular parameter: {0}")]
    SingularParameter(String),
    #[error("not Hilbert-Schmidt for Re t = {0}")]
    NotHilbertSchmidt(f64),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, SpectralError>;

/// Default number of Gauss–Laguerre nodes.
pub const DEFAULT_NODES: usize = 200;
/// Default truncation of eigen-expansions.
pub const DEFAULT_TRUNCATION: usize = 60;

/// One `SL(2)~ × O(m)` sector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorModel {
    #[serde(with = "serde_q")]
    a: Q,
    m: u32,
    ell: u32,
}

impl SectorModel {
    /// Sector with an `L²` eigenbasis: requires `a > 0`, `m ≥ 1`, `ν > -1`.
    pub fn new(a: Q, m: u32, ell: u32) -> Result<Self> {
        let s = Self::formal(a, m, ell)?;
        if s.nu_exact() <= q(-1) {
            return Err(SpectralError::InvalidSector(format!(
                "order nu = {} must exceed -1 (m + a > 2 when l = 0)",
                fmt_q(&s.nu_exact())
            )));
        }
        Ok(s)
    }

    /// Sector without the integrability condition, for exact symbolic work.
    pub fn formal(a: Q, m: u32, ell: u32) -> Result<Self> {
        if !a.is_positive() {
            return Err(SpectralError::InvalidSector(format!("a must be positive, got {}", fmt_q(&a))));
        }
        if m == 0 {
            return Err(SpectralError::InvalidSector("m must be >= 1".into()));
        }
        Ok(Self { a, m, ell })
    }

    pub fn from_f64(a: f64, m: u32, ell: u32) -> Result<Self> {
        let a = Q::from_float(a).ok_or_else(|| SpectralError::InvalidSector(format!("a = {a} is not finite")))?;
        Self::new(a, m, ell)
    }

    pub fn a(&self) -> &Q {
        &self.a
    }

    pub fn a_f64(&self) -> f64 {
        q_to_f64(&self.a)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// `ν = (2ℓ+m-2)/a`.
    pub fn nu_exact(&self) -> Q {
        q(2 * self.ell as i64 + self.m as i64 - 2) / &self.a
    }

    pub fn nu(&self) -> f64 {
        q_to_f64(&self.nu_exact())
    }

    /// Exponent of the radial measure `r^{m+a-3} dr`.
    pub fn measure_exponent(&self) -> Q {
        q(self.m as i64 - 3) + &self.a
    }

    /// `ν + 1`, the minimal K-type of the lowest-weight module.
    pub fn lowest_weight(&self) -> Q {
        self.nu_exact() + q(1)
    }

    /// `-(k + (ν+1)/2)`.
    pub fn eigenvalue(&self, k: usize) -> Q {
        -(q(k as i64) + (self.nu_exact() + q(1)) / q(2))
    }

    pub fn eigenvalue_f64(&self, k: usize) -> f64 {
        -(k as f64 + 0.5 * (self.nu() + 1.0))
    }

    /// `ln(½ (a/2)^ν)`, the common prefactor of sector integrals.
    fn ln_measure_prefactor(&self) -> f64 {
        (0.5f64).ln() + self.nu() * (0.5 * self.a_f64()).ln()
    }

    /// `h_k = ‖g_k‖²`.
    pub fn norm_sq(&self, k: usize) -> f64 {
        let nu = self.nu();
        (self.ln_measure_prefactor() + ln_gamma(k as f64 + nu + 1.0).expect("nu > -1") - ln_gamma(k as f64 + 1.0).expect("k >= 0"))
            .exp()
    }

    pub fn u_of_r(&self, r: f64) -> f64 {
        let a = self.a_f64();
        2.0 / a * r.powf(a)
    }

    pub fn r_of_u(&self, u: f64) -> f64 {
        let a = self.a_f64();
        (0.5 * a * u).powf(1.0 / a)
    }

    pub fn node_key(&self, n: usize) -> NodeKey {
        NodeKey { a: self.a_f64(), m: self.m, ell: self.ell, n: n as u32 }
    }

    /// Gauss–Laguerre rule for this sector from the global cache.
    pub fn rule(&self, n: usize) -> Result<Arc<LaguerreRule>> {
        self.rule_from(NodeCache::global(), n)
    }

    pub fn rule_from(&self, cache: &NodeCache, n: usize) -> Result<Arc<LaguerreRule>> {
        if self.nu() <= -1.0 {
            return Err(SpectralError::InvalidSector("no L2 eigenbasis for nu <= -1".into()));
        }
        Ok(cache.table(self.node_key(n), self.nu())?)
    }

    /// `g_k(r)` for `k < n`.
    pub fn eigenfunctions(&self, n: usize, r: f64) -> Vec<f64> {
        let nu = self.nu();
        let u = self.u_of_r(r);
        let rl = r.powi(self.ell as i32);
        laguerre_functions(n, nu, u)
            .into_iter()
            .enumerate()
            .map(|(k, p)| p * rl * laguerre_sqrt_norm(k, nu))
            .collect()
    }
}

fn laguerre_sqrt_norm(k: usize, nu: f64) -> f64 {
    (0.5 * (ln_gamma(k as f64 + nu + 1.0).expect("nu > -1") - ln_gamma(k as f64 + 1.0).expect("k >= 0"))).exp()
}

/// Eigenvalues of `D_a` on one sector, exact.
pub fn spectrum(sector: &SectorModel, count: usize) -> Vec<Q> {
    (0..count).map(|k| sector.eigenvalue(k)).collect()
}

/// First `count` distinct eigenvalues of `D_a` on `L²(ℝ^m, |x|^{a-2}dx)`,
/// merged over all sectors `ℓ` (largest first).
pub fn merged_spectrum(a: &Q, m: u32, count: usize) -> Result<Vec<Q>> {
    SectorModel::formal(a.clone(), m, 0)?;
    // eigenvalue decreases by 1/a per unit of ℓ, so ℓ ≤ a·count suffices
    let lmax = (q_to_f64(a) * count as f64).ceil() as u32 + 1;
    let lmax = if m == 1 { lmax.min(1) } else { lmax };
    let mut all: Vec<Q> = Vec::new();
    for ell in 0..=lmax {
        if harmonic_dim(m, ell) == 0 {
            continue;
        }
        let Ok(s) = SectorModel::new(a.clone(), m, ell) else { continue };
        all.extend(spectrum(&s, count));
    }
    all.sort_by(|x, y| y.cmp(x));
    all.dedup();
    all.truncate(count);
    Ok(all)
}

/// Coefficients of a radial function in the basis `g_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaguerreExpansion {
    pub sector: SectorModel,
    pub coeffs: Vec<Complex64>,
    /// `‖f - P_N f‖` estimate from the last five coefficients.
    pub tail_estimate: f64,
}

impl LaguerreExpansion {
    pub fn new(sector: SectorModel, coeffs: Vec<Complex64>) -> Self {
        let mut e = Self { sector, coeffs, tail_estimate: 0.0 };
        e.tail_estimate = e.tail();
        e
    }

    /// Expansion with the given `(k, c_k)` pairs and `n` slots.
    pub fn from_basis(sector: SectorModel, n: usize, entries: &[(usize, Complex64)]) -> Self {
        let mut c = vec![Complex64::zero(); n];
        for &(k, v) in entries {
            c[k] += v;
        }
        Self::new(sector, c)
    }

    fn tail(&self) -> f64 {
        let n = self.coeffs.len();
        let lo = n.saturating_sub(5);
        (lo..n).map(|k| self.coeffs[k].norm_sqr() * self.sector.norm_sq(k)).sum::<f64>().sqrt()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Σ |c_k|² h_k`.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().enumerate().map(|(k, c)| c.norm_sqr() * self.sector.norm_sq(k)).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `⟨self, other⟩`, linear in the first slot.
    pub fn inner(&self, other: &LaguerreExpansion) -> Complex64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .map(|(k, (a, b))| a * b.conj() * self.sector.norm_sq(k))
            .sum()
    }

    /// `Σ c_k g_k(r)`.
    pub fn eval(&self, r: f64) -> Complex64 {
        synthesize_at(self, r)
    }
}

/// Samples of a radial function on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSamples {
    pub r: Vec<f64>,
    pub values: Vec<Complex64>,
}

/// Projects `f` onto `g_0..g_{n-1}` with the sector's `nodes`-point rule.
pub fn analyze_with(
    f: impl Fn(f64) -> Complex64,
    sector: &SectorModel,
    n: usize,
    rule: &LaguerreRule,
) -> Result<LaguerreExpansion> {
    if n > rule.len() {
        return Err(QuadratureError::Degenerate { requested: n, available: rule.len() }.into());
    }
    let nu = sector.nu();
    let ell = sector.ell as i32;
    let mut coeffs = vec![Complex64::zero(); n];
    let mut total = 0.0;
    let mut tail = 0.0;
    let tail_start = rule.len() - (rule.len() / 20).max(1);
    for (i, (&u, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        let r = sector.r_of_u(u);
        let phi = f(r) / r.powi(ell);
        if !phi.re.is_finite() || !phi.im.is_finite() {
            return Err(SpectralError::NotSquareIntegrable(f64::INFINITY));
        }
        let mass = w * phi.norm_sqr();
        total += mass;
        if i >= tail_start {
            tail += mass;
        }
        let p = laguerre_functions(n, nu, u);
        for (k, pk) in p.iter().enumerate() {
            coeffs[k] += phi * (w * pk);
        }
    }
    if !total.is_finite() || (total > 0.0 && tail > 1e-3 * total) {
        return Err(SpectralError::NotSquareIntegrable(if total > 0.0 { tail / total } else { f64::INFINITY }));
    }
    for (k, c) in coeffs.iter_mut().enumerate() {
        *c /= laguerre_sqrt_norm(k, nu);
    }
    Ok(LaguerreExpansion::new(sector.clone(), coeffs))
}

/// [`analyze_with`] using the cached default rule.
pub fn analyze(f: impl Fn(f64) -> Complex64, sector: &SectorModel, n: usize) -> Result<LaguerreExpansion> {
    let rule = sector.rule(DEFAULT_NODES.max(n))?;
    analyze_with(f, sector, n, &rule)
}

fn synthesize_at(e: &LaguerreExpansion, r: f64) -> Complex64 {
    let g = e.sector.eigenfunctions(e.coeffs.len(), r);
    e.coeffs.iter().zip(&g).map(|(c, gk)| c * gk).sum()
}

/// Values of the expansion on a grid.
pub fn synthesize(e: &LaguerreExpansion, grid: &[f64]) -> RadialSamples {
    RadialSamples { r: grid.to_vec(), values: grid.iter().map(|&r| synthesize_at(e, r)).collect() }
}

/// Time parameter and sector of `e^{tD_a}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemigroupQuery {
    pub t: Complex64,
    pub sector: SectorModel,
    pub truncation: usize,
}

impl SemigroupQuery {
    pub fn new(t: Complex64, sector: SectorModel, truncation: usize) -> Result<Self> {
        if !(t.re >= 0.0) || !t.im.is_finite() {
            return Err(SpectralError::Domain(format!("semigroup needs Re t >= 0, got {t}")));
        }
        Ok(Self { t, sector, truncation })
    }
}

/// `c_k ↦ e^{tλ_k} c_k`.
pub fn semigroup_apply(query: &SemigroupQuery, f: &LaguerreExpansion) -> LaguerreExpansion {
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * (query.t * query.sector.eigenvalue_f64(k)).exp())
        .collect();
    LaguerreExpansion::new(f.sector.clone(), coeffs)
}

/// Closed-form integral kernel of `e^{tD_a}` on a sector, from the
/// Hardy–Hille bilinear generating function of Laguerre polynomials.
#[derive(Debug, Clone)]
pub struct SemigroupKernel {
    pub sector: SectorModel,
    pub t: Complex64,
    w: Complex64,
    /// `2(2/a)^ν e^{-t(ν+1)/2} (1-w)^{-ν-1}`.
    prefactor: Complex64,
    /// `(1+w)/(2(1-w))`.
    gauss: Complex64,
    /// `w/(1-w)²`.
    bessel: Complex64,
}

/// Constants of the kernel backend, recorded for inspection.
#[derive(Debug, Clone, Serialize)]
pub struct KernelCalibration {
    /// Analytic normalization `2(2/a)^ν`.
    pub constant: f64,
    /// `(K g₀)(r₀) / (e^{tλ₀} g₀(r₀))`, ideally 1.
    pub ground_state_ratio: Complex64,
}

pub fn semigroup_kernel(query: &SemigroupQuery) -> Result<SemigroupKernel> {
    SemigroupKernel::new(query.sector.clone(), query.t)
}

impl SemigroupKernel {
    pub fn new(sector: SectorModel, t: Complex64) -> Result<Self> {
        if !(t.re >= 0.0) {
            return Err(SpectralError::Domain(format!("semigroup needs Re t >= 0, got {t}")));
        }
        let w = (-t).exp();
        let one_minus = Complex64::new(1.0, 0.0) - w;
        if one_minus.norm() < 1e-12 {
            return Err(SpectralError::SingularParameter(format!("w = e^(-t) = 1 at t = {t}")));
        }
        let nu = sector.nu();
        let c = 2.0 * (2.0 / sector.a_f64()).powf(nu);
        let prefactor = c * (-t * (0.5 * (nu + 1.0))).exp() * one_minus.powf(-nu - 1.0);
        let gauss = (1.0 + w) / (2.0 * one_minus);
        let bessel = w / (one_minus * one_minus);
        Ok(Self { sector, t, w, prefactor, gauss, bessel })
    }

    pub fn w(&self) -> Complex64 {
        self.w
    }

    /// `k̂(u, v)` with `K(r, s) = (rs)^ℓ k̂(u, v)`.
    pub fn reduced(&self, u: f64, v: f64) -> Complex64 {
        let qarg = self.bessel * (u * v);
        let shift = -self.gauss * (u + v);
        self.prefactor * bessel_i_renorm_sq_shifted(self.sector.nu(), qarg, shift)
    }

    pub fn value(&self, r: f64, s: f64) -> Complex64 {
        let u = self.sector.u_of_r(r);
        let v = self.sector.u_of_r(s);
        self.reduced(u, v) * (r * s).powi(self.sector.ell as i32)
    }

    /// Decay rate (in `v`) of the integrand `k̂(u,v) φ(v)` for `φ ~ e^{-v/2}`.
    fn decay(&self) -> f64 {
        self.gauss.re + 0.5
    }

    /// `(K f)(r)` by Gauss–Laguerre quadrature in `v`, rule scaled to the
    /// kernel's Gaussian decay.
    pub fn apply_at(&self, f: &dyn Fn(f64) -> Complex64, r: f64, rule: &LaguerreRule) -> Complex64 {
        let scaled = rule.scaled(self.decay());
        let u = self.sector.u_of_r(r);
        let ell = self.sector.ell as i32;
        let pre = (self.sector.ln_measure_prefactor()).exp();
        let sum: Complex64 = scaled
            .nodes
            .iter()
            .zip(&scaled.weights)
            .map(|(&v, &wt)| {
                let s = self.sector.r_of_u(v);
                self.reduced(u, v) * (f(s) / s.powi(ell)) * wt
            })
            .sum();
        sum * pre * r.powi(ell)
    }

    pub fn apply(&self, f: &dyn Fn(f64) -> Complex64, grid: &[f64], rule: &LaguerreRule) -> RadialSamples {
        RadialSamples { r: grid.to_vec(), values: grid.iter().map(|&r| self.apply_at(f, r, rule)).collect() }
    }

    /// Calibration record against the spectral action on `g₀`.
    pub fn calibration(&self, rule: &LaguerreRule) -> KernelCalibration {
        let sector = self.sector.clone();
        let g0 = move |r: f64| Complex64::new(sector.eigenfunctions(1, r)[0], 0.0);
        let r0 = self.sector.r_of_u(1.0);
        let got = self.apply_at(&g0, r0, rule);
        let want = (self.t * self.sector.eigenvalue_f64(0)).exp() * g0(r0);
        KernelCalibration { constant: 2.0 * (2.0 / self.sector.a_f64()).powf(self.sector.nu()), ground_state_ratio: got / want }
    }

    /// `∫∫ |K|² dμ dμ` by a tensor Gauss–Laguerre rule.
    pub fn hs_norm_sq_quadrature(&self, rule: &LaguerreRule) -> f64 {
        // |k̂|² ≲ exp(-2c(u+v) + 4ρ√(uv)) with ρ = |Re(√w/(1-w))|, and
        // 4ρ√(uv) ≤ 2ρ(u+v)
        let c = self.gauss.re;
        let rho = (self.w.sqrt() / (Complex64::new(1.0, 0.0) - self.w)).re.abs();
        let beta = (0.9 * 2.0 * (c - rho)).max(1e-3);
        let scaled = rule.scaled(beta);
        let pre = (2.0 * self.sector.ln_measure_prefactor()).exp();
        let mut sum = 0.0;
        for (&u, &wu) in scaled.nodes.iter().zip(&scaled.weights) {
            for (&v, &wv) in scaled.nodes.iter().zip(&scaled.weights) {
                sum += wu * wv * self.reduced(u, v).norm_sqr();
            }
        }
        sum * pre
    }
}

/// Kernel value at `Re t = 0` as the Richardson-extrapolated limit from
/// `Re t = ε`, ε ∈ {1e-2, 5e-3, 2.5e-3}.
pub fn boundary_kernel_value(sector: &SectorModel, theta: f64, r: f64, s: f64) -> Result<Complex64> {
    let eps = [1e-2, 5e-3, 2.5e-3];
    let mut v = [Complex64::zero(); 3];
    for (i, e) in eps.iter().enumerate() {
        v[i] = SemigroupKernel::new(sector.clone(), Complex64::new(*e, theta))?.value(r, s);
    }
    Ok(richardson(v))
}

fn richardson(v: [Complex64; 3]) -> Complex64 {
    let r1 = v[1] * 2.0 - v[0];
    let r2 = v[2] * 2.0 - v[1];
    (r2 * 4.0 - r1) / 3.0
}

/// Boundary action `e^{iθD_a} f` at sample points through the kernel,
/// extrapolated from `Re t = ε` as in [`boundary_kernel_value`].
pub fn boundary_kernel_apply(
    sector: &SectorModel,
    theta: f64,
    f: &dyn Fn(f64) -> Complex64,
    grid: &[f64],
    rule: &LaguerreRule,
) -> Result<RadialSamples> {
    let eps = [1e-2, 5e-3, 2.5e-3];
    let mut outs = Vec::new();
    for e in eps {
        outs.push(SemigroupKernel::new(sector.clone(), Complex64::new(e, theta))?.apply(f, grid, rule));
    }
    let values = (0..grid.len()).map(|i| richardson([outs[0].values[i], outs[1].values[i], outs[2].values[i]])).collect();
    Ok(RadialSamples { r: grid.to_vec(), values })
}

/// Truncated spectral sum `Σ_{k<n} e^{tλ_k} g_k(r) g_k(s)/h_k`.
pub fn spectral_kernel_value(sector: &SectorModel, t: Complex64, n: usize, r: f64, s: f64) -> Complex64 {
    let gr = sector.eigenfunctions(n, r);
    let gs = sector.eigenfunctions(n, s);
    (0..n).map(|k| (t * sector.eigenvalue_f64(k)).exp() * (gr[k] * gs[k] / sector.norm_sq(k))).sum()
}

#[derive(Debug, Clone, Serialize)]
pub struct HsNorm {
    pub norm_sq: f64,
    pub norm: f64,
    pub full_space: bool,
    pub sectors_summed: u32,
}

/// Hilbert–Schmidt norm of `e^{tD_a}` on one sector or on the whole space.
pub fn hs_norm(query: &SemigroupQuery, full_space: bool) -> Result<HsNorm> {
    let tr = query.t.re;
    if !(tr > 0.0) {
        return Err(SpectralError::NotHilbertSchmidt(tr));
    }
    let sector_sum = |s: &SectorModel| (-tr * (s.nu() + 1.0)).exp() / (1.0 - (-2.0 * tr).exp());
    if !full_space {
        let v = sector_sum(&query.sector);
        return Ok(HsNorm { norm_sq: v, norm: v.sqrt(), full_space, sectors_summed: 1 });
    }
    let m = query.sector.m;
    let a = query.sector.a.clone();
    let mut total = 0.0;
    let mut ell = 0u32;
    loop {
        let d = harmonic_dim(m, ell);
        if d > 0 {
            let s = SectorModel::new(a.clone(), m, ell)?;
            let term = d as f64 * sector_sum(&s);
            total += term;
            if term <= 1e-17 * total && ell > 2 {
                break;
            }
        } else if m == 1 && ell > 1 {
            break;
        }
        ell += 1;
        if ell > 100_000 {
            return Err(SpectralError::Domain("full-space HS sum did not converge".into()));
        }
    }
    Ok(HsNorm { norm_sq: total, norm: total.sqrt(), full_space, sectors_summed: ell + 1 })
}

/// `D_a f` at `r` by fourth-order central differences with step `h`.
pub fn fd_apply_da(sector: &SectorModel, f: &dyn Fn(f64) -> f64, r: f64, h: f64) -> f64 {
    let (fm2, fm1, f0, fp1, fp2) = (f(r - 2.0 * h), f(r - h), f(r), f(r + h), f(r + 2.0 * h));
    let d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
    let d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    da_from_derivatives(sector, r, f0, d1, d2)
}

/// `D_a f` at `r` given `f, f', f''`.
pub fn da_from_derivatives(sector: &SectorModel, r: f64, f0: f64, d1: f64, d2: f64) -> f64 {
    let a = sector.a_f64();
    let m = sector.m as f64;
    let l = sector.ell as f64;
    let lap = d2 + (m - 1.0) / r * d1 - l * (l + m - 2.0) / (r * r) * f0;
    (r.powf(2.0 - a) * lap - r.powf(a) * f0) / (2.0 * a)
}

/// Smooth bump supported on `(lo, hi)`, with first and second derivatives.
pub fn bump(lo: f64, hi: f64, r: f64) -> (f64, f64, f64) {
    if r <= lo || r >= hi {
        return (0.0, 0.0, 0.0);
    }
    let qv = (r - lo) * (hi - r);
    let q1 = hi + lo - 2.0 * r;
    let q2 = -2.0;
    let psi = (-1.0 / qv).exp();
    let g1 = q1 / (qv * qv);
    let g2 = (q2 * qv - 2.0 * q1 * q1) / (qv * qv * qv);
    (psi, psi * g1, psi * (g1 * g1 + g2))
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryReport {
    pub lhs: f64,
    pub rhs: f64,
    pub difference: f64,
}

/// `⟨D_a f, g⟩` versus `⟨f, D_a g⟩` for `f = r^p·bump`, `g = r^q·bump` on
/// shifted supports, by composite Gauss–Legendre.
pub fn symmetry_check(sector: &SectorModel, f_support: (f64, f64), g_support: (f64, f64), p: f64, qexp: f64) -> SymmetryReport {
    let eval = |supp: (f64, f64), pw: f64, r: f64| {
        let (b0, b1, b2) = bump(supp.0, supp.1, r);
        let rp = r.powf(pw);
        let rp1 = if pw == 0.0 { 0.0 } else { pw * r.powf(pw - 1.0) };
        let rp2 = if pw == 0.0 || pw == 1.0 { 0.0 } else { pw * (pw - 1.0) * r.powf(pw - 2.0) };
        let f0 = rp * b0;
        let f1 = rp1 * b0 + rp * b1;
        let f2 = rp2 * b0 + 2.0 * rp1 * b1 + rp * b2;
        (f0, da_from_derivatives(sector, r, f0, f1, f2))
    };
    let mexp = q_to_f64(&sector.measure_exponent());
    let lo = f_support.0.min(g_support.0);
    let hi = f_support.1.max(g_support.1);
    let lhs = crate::quadrature::integrate_interval(
        |r| {
            let (_, df) = eval(f_support, p, r);
            let (g, _) = eval(g_support, qexp, r);
            df * g * r.powf(mexp)
        },
        lo,
        hi,
        200,
        16,
    );
    let rhs = crate::quadrature::integrate_interval(
        |r| {
            let (f, _) = eval(f_support, p, r);
            let (_, dg) = eval(g_support, qexp, r);
            f * dg * r.powf(mexp)
        },
        lo,
        hi,
        200,
        16,
    );
    SymmetryReport { lhs, rhs, difference: (lhs - rhs).abs() }
}

/// Classical Mehler kernel of `e^{-τH}`, `H = ½(-d²/dx² + x²)` on ℝ.
pub fn mehler_kernel(tau: Complex64, x: f64, y: f64) -> Complex64 {
    let sh = tau.sinh();
    let ch = tau.cosh();
    let num = -(ch * (x * x + y * y) - 2.0 * x * y) / (2.0 * sh);
    num.exp() / (2.0 * PI * sh).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn sector_parameters() {
        let s = SectorModel::new(q(1), 3, 0).unwrap();
        assert_eq!(s.nu_exact(), q(1));
        assert_eq!(s.lowest_weight(), q(2));
        assert_eq!(s.measure_exponent(), q(1));
        assert!(SectorModel::new(q(1), 1, 0).is_err());
        assert!(SectorModel::new(q(2), 1, 0).is_ok());
        assert!(SectorModel::new(q(0), 3, 0).is_err());
        assert!(SectorModel::formal(q(1), 1, 0).is_ok());
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(merged_spectrum(&q(1), 3, 3).unwrap(), vec![q(-1), q(-2), q(-3)]);
        assert_eq!(merged_spectrum(&q(2), 2, 3).unwrap(), vec![qr(-1, 2), q(-1), qr(-3, 2)]);
        let s = SectorModel::new(q(2), 1, 0).unwrap();
        assert_eq!(spectrum(&s, 3), vec![qr(-1, 4), qr(-5, 4), qr(-9, 4)]);
        assert_eq!(SectorModel::new(q(4), 2, 0).unwrap().lowest_weight(), q(1));
        assert_eq!(SectorModel::new(q(2), 2, 1).unwrap().lowest_weight(), q(2));
    }

    #[test]
    fn norms_match_quadrature() {
        let s = SectorModel::new(qr(3, 2), 2, 1).unwrap();
        let rule = crate::quadrature::gauss_laguerre(80, s.nu()).unwrap();
        for k in [0usize, 3, 9] {
            // ∫ g_k² r^{m+a-3} dr = ½(a/2)^ν ∫ u^ν L_k² e^{-u} du
            let pre = s.ln_measure_prefactor().exp();
            let val = pre
                * rule.integrate(|u| {
                    let l = crate::specfun::laguerre(k, &s.nu(), &u);
                    l * l * (-u).exp()
                });
            assert!((val / s.norm_sq(k) - 1.0).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn hs_errors_on_boundary() {
        let s = SectorModel::new(q(1), 3, 0).unwrap();
        let qy = SemigroupQuery::new(Complex64::new(0.0, 1.0), s, 60).unwrap();
        assert!(matches!(hs_norm(&qy, false), Err(SpectralError::NotHilbertSchmidt(_))));
    }

    #[test]
    fn kernel_singular_at_w_one() {
        let s = SectorModel::new(q(1), 3, 0).unwrap();
        assert!(matches!(
            SemigroupKernel::new(s, Complex64::new(0.0, 2.0 * PI)),
            Err(SpectralError::SingularParameter(_))
        ));
    }

    #[test]
    fn fd_is_fourth_order() {
        let s = SectorModel::new(q(1), 3, 1).unwrap();
        let f = |r: f64| r * (-r).exp();
        // exact: D_1 on r e^{-r} via derivatives
        let exact = |r: f64| da_from_derivatives(&s, r, r * (-r).exp(), (1.0 - r) * (-r).exp(), (r - 2.0) * (-r).exp());
        let r = 1.3;
        let e1 = (fd_apply_da(&s, &f, r, 0.02) - exact(r)).abs();
        let e2 = (fd_apply_da(&s, &f, r, 0.01) - exact(r)).abs();
        assert!(e1 / e2 > 12.0 && e1 / e2 < 20.0, "ratio {}", e1 / e2);
    }
}
