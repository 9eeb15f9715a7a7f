//! Exact θ-calculus (`θ = x d/dx`) for the fourth-order operator
//!
//! `𝒟_{μ,ν} = x^{-2}((θ+ν)(θ+μ+ν) - x²)(θ(θ+μ) - x²) - (μ-ν)(μ+ν+2)/2`
//!
//! and the Meijer equation `∏(θ - b_j) u = x u`. Operators are stored in
//! normal order `Σ_j x^j P_j(θ)`, so `x^j P(θ) x^s = P(s) x^{s+j}` and
//! `P(θ) x^j = x^j P(θ + j)`. Products are read right to left.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{fmt_q, nullspace, q, qr, serde_q, serde_q_vec, Q};
use crate::specfun::{hermite_coeffs, laguerre_coeffs};

#[derive(Debug, Error, PartialEq)]
pub enum FourthOrderError {
    #[error("indicial violation: nonzero coefficient at x^{0} from a power series input")]
    IndicialViolation(String),
    #[error("operator shift {shift} is not a multiple of the series step {step}")]
    Lattice { shift: i64, step: u32 },
    #[error("series offsets {0} and {1} are on different lattices")]
    OffsetMismatch(String, String),
    #[error("truncation must be at least {0}")]
    Truncation(usize),
    #[error("the zero function has no reduction")]
    ZeroInput,
    #[error("invalid series: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, FourthOrderError>;

/// `Σ_{n≤N} c_n x^{σ + step·n}`; coefficients beyond `N` are unknown unless
/// `terminating`, in which case they are zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaSeries {
    #[serde(with = "serde_q")]
    pub sigma: Q,
    pub step: u32,
    #[serde(with = "serde_q_vec")]
    pub coeffs: Vec<Q>,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default)]
    pub terminating: bool,
}

impl ThetaSeries {
    pub fn new(sigma: Q, step: u32, coeffs: Vec<Q>) -> Result<Self> {
        if step == 0 || coeffs.is_empty() {
            return Err(FourthOrderError::Invalid("step must be positive and coefficients nonempty".into()));
        }
        let n = coeffs.len() - 1;
        Ok(Self { sigma, step, coeffs, n, terminating: false })
    }

    /// Finite sum, exact beyond the stored range.
    pub fn polynomial(sigma: Q, step: u32, coeffs: Vec<Q>) -> Result<Self> {
        let mut s = Self::new(sigma, step, coeffs)?;
        s.terminating = true;
        Ok(s)
    }

    /// `x^s`.
    pub fn monomial(s: Q, step: u32) -> Self {
        Self { sigma: s, step, coeffs: vec![q(1)], n: 0, terminating: true }
    }

    pub fn exponent(&self, idx: usize) -> Q {
        &self.sigma + q((self.step as usize * idx) as i64)
    }

    pub fn coefficient(&self, idx: usize) -> Option<Q> {
        match self.coeffs.get(idx) {
            Some(c) => Some(c.clone()),
            None if self.terminating => Some(q(0)),
            None => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Same function on a lattice of step `step`, which must divide
    /// `self.step`.
    pub fn refine(&self, step: u32) -> Result<Self> {
        if step == 0 || !self.step.is_multiple_of(step) {
            return Err(FourthOrderError::Invalid(format!("step {step} does not divide {}", self.step)));
        }
        let f = (self.step / step) as usize;
        let mut c = vec![q(0); self.n * f + 1];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[i * f] = v.clone();
        }
        Ok(Self { sigma: self.sigma.clone(), step, n: self.n * f, coeffs: c, terminating: self.terminating })
    }

    fn align(&self, other: &Self) -> Result<(Q, i64)> {
        // offset difference in lattice units
        let d = &other.sigma - &self.sigma;
        let units = &d / q(self.step as i64);
        if self.step != other.step || !units.is_integer() {
            return Err(FourthOrderError::OffsetMismatch(fmt_q(&self.sigma), fmt_q(&other.sigma)));
        }
        Ok((d, units.to_integer().try_into().expect("small offset")))
    }

    /// `α·self + β·other`.
    pub fn combine(&self, alpha: &Q, other: &Self, beta: &Q) -> Result<Self> {
        let (_, units) = self.align(other)?;
        let lo = units.min(0);
        let sigma = &self.sigma + q(lo * self.step as i64);
        let off_a = (-lo) as usize;
        let off_b = (units - lo) as usize;
        let known_a = if self.terminating { usize::MAX } else { off_a + self.n };
        let known_b = if other.terminating { usize::MAX } else { off_b + other.n };
        let len = (off_a + self.coeffs.len()).max(off_b + other.coeffs.len());
        let n = if self.terminating && other.terminating { len - 1 } else { known_a.min(known_b) };
        let mut c = vec![q(0); n + 1];
        for (i, v) in self.coeffs.iter().enumerate() {
            if off_a + i <= n {
                c[off_a + i] += v * alpha;
            }
        }
        for (i, v) in other.coeffs.iter().enumerate() {
            if off_b + i <= n {
                c[off_b + i] += v * beta;
            }
        }
        Ok(Self { sigma, step: self.step, coeffs: c, n, terminating: self.terminating && other.terminating })
    }

    /// Drops leading zero coefficients, raising `σ`.
    pub fn normalized(&self) -> Self {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) | None => self.clone(),
            Some(k) => Self {
                sigma: self.exponent(k),
                step: self.step,
                coeffs: self.coeffs[k..].to_vec(),
                n: self.n - k,
                terminating: self.terminating,
            },
        }
    }

    /// `x·u`, on a step-1 lattice.
    pub fn times_x(&self) -> Result<Self> {
        let mut s = self.refine(1)?;
        s.sigma += q(1);
        Ok(s)
    }
}

/// Polynomial in θ, lowest degree first.
type ThetaPoly = Vec<Q>;

fn poly_trim(mut p: ThetaPoly) -> ThetaPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_eval(p: &ThetaPoly, s: &Q) -> Q {
    p.iter().rev().fold(q(0), |acc, c| acc * s + c)
}

fn poly_mul(a: &ThetaPoly, b: &ThetaPoly) -> ThetaPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![q(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    poly_trim(r)
}

/// `P(θ + j)`.
fn poly_shift(p: &ThetaPoly, j: i64) -> ThetaPoly {
    let mut r: ThetaPoly = vec![];
    let lin = vec![q(j), q(1)];
    for c in p.iter().rev() {
        r = poly_mul(&r, &lin);
        if r.is_empty() {
            r = vec![c.clone()];
        } else {
            r[0] += c;
        }
    }
    poly_trim(r)
}

/// `Σ_j x^j P_j(θ)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ThetaOperator {
    terms: BTreeMap<i64, ThetaPoly>,
}

impl ThetaOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: Q) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(0, vec![c]);
        }
        Self { terms: t }
    }

    pub fn one() -> Self {
        Self::scalar(q(1))
    }

    pub fn theta() -> Self {
        Self { terms: BTreeMap::from([(0, vec![q(0), q(1)])]) }
    }

    /// Multiplication by `x^j`.
    pub fn x_pow(j: i64) -> Self {
        Self { terms: BTreeMap::from([(j, vec![q(1)])]) }
    }

    /// `θ + c`.
    pub fn theta_plus(c: Q) -> Self {
        Self { terms: BTreeMap::from([(0, poly_trim(vec![c, q(1)]))]) }
    }

    pub fn shifts(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for (j, p) in &o.terms {
            let e = t.entry(*j).or_default();
            if e.len() < p.len() {
                e.resize(p.len(), q(0));
            }
            for (i, c) in p.iter().enumerate() {
                e[i] += c;
            }
        }
        t.retain(|_, p| {
            *p = poly_trim(std::mem::take(p));
            !p.is_empty()
        });
        Self { terms: t }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut t = self.terms.clone();
        for p in t.values_mut() {
            for x in p.iter_mut() {
                *x *= c;
            }
        }
        t.retain(|_, p| {
            *p = poly_trim(std::mem::take(p));
            !p.is_empty()
        });
        Self { terms: t }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&q(-1)))
    }

    /// `self ∘ o` (apply `o` first).
    pub fn compose(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (i, p) in &self.terms {
            for (j, r) in &o.terms {
                // x^i P(θ) x^j R(θ) = x^{i+j} P(θ+j) R(θ)
                let prod = poly_mul(&poly_shift(p, *j), r);
                out = out.add(&Self { terms: BTreeMap::from([(i + j, prod)]) });
            }
        }
        out
    }

    /// Substitutes `θ ↦ θ + κx`, i.e. conjugation `e^{-κx} ∘ self ∘ e^{κx}`.
    pub fn conjugate_exp(&self, kappa: &Q) -> Self {
        let shifted_theta = Self::theta().add(&Self::x_pow(1).scale(kappa));
        let mut out = Self::zero();
        for (j, p) in &self.terms {
            // Horner in the shifted θ
            let mut acc = Self::zero();
            for c in p.iter().rev() {
                acc = shifted_theta.compose(&acc).add(&Self::scalar(c.clone()));
            }
            out = out.add(&Self::x_pow(*j).compose(&acc));
        }
        out
    }

    /// Exact action on a series; the output offset is `σ + min shift`.
    pub fn apply(&self, u: &ThetaSeries) -> Result<ThetaSeries> {
        let step = u.step as i64;
        for &j in self.terms.keys() {
            if j % step != 0 {
                return Err(FourthOrderError::Lattice { shift: j, step: u.step });
            }
        }
        let (Some(&jmin), Some(&jmax)) = (self.terms.keys().next(), self.terms.keys().next_back()) else {
            return Ok(ThetaSeries { sigma: u.sigma.clone(), step: u.step, coeffs: vec![q(0)], n: u.n, terminating: u.terminating });
        };
        let spread = ((jmax - jmin) / step) as usize;
        let n_out = if u.terminating { u.coeffs.len() - 1 + spread } else { u.n };
        let mut c = vec![q(0); n_out + 1];
        for (idx, cu) in u.coeffs.iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            let s = u.exponent(idx);
            for (j, p) in &self.terms {
                let out_idx = idx + ((j - jmin) / step) as usize;
                if out_idx <= n_out {
                    c[out_idx] += poly_eval(p, &s) * cu;
                }
            }
        }
        Ok(ThetaSeries { sigma: &u.sigma + q(jmin), step: u.step, coeffs: c, n: n_out, terminating: u.terminating })
    }

    /// Coefficient of `x^{s+j}` in `self(x^s)`, as a map `j ↦ P_j(s)`.
    pub fn symbol_at(&self, s: &Q) -> BTreeMap<i64, Q> {
        self.terms.iter().map(|(j, p)| (*j, poly_eval(p, s))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourthOrderParams {
    #[serde(with = "serde_q")]
    pub mu: Q,
    #[serde(with = "serde_q")]
    pub nu: Q,
}

impl FourthOrderParams {
    pub fn new(mu: Q, nu: Q) -> Self {
        Self { mu, nu }
    }

    /// `(μ-ν)(μ+ν+2)/2`.
    pub fn constant(&self) -> Q {
        (&self.mu - &self.nu) * (&self.mu + &self.nu + q(2)) / q(2)
    }

    /// `θ(θ+μ) - x²`, the factor applied first.
    pub fn inner_factor(&self) -> ThetaOperator {
        ThetaOperator::theta().compose(&ThetaOperator::theta_plus(self.mu.clone())).sub(&ThetaOperator::x_pow(2))
    }

    /// `(θ+ν)(θ+μ+ν) - x²`.
    pub fn outer_factor(&self) -> ThetaOperator {
        ThetaOperator::theta_plus(self.nu.clone())
            .compose(&ThetaOperator::theta_plus(&self.mu + &self.nu))
            .sub(&ThetaOperator::x_pow(2))
    }

    pub fn operator(&self) -> ThetaOperator {
        ThetaOperator::x_pow(-2)
            .compose(&self.outer_factor().compose(&self.inner_factor()))
            .sub(&ThetaOperator::scalar(self.constant()))
    }

    /// The same expression with the two quadratic factors swapped.
    pub fn operator_swapped(&self) -> ThetaOperator {
        ThetaOperator::x_pow(-2)
            .compose(&self.inner_factor().compose(&self.outer_factor()))
            .sub(&ThetaOperator::scalar(self.constant()))
    }
}

fn check_poles(input: &ThetaSeries, out: &ThetaSeries) -> Result<()> {
    if input.sigma.is_negative() {
        return Ok(());
    }
    for (i, c) in out.coeffs.iter().enumerate() {
        let e = out.exponent(i);
        if e.is_negative() && !c.is_zero() {
            return Err(FourthOrderError::IndicialViolation(fmt_q(&e)));
        }
    }
    Ok(())
}

/// `𝒟_{μ,ν} u`.
pub fn apply_d(params: &FourthOrderParams, u: &ThetaSeries) -> Result<ThetaSeries> {
    if !u.terminating && u.n < 2 {
        return Err(FourthOrderError::Truncation(2));
    }
    let u = if u.step == 2 || u.step == 1 { u.clone() } else { u.refine(1)? };
    let out = params.operator().apply(&u)?;
    check_poles(&u, &out)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeijerParams {
    #[serde(with = "serde_q_vec")]
    pub b: Vec<Q>,
}

impl MeijerParams {
    pub fn new(b: [Q; 4]) -> Self {
        Self { b: b.to_vec() }
    }

    /// `∏_j (θ - b_j)`.
    pub fn operator(&self) -> ThetaOperator {
        self.b.iter().fold(ThetaOperator::one(), |acc, bj| acc.compose(&ThetaOperator::theta_plus(-bj.clone())))
    }
}

/// `∏(θ - b_j) u`.
pub fn apply_meijer_lhs(params: &MeijerParams, u: &ThetaSeries) -> Result<ThetaSeries> {
    params.operator().apply(u)
}

/// `∏(θ - b_j) u - x u`, on a step-1 lattice at offset `σ`.
pub fn meijer_residual(params: &MeijerParams, u: &ThetaSeries) -> Result<ThetaSeries> {
    let u1 = u.refine(1)?;
    let lhs = apply_meijer_lhs(params, &u1)?;
    let xu = u1.times_x()?;
    let mut r = lhs.combine(&q(1), &xu, &q(-1))?;
    // x·u is known one step further than u; cap at u's truncation
    if !u.terminating {
        r.n = r.n.min(u1.n);
        r.coeffs.truncate(r.n + 1);
    }
    Ok(r)
}

/// Frobenius series at exponent `b_k`: `c_n ∏_j (b_k + n - b_j) = c_{n-1}`.
pub fn frobenius_solution(params: &MeijerParams, k: usize, n: usize) -> Result<ThetaSeries> {
    let bk = params.b[k].clone();
    let mut c = vec![q(1)];
    for i in 1..=n {
        let s = &bk + q(i as i64);
        let d: Q = params.b.iter().map(|bj| &s - bj).product();
        if d.is_zero() {
            return Err(FourthOrderError::Invalid(format!("resonant exponents at n = {i}")));
        }
        c.push(&c[i - 1] / d);
    }
    ThetaSeries::new(bk, 1, c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Gauge {
    /// `u = e^{-x} p(x)`.
    Exp,
    /// `u = e^{-y²/2} q(y)` in the folded coordinate `x = y²/2`.
    Gaussian,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialEigenfunction {
    /// Coefficients of `p(x)` (exp gauge) or `q(y)` (Gaussian gauge), lowest first.
    #[serde(with = "serde_q_vec")]
    pub polynomial: Vec<Q>,
    #[serde(with = "serde_q")]
    pub eigenvalue: Q,
    pub gauge: Gauge,
}

/// `e^{x} 𝒟 e^{-x}`.
pub fn gauge_operator(params: &FourthOrderParams) -> ThetaOperator {
    params.operator().conjugate_exp(&q(-1))
}

/// All polynomial eigenfunctions of degree ≤ `maxdeg` in the chosen gauge.
pub fn polynomial_eigenfunctions(params: &FourthOrderParams, gauge: Gauge, maxdeg: usize) -> Vec<PolynomialEigenfunction> {
    let maxdeg = maxdeg.min(30);
    let d = match gauge {
        Gauge::Exp => maxdeg,
        Gauge::Gaussian => maxdeg / 2,
    };
    let op = gauge_operator(params);
    let jmin = op.shifts().next().unwrap_or(0).min(0);
    let jmax = op.shifts().last().unwrap_or(0);
    // columns: p_0..p_d; rows: exponents jmin..d+jmax
    let rows = (d as i64 + jmax - jmin + 1) as usize;
    let mut mat = vec![vec![q(0); d + 1]; rows];
    for s in 0..=d {
        for (j, v) in op.symbol_at(&q(s as i64)) {
            mat[(s as i64 + j - jmin) as usize][s] += v;
        }
    }
    let mut candidates: Vec<Q> = (0..=d).map(|s| mat[(s as i64 - jmin) as usize][s].clone()).collect();
    candidates.sort();
    candidates.dedup();
    let mut out = Vec::new();
    for e in candidates {
        let mut m = mat.clone();
        for s in 0..=d {
            m[(s as i64 - jmin) as usize][s] -= &e;
        }
        for v in nullspace(&m, d + 1) {
            let p = poly_trim(v);
            if p.is_empty() {
                continue;
            }
            let lead = p.last().expect("nonempty").clone();
            let p: Vec<Q> = p.into_iter().map(|c| c / &lead).collect();
            let polynomial = match gauge {
                Gauge::Exp => p,
                Gauge::Gaussian => fold_to_y(&p),
            };
            out.push(PolynomialEigenfunction { polynomial, eigenvalue: e.clone(), gauge });
        }
    }
    out.sort_by_key(|f| f.polynomial.len());
    out
}

/// `q(y) = p(y²/2)`, made monic.
fn fold_to_y(p: &[Q]) -> Vec<Q> {
    let mut qy = vec![q(0); 2 * p.len() - 1];
    for (i, c) in p.iter().enumerate() {
        qy[2 * i] = c / Q::from_integer(num_bigint::BigInt::from(2).pow(i as u32));
    }
    let lead = qy.last().expect("nonempty").clone();
    qy.into_iter().map(|c| c / &lead).collect()
}

/// Whether `a = κ b` for some nonzero rational `κ`.
pub fn proportional(a: &[Q], b: &[Q]) -> bool {
    let a = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    if a.len() != b.len() || a.is_empty() {
        return false;
    }
    let k = a.last().unwrap() / b.last().unwrap();
    a.iter().zip(&b).all(|(x, y)| *x == y * &k)
}

/// Coefficients of `L_k^α(2x)`.
pub fn laguerre_2x(k: usize, alpha: &Q) -> Vec<Q> {
    let mut pow = q(1);
    laguerre_coeffs(k, alpha)
        .into_iter()
        .map(|c| {
            let v = c * &pow;
            pow *= q(2);
            v
        })
        .collect()
}

/// The `α` with `p ∝ L_k^α(2x)`, if any (`k = deg p ≥ 1`).
pub fn match_laguerre(p: &[Q]) -> Option<Q> {
    let p = poly_trim(p.to_vec());
    let k = p.len().checked_sub(1)?;
    if k == 0 {
        return None;
    }
    // c_{k-1}/c_k = -k(k+α)/2 for L_k^α(2x)
    let ratio = &p[k - 1] / &p[k];
    let alpha = -(ratio * q(2)) / q(k as i64) - q(k as i64);
    proportional(&p, &laguerre_2x(k, &alpha)).then_some(alpha)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanHit {
    #[serde(with = "serde_q")]
    pub mu: Q,
    #[serde(with = "serde_q")]
    pub nu: Q,
    pub degree: usize,
    #[serde(with = "serde_q")]
    pub eigenvalue: Q,
    /// `α` when the eigenfunction is `∝ L_k^α(2x)`.
    #[serde(with = "crate::fourth_order::opt_q")]
    pub laguerre_alpha: Option<Q>,
    /// Whether the Gaussian-gauge form is `∝ H_{2k}(y)`.
    pub hermite: bool,
}

pub(crate) mod opt_q {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
        v.as_ref().map(fmt_q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Q>, D::Error> {
        let v: Option<String> = Option::deserialize(d)?;
        v.map(|s| crate::rational::parse_q(&s).ok_or_else(|| serde::de::Error::custom("bad rational"))).transpose()
    }
}

/// Scans `(μ, ν)` on `{lo, lo+1/2, ..., hi}²` and classifies every polynomial
/// eigenfunction of degree `1..=maxdeg`.
pub fn parameter_scan(lo: i64, hi: i64, maxdeg: usize) -> Vec<ScanHit> {
    let grid: Vec<Q> = (2 * lo..=2 * hi).map(|n| qr(n, 2)).collect();
    let mut hits = Vec::new();
    for mu in &grid {
        for nu in &grid {
            let params = FourthOrderParams::new(mu.clone(), nu.clone());
            for f in polynomial_eigenfunctions(&params, Gauge::Exp, maxdeg) {
                let degree = f.polynomial.len() - 1;
                if degree == 0 {
                    continue;
                }
                let folded = fold_to_y(&f.polynomial);
                let hermite = proportional(&folded, &hermite_coeffs(2 * degree));
                hits.push(ScanHit {
                    mu: mu.clone(),
                    nu: nu.clone(),
                    degree,
                    eigenvalue: f.eigenvalue.clone(),
                    laguerre_alpha: match_laguerre(&f.polynomial),
                    hermite,
                });
            }
        }
    }
    hits
}

/// A parameter pair whose polynomial eigenfunctions of every degree
/// `2..=maxdeg` are Laguerre polynomials with one common `α`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanFamily {
    #[serde(with = "serde_q")]
    pub mu: Q,
    #[serde(with = "serde_q")]
    pub nu: Q,
    #[serde(with = "serde_q")]
    pub alpha: Q,
    pub hermite: bool,
}

pub fn classify_families(hits: &[ScanHit], maxdeg: usize) -> Vec<ScanFamily> {
    let mut cells: BTreeMap<(Q, Q), Vec<&ScanHit>> = BTreeMap::new();
    for h in hits {
        cells.entry((h.mu.clone(), h.nu.clone())).or_default().push(h);
    }
    let mut out = Vec::new();
    for ((mu, nu), hs) in cells {
        let mut alpha: Option<Q> = None;
        let mut hermite = true;
        let complete = (2..=maxdeg).all(|d| {
            hs.iter().filter(|h| h.degree == d).any(|h| match (&h.laguerre_alpha, &alpha) {
                (Some(a), None) => {
                    alpha = Some(a.clone());
                    hermite &= h.hermite;
                    true
                }
                (Some(a), Some(b)) if a == b => {
                    hermite &= h.hermite;
                    true
                }
                _ => false,
            })
        });
        if let (true, Some(alpha)) = (complete, alpha) {
            out.push(ScanFamily { mu, nu, alpha, hermite });
        }
    }
    out
}

/// Second-order operator `a₂θ² + a₁θ + a₀` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecondOrderOperator {
    #[serde(with = "serde_q_vec")]
    pub a2: Vec<Q>,
    #[serde(with = "serde_q_vec")]
    pub a1: Vec<Q>,
    #[serde(with = "serde_q_vec")]
    pub a0: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub found: bool,
    pub coefficient_degree: usize,
    pub operator: Option<SecondOrderOperator>,
}

impl SecondOrderOperator {
    pub fn to_theta(&self) -> ThetaOperator {
        let mut op = ThetaOperator::zero();
        let th = ThetaOperator::theta();
        let th2 = th.compose(&th);
        for (coeffs, base) in [(&self.a2, &th2), (&self.a1, &th), (&self.a0, &ThetaOperator::one())] {
            for (i, c) in coeffs.iter().enumerate() {
                op = op.add(&ThetaOperator::x_pow(i as i64).compose(base).scale(c));
            }
        }
        op
    }
}

/// Searches for `L = a₂θ² + a₁θ + a₀` with `deg a_i ≤ degree`, `a₂ ≠ 0`,
/// annihilating the gauge-form eigenfunction `p`. Only coefficients known on
/// both sides are imposed. The bound must stay below `deg p - 1`, otherwise
/// `a₂ = p, a₀ = -θ²p` is a trivial solution.
pub fn second_order_reduction_probe(p: &ThetaSeries, degree: usize) -> Result<ReductionReport> {
    if p.is_zero() {
        return Err(FourthOrderError::ZeroInput);
    }
    let p = p.refine(1)?;
    let ncols = 3 * (degree + 1);
    let known = if p.terminating { p.coeffs.len() + degree } else { p.n + 1 };
    let mut rows = vec![vec![q(0); ncols]; known];
    for (idx, c) in p.coeffs.iter().enumerate() {
        let s = p.exponent(idx);
        let sym = [&s * &s, s.clone(), q(1)];
        for (block, f) in sym.iter().enumerate() {
            for i in 0..=degree {
                if idx + i < known {
                    rows[idx + i][block * (degree + 1) + i] += f * c;
                }
            }
        }
    }
    let sols = nullspace(&rows, ncols);
    let with_a2 = sols.into_iter().find(|v| v[..=degree].iter().any(|c| !c.is_zero()));
    let operator = with_a2.map(|v| {
        let lead = v[..=degree].iter().rev().find(|c| !c.is_zero()).expect("a2 nonzero").clone();
        let v: Vec<Q> = v.into_iter().map(|c| c / &lead).collect();
        SecondOrderOperator {
            a2: poly_trim(v[..=degree].to_vec()),
            a1: poly_trim(v[degree + 1..2 * (degree + 1)].to_vec()),
            a0: poly_trim(v[2 * (degree + 1)..].to_vec()),
        }
    });
    Ok(ReductionReport { found: operator.is_some(), coefficient_degree: degree, operator })
}

/// Checks an operator annihilates a series on its known range.
pub fn annihilates(op: &ThetaOperator, u: &ThetaSeries) -> Result<bool> {
    let out = op.apply(&u.refine(1)?)?;
    Ok(out.coeffs.iter().all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(mu: i64, nu: i64) -> FourthOrderParams {
        FourthOrderParams::new(q(mu), q(nu))
    }

    #[test]
    fn constant_input_at_zero_parameters() {
        // x^{-2}(θ² - x²)(θ² - x²)·1 = x^{-2}(θ² - x²)(-x²) = -4 + x²
        let out = apply_d(&p(0, 0), &ThetaSeries::monomial(q(0), 2)).unwrap().normalized();
        assert_eq!(out.sigma, q(0));
        assert_eq!(out.coeffs, vec![q(-4), q(1)]);
    }

    #[test]
    fn leading_coefficient_is_indicial_polynomial() {
        let params = FourthOrderParams::new(qr(1, 3), qr(2, 5));
        let s = qr(7, 2);
        let out = apply_d(&params, &ThetaSeries::monomial(s.clone(), 2)).unwrap();
        let (mu, nu) = (&params.mu, &params.nu);
        let want = &s * (&s + mu) * (&s + nu) * (&s + mu + nu);
        assert_eq!(out.sigma, &s - q(2));
        assert_eq!(out.coeffs[0], want);
        // middle term: -[s(s+μ) + (s+2+ν)(s+2+μ+ν)] - const
        let mid = -(&s * (&s + mu) + (&s + q(2) + nu) * (&s + q(2) + mu + nu)) - params.constant();
        assert_eq!(out.coeffs[1], mid);
        assert_eq!(out.coeffs[2], q(1));
    }

    #[test]
    fn poles_are_rejected() {
        let err = apply_d(&p(0, 0), &ThetaSeries::monomial(q(1), 2)).unwrap_err();
        assert!(matches!(err, FourthOrderError::IndicialViolation(_)));
    }

    #[test]
    fn printed_factor_order_matters() {
        let params = p(1, 3);
        let u = ThetaSeries::polynomial(q(0), 2, vec![q(1), q(2), q(-1)]).unwrap();
        let a = params.operator().apply(&u).unwrap();
        let b = params.operator_swapped().apply(&u).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn gauge_round_trip_is_identity() {
        let op = FourthOrderParams::new(qr(3, 2), q(-1)).operator();
        assert_eq!(op.conjugate_exp(&q(-1)).conjugate_exp(&q(1)), op);
    }

    #[test]
    fn meijer_trivial_cases() {
        let b = MeijerParams::new([qr(1, 3), qr(1, 7), q(2), qr(-5, 11)]);
        let out = apply_meijer_lhs(&b, &ThetaSeries::monomial(qr(1, 3), 1)).unwrap();
        assert!(out.is_zero());
        let zero = MeijerParams::new([q(0), q(0), q(0), q(0)]);
        let r = meijer_residual(&zero, &ThetaSeries::monomial(q(0), 1)).unwrap();
        assert_eq!(r.coeffs, vec![q(0), q(-1)]);
    }

    #[test]
    fn frobenius_residual_vanishes() {
        let b = MeijerParams::new([qr(1, 3), qr(1, 7), qr(2, 5), qr(-5, 11)]);
        let u = frobenius_solution(&b, 0, 25).unwrap();
        let r = meijer_residual(&b, &u).unwrap();
        assert_eq!(r.n, 25);
        assert!(r.is_zero());
    }

    #[test]
    fn laguerre_matcher() {
        let l = laguerre_2x(4, &qr(3, 2));
        assert_eq!(match_laguerre(&l), Some(qr(3, 2)));
        assert_eq!(match_laguerre(&[q(1), q(1), q(1)]), None);
    }

    #[test]
    fn generic_parameters_have_no_polynomials() {
        let params = FourthOrderParams::new(qr(1, 3), qr(2, 7));
        let fs = polynomial_eigenfunctions(&params, Gauge::Exp, 6);
        assert!(fs.iter().all(|f| f.polynomial.len() == 1), "{fs:?}");
    }

    #[test]
    fn reduction_probe_finds_laguerre_equation() {
        let params = FourthOrderParams::new(qr(3, 2), q(-1));
        let f = polynomial_eigenfunctions(&params, Gauge::Exp, 5).pop().unwrap();
        let u = ThetaSeries::polynomial(q(0), 1, f.polynomial.clone()).unwrap();
        let rep = second_order_reduction_probe(&u, 1).unwrap();
        let op = rep.operator.unwrap();
        assert!(annihilates(&op.to_theta(), &u).unwrap());
        // θ² + (α - 2x)θ + 2kx
        assert_eq!(op.a2, vec![q(1)]);
        assert_eq!(op.a1, vec![qr(3, 2), q(-2)]);
        assert_eq!(op.a0, vec![q(0), q(10)]);
    }

    #[test]
    fn reduction_probe_rejects_generic_meijer() {
        let b = MeijerParams::new([qr(1, 3), qr(1, 7), qr(2, 5), qr(-5, 11)]);
        let u = frobenius_solution(&b, 0, 30).unwrap();
        assert!(!second_order_reduction_probe(&u, 2).unwrap().found);
        let zero = ThetaSeries::new(q(0), 1, vec![q(0); 4]).unwrap();
        assert_eq!(second_order_reduction_probe(&zero, 1), Err(FourthOrderError::ZeroInput));
    }

    #[test]
    fn json_shape() {
        let s = ThetaSeries::new(qr(1, 2), 2, vec![q(1), qr(-1, 3)]).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["sigma"], "1/2");
        assert_eq!(v["N"], 1);
        let back: ThetaSeries = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }
}
