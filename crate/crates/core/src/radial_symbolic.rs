//! Exact algebra of radial functions `Σ c_i r^{s_i} e^{-c r^a}` on a fixed
//! `O(m)` sector and of the differential operators built from the Euler
//! operator, the sector Laplacian and power multiplications.
//!
//! Operators act on finite lattice sums; since every operator here is linear
//! and maps the lattice `{r^{ℓ+ak} e^{-c r^a}}` into finite combinations of
//! lattice-shifted terms, an identity verified on enough lattice functions is
//! verified on their span. Coefficients live in ℚ(i), so the imaginary unit
//! in the sl₂ generators is carried exactly.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{fmt_q, q, qr, serde_q, GaussRat, Q};
use crate::specfun::laguerre_coeffs;
use crate::spectral::SectorModel;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymbolicError {
    #[error("multiplication by r^{power} would create exponent {exponent} below the sector order {ell}")]
    LossOfSmoothness { power: String, exponent: String, ell: u32 },
    #[error("exponential factors differ: {0} vs {1}")]
    ExpMismatch(String, String),
    #[error("operator built for m = {expected} applied to a function with m = {got}")]
    DimensionMismatch { expected: u32, got: u32 },
    #[error("test set is empty")]
    EmptyTestSet,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, SymbolicError>;

/// `exp(-c r^a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpFactor {
    #[serde(with = "serde_q")]
    pub c: Q,
    #[serde(with = "serde_q")]
    pub a: Q,
}

impl ExpFactor {
    pub fn none() -> Self {
        Self { c: q(0), a: q(1) }
    }

    fn same_as(&self, o: &ExpFactor) -> bool {
        (self.c.is_zero() && o.c.is_zero()) || self == o
    }
}

impl fmt::Display for ExpFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(-{} r^{})", fmt_q(&self.c), fmt_q(&self.a))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: GaussRat,
    #[serde(with = "serde_q")]
    pub exponent: Q,
}

/// Exact finite sum `Σ c_i r^{s_i} · exp(-c r^a)` on the sector (m, ℓ).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "RadialJson", try_from = "RadialJson")]
pub struct SymbolicRadialFunction {
    terms: BTreeMap<Q, GaussRat>,
    pub exp_factor: ExpFactor,
    pub ell: u32,
    pub m: u32,
    pub smooth_at_origin: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct RadialJson {
    terms: Vec<Term>,
    exp_factor: ExpFactor,
    ell: u32,
    m: u32,
    #[serde(default)]
    smooth_at_origin: bool,
}

impl From<SymbolicRadialFunction> for RadialJson {
    fn from(f: SymbolicRadialFunction) -> Self {
        RadialJson {
            terms: f.terms().collect(),
            exp_factor: f.exp_factor,
            ell: f.ell,
            m: f.m,
            smooth_at_origin: f.smooth_at_origin,
        }
    }
}

impl TryFrom<RadialJson> for SymbolicRadialFunction {
    type Error = SymbolicError;
    fn try_from(j: RadialJson) -> Result<Self> {
        if !j.exp_factor.a.is_positive() || j.exp_factor.c.is_negative() {
            return Err(SymbolicError::InvalidParameter("expFactor needs a > 0, c >= 0".into()));
        }
        if j.m == 0 {
            return Err(SymbolicError::InvalidParameter("m must be >= 1".into()));
        }
        let mut f = SymbolicRadialFunction::zero(j.m, j.ell, j.exp_factor);
        f.smooth_at_origin = j.smooth_at_origin;
        for t in j.terms {
            f.add_term(t.exponent, &t.coeff);
        }
        Ok(f)
    }
}

impl SymbolicRadialFunction {
    pub fn zero(m: u32, ell: u32, exp_factor: ExpFactor) -> Self {
        Self { terms: BTreeMap::new(), exp_factor, ell, m, smooth_at_origin: false }
    }

    /// `coeff · r^s · exp(-c r^a)`.
    pub fn monomial(m: u32, ell: u32, coeff: GaussRat, s: Q, exp_factor: ExpFactor) -> Self {
        let mut f = Self::zero(m, ell, exp_factor);
        f.add_term(s, &coeff);
        f
    }

    pub fn with_smooth_flag(mut self, smooth: bool) -> Self {
        self.smooth_at_origin = smooth;
        self
    }

    pub fn add_term(&mut self, s: Q, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|(s, c)| Term { coeff: c.clone(), exponent: s.clone() })
    }

    pub fn coefficient(&self, s: &Q) -> GaussRat {
        self.terms.get(s).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn like(&self) -> Self {
        let mut z = Self::zero(self.m, self.ell, self.exp_factor.clone());
        z.smooth_at_origin = self.smooth_at_origin;
        z
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if !self.exp_factor.same_as(&o.exp_factor) {
            return Err(SymbolicError::ExpMismatch(self.exp_factor.to_string(), o.exp_factor.to_string()));
        }
        let mut out = if self.exp_factor.c.is_zero() { o.like() } else { self.like() };
        out.smooth_at_origin = self.smooth_at_origin && o.smooth_at_origin;
        for (s, c) in self.terms.iter().chain(o.terms.iter()) {
            out.add_term(s.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: &GaussRat) -> Self {
        let mut out = self.like();
        for (s, c) in &self.terms {
            out.add_term(s.clone(), &(c * k));
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&GaussRat::int(-1)))
    }

    /// Numerical value at `r > 0`.
    pub fn eval(&self, r: f64) -> num_complex::Complex64 {
        let a = crate::rational::q_to_f64(&self.exp_factor.a);
        let c = crate::rational::q_to_f64(&self.exp_factor.c);
        let damp = (-c * r.powf(a)).exp();
        self.terms
            .iter()
            .map(|(s, coeff)| coeff.to_complex() * r.powf(crate::rational::q_to_f64(s)))
            .sum::<num_complex::Complex64>()
            * damp
    }

    /// True when every exponent lies on `ℓ + a·ℤ_{≥0}`, `a` taken from the
    /// exponential factor.
    pub fn on_lattice(&self) -> bool {
        let ell = q(self.ell as i64);
        self.terms.keys().all(|s| {
            let k = (s - &ell) / &self.exp_factor.a;
            k.is_integer() && !k.is_negative()
        })
    }
}

impl fmt::Display for SymbolicRadialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(s, c)| format!("({c}) r^{}", fmt_q(s))).collect();
        write!(f, "[{}]", parts.join(" + "))?;
        if !self.exp_factor.c.is_zero() {
            write!(f, " {}", self.exp_factor)?;
        }
        Ok(())
    }
}

/// Differential operator expression. `Product` composes right to left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum OperatorSpec {
    Euler,
    /// Δ restricted to the sector, angular term `-ℓ(ℓ+m-2)/r²` included.
    RadialLaplacian,
    PowerMult {
        #[serde(with = "serde_q")]
        p: Q,
    },
    Scalar {
        value: GaussRat,
    },
    Sum {
        terms: Vec<OperatorSpec>,
    },
    Product {
        factors: Vec<OperatorSpec>,
    },
    Commutator {
        left: Box<OperatorSpec>,
        right: Box<OperatorSpec>,
    },
}

impl OperatorSpec {
    pub fn scalar(v: GaussRat) -> Self {
        OperatorSpec::Scalar { value: v }
    }

    pub fn power(p: Q) -> Self {
        OperatorSpec::PowerMult { p }
    }

    pub fn sum(terms: Vec<OperatorSpec>) -> Self {
        OperatorSpec::Sum { terms }
    }

    pub fn product(factors: Vec<OperatorSpec>) -> Self {
        OperatorSpec::Product { factors }
    }

    pub fn commutator(a: OperatorSpec, b: OperatorSpec) -> Self {
        OperatorSpec::Commutator { left: Box::new(a), right: Box::new(b) }
    }

    /// `k · self`.
    pub fn scaled(self, k: GaussRat) -> Self {
        OperatorSpec::product(vec![OperatorSpec::scalar(k), self])
    }
}

fn euler_term(s: &Q, c: &GaussRat, e: &ExpFactor, out: &mut SymbolicRadialFunction) {
    out.add_term(s.clone(), &c.scale(s));
    if !e.c.is_zero() {
        out.add_term(s + &e.a, &c.scale(&-(&e.c * &e.a)));
    }
}

fn laplacian_term(s: &Q, coeff: &GaussRat, e: &ExpFactor, ell: &Q, m: &Q, out: &mut SymbolicRadialFunction) {
    let two = q(2);
    let indicial = (s - ell) * (s + ell + m - &two);
    out.add_term(s - &two, &coeff.scale(&indicial));
    if !e.c.is_zero() {
        let lin = -(&e.c * &e.a) * (&two * s + &e.a + m - &two);
        out.add_term(s + &e.a - &two, &coeff.scale(&lin));
        let quad = &e.c * &e.c * &e.a * &e.a;
        out.add_term(s + &two * &e.a - &two, &coeff.scale(&quad));
    }
}

/// Applies `op` to `f` exactly.
pub fn apply(op: &OperatorSpec, f: &SymbolicRadialFunction) -> Result<SymbolicRadialFunction> {
    match op {
        OperatorSpec::Euler => {
            let mut out = f.like();
            for (s, c) in &f.terms {
                euler_term(s, c, &f.exp_factor, &mut out);
            }
            Ok(out)
        }
        OperatorSpec::RadialLaplacian => {
            let mut out = f.like();
            let ell = q(f.ell as i64);
            let m = q(f.m as i64);
            for (s, c) in &f.terms {
                laplacian_term(s, c, &f.exp_factor, &ell, &m, &mut out);
            }
            Ok(out)
        }
        OperatorSpec::PowerMult { p } => {
            let mut out = f.like();
            for (s, c) in &f.terms {
                let e = s + p;
                if p.is_negative() && f.smooth_at_origin && e < q(f.ell as i64) {
                    return Err(SymbolicError::LossOfSmoothness { power: fmt_q(p), exponent: fmt_q(&e), ell: f.ell });
                }
                out.add_term(e, c);
            }
            Ok(out)
        }
        OperatorSpec::Scalar { value } => Ok(f.scale(value)),
        OperatorSpec::Sum { terms } => {
            let mut acc = f.like();
            for t in terms {
                acc = acc.add(&apply(t, f)?)?;
            }
            Ok(acc)
        }
        OperatorSpec::Product { factors } => {
            let mut cur = f.clone();
            for op in factors.iter().rev() {
                cur = apply(op, &cur)?;
            }
            Ok(cur)
        }
        OperatorSpec::Commutator { left, right } => {
            let lr = apply(left, &apply(right, f)?)?;
            let rl = apply(right, &apply(left, f)?)?;
            lr.sub(&rl)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum TripleLabel {
    /// `(E + m/2, (i/2)r², (i/2)Δ)`.
    Weil,
    /// `(2E + m - 1, 2i r, (i/2) rΔ)`.
    SoM12,
    Deformed {
        #[serde(with = "serde_q")]
        a: Q,
    },
    Custom {
        name: String,
    },
}

/// Three operators claimed to satisfy the sl₂ relations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sl2Triple {
    pub label: TripleLabel,
    pub m: u32,
    pub h: OperatorSpec,
    pub e: OperatorSpec,
    pub f: OperatorSpec,
}

fn i_times(k: Q) -> GaussRat {
    GaussRat::new(q(0), k)
}

impl Sl2Triple {
    /// `h̃_a = (2/a)E + (m+a-2)/a`, `ẽ_a = (i/a) r^a`, `f̃_a = (i/a) r^{2-a}Δ`.
    pub fn deformed(a: Q, m: u32) -> Result<Self> {
        if !a.is_positive() {
            return Err(SymbolicError::InvalidParameter(format!("deformation parameter must be positive, got {}", fmt_q(&a))));
        }
        let mq = q(m as i64);
        let h = OperatorSpec::sum(vec![
            OperatorSpec::Euler.scaled(GaussRat::real(q(2) / &a)),
            OperatorSpec::scalar(GaussRat::real((&mq + &a - q(2)) / &a)),
        ]);
        let e = OperatorSpec::power(a.clone()).scaled(i_times(a.recip()));
        let f = OperatorSpec::product(vec![
            OperatorSpec::scalar(i_times(a.recip())),
            OperatorSpec::power(q(2) - &a),
            OperatorSpec::RadialLaplacian,
        ]);
        Ok(Self { label: TripleLabel::Deformed { a }, m, h, e, f })
    }

    pub fn weil(m: u32) -> Self {
        let h = OperatorSpec::sum(vec![OperatorSpec::Euler, OperatorSpec::scalar(GaussRat::real(qr(m as i64, 2)))]);
        let e = OperatorSpec::power(q(2)).scaled(i_times(qr(1, 2)));
        let f = OperatorSpec::RadialLaplacian.scaled(i_times(qr(1, 2)));
        Self { label: TripleLabel::Weil, m, h, e, f }
    }

    pub fn so_m12(m: u32) -> Self {
        let h = OperatorSpec::sum(vec![
            OperatorSpec::Euler.scaled(GaussRat::int(2)),
            OperatorSpec::scalar(GaussRat::int(m as i64 - 1)),
        ]);
        let e = OperatorSpec::power(q(1)).scaled(i_times(q(2)));
        let f = OperatorSpec::product(vec![
            OperatorSpec::scalar(i_times(qr(1, 2))),
            OperatorSpec::power(q(1)),
            OperatorSpec::RadialLaplacian,
        ]);
        Self { label: TripleLabel::SoM12, m, h, e, f }
    }

    /// `(h, αe, α^{-1}f)`, again an sl₂-triple for α ≠ 0.
    pub fn rescaled(&self, alpha: &Q) -> Result<Self> {
        if alpha.is_zero() {
            return Err(SymbolicError::InvalidParameter("rescaling factor must be nonzero".into()));
        }
        Ok(Self {
            label: TripleLabel::Custom { name: format!("rescaled({})", fmt_q(alpha)) },
            m: self.m,
            h: self.h.clone(),
            e: self.e.clone().scaled(GaussRat::real(alpha.clone())),
            f: self.f.clone().scaled(GaussRat::real(alpha.recip())),
        })
    }

    /// Same triple with `delta` added to `h` (negative control).
    pub fn with_h_shift(&self, delta: Q) -> Self {
        Self {
            label: TripleLabel::Custom { name: format!("h shifted by {}", fmt_q(&delta)) },
            m: self.m,
            h: OperatorSpec::sum(vec![self.h.clone(), OperatorSpec::scalar(GaussRat::real(delta))]),
            e: self.e.clone(),
            f: self.f.clone(),
        }
    }

    /// `D = (1/(2i))(-e + f)`.
    pub fn d_operator(&self) -> OperatorSpec {
        let half_over_i = i_times(qr(-1, 2));
        OperatorSpec::sum(vec![self.e.clone().scaled(GaussRat::int(-1)), self.f.clone()]).scaled(half_over_i)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub relation: String,
    pub test_index: usize,
    pub residual: SymbolicRadialFunction,
    pub zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutatorReport {
    pub label: TripleLabel,
    pub m: u32,
    pub tests: usize,
    pub residuals: Vec<Residual>,
    pub pass: bool,
}

/// Residuals of `[h,e]-2e`, `[h,f]+2f`, `[e,f]-h` on each test function.
pub fn commutator_check(triple: &Sl2Triple, tests: &[SymbolicRadialFunction]) -> Result<CommutatorReport> {
    if tests.is_empty() {
        return Err(SymbolicError::EmptyTestSet);
    }
    let rel = |l: &OperatorSpec, r: &OperatorSpec, rhs: &OperatorSpec, k: i64| {
        OperatorSpec::sum(vec![OperatorSpec::commutator(l.clone(), r.clone()), rhs.clone().scaled(GaussRat::int(k))])
    };
    let relations = [
        ("[h,e]-2e", rel(&triple.h, &triple.e, &triple.e, -2)),
        ("[h,f]+2f", rel(&triple.h, &triple.f, &triple.f, 2)),
        ("[e,f]-h", rel(&triple.e, &triple.f, &triple.h, -1)),
    ];
    let mut residuals = Vec::new();
    for (i, t) in tests.iter().enumerate() {
        if t.m != triple.m {
            return Err(SymbolicError::DimensionMismatch { expected: triple.m, got: t.m });
        }
        for (name, op) in &relations {
            let r = apply(op, t)?;
            residuals.push(Residual { relation: name.to_string(), test_index: i, zero: r.is_zero(), residual: r });
        }
    }
    let pass = residuals.iter().all(|r| r.zero);
    Ok(CommutatorReport { label: triple.label.clone(), m: triple.m, tests: tests.len(), residuals, pass })
}

/// Exact operator equality of two triples on a test set.
pub fn triples_agree(x: &Sl2Triple, y: &Sl2Triple, tests: &[SymbolicRadialFunction]) -> Result<bool> {
    for t in tests {
        for (a, b) in [(&x.h, &y.h), (&x.e, &y.e), (&x.f, &y.f)] {
            if !apply(a, t)?.sub(&apply(b, t)?)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `r^{2k} e^{-r²/2}`, k = 0..=kmax, on the ℓ = 0 sector.
pub fn gaussian_test_set(m: u32, kmax: u32) -> Vec<SymbolicRadialFunction> {
    let e = ExpFactor { c: qr(1, 2), a: q(2) };
    (0..=kmax)
        .map(|k| SymbolicRadialFunction::monomial(m, 0, GaussRat::one(), q(2 * k as i64), e.clone()).with_smooth_flag(true))
        .collect()
}

/// `r^{ℓ+ak} e^{-c r^a}`, k = 0..=kmax.
pub fn lattice_test_set(a: &Q, m: u32, ell: u32, c: &Q, kmax: u32) -> Vec<SymbolicRadialFunction> {
    let e = ExpFactor { c: c.clone(), a: a.clone() };
    (0..=kmax)
        .map(|k| {
            let s = q(ell as i64) + a * q(k as i64);
            SymbolicRadialFunction::monomial(m, ell, GaussRat::one(), s, e.clone()).with_smooth_flag(true)
        })
        .collect()
}

/// `D_a = (1/(2a))(r^{2-a}Δ_ℓ - r^a)`.
pub fn d_a_operator(a: &Q) -> OperatorSpec {
    OperatorSpec::sum(vec![
        OperatorSpec::product(vec![OperatorSpec::power(q(2) - a), OperatorSpec::RadialLaplacian]),
        OperatorSpec::power(a.clone()).scaled(GaussRat::int(-1)),
    ])
    .scaled(GaussRat::real((q(2) * a).recip()))
}

/// `g_k(r) = r^ℓ L_k^ν((2/a) r^a) e^{-r^a/a}` as an exact radial function.
pub fn sector_eigenfunction(sector: &SectorModel, k: usize) -> SymbolicRadialFunction {
    let a = sector.a();
    let nu = sector.nu_exact();
    let coeffs = laguerre_coeffs(k, &nu);
    let e = ExpFactor { c: a.recip(), a: a.clone() };
    let mut f = SymbolicRadialFunction::zero(sector.m(), sector.ell(), e);
    f.smooth_at_origin = true;
    let scale = q(2) / a;
    let mut pow = q(1);
    for (j, c) in coeffs.iter().enumerate() {
        let s = q(sector.ell() as i64) + a * q(j as i64);
        f.add_term(s, &GaussRat::real(c * &pow));
        pow = &pow * &scale;
    }
    f
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenCheck {
    #[serde(with = "serde_q")]
    pub eigenvalue: Q,
    pub residual: SymbolicRadialFunction,
    pub zero: bool,
}

/// Claimed eigenvalue `-(k + (ν+1)/2)` of `D_a` on `g_k` and the exact residual.
pub fn eigencheck_da(sector: &SectorModel, k: usize) -> Result<EigenCheck> {
    let g = sector_eigenfunction(sector, k);
    let lambda = -(q(k as i64) + (sector.nu_exact() + q(1)) / q(2));
    let dg = apply(&d_a_operator(sector.a()), &g)?;
    let residual = dg.sub(&g.scale(&GaussRat::real(lambda.clone())))?;
    Ok(EigenCheck { eigenvalue: lambda, zero: residual.is_zero(), residual })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeReport {
    /// Coefficient of `r^{ℓ-a}` in `r^{2-a}Δ_ℓ` applied to `r^ℓ e^{-c r^a}`.
    #[serde(with = "serde_q")]
    pub indicial_coefficient: Q,
    pub invariant: bool,
    pub checked: usize,
}

/// Checks that `r^{2-a}Δ_ℓ` maps `{r^{ℓ+ak} e^{-c r^a}}_{k ≤ kmax}` into the
/// lattice span.
pub fn lattice_invariance(a: &Q, m: u32, ell: u32, c: &Q, kmax: u32) -> Result<LatticeReport> {
    let op = OperatorSpec::product(vec![OperatorSpec::power(q(2) - a), OperatorSpec::RadialLaplacian]);
    let tests = lattice_test_set(a, m, ell, c, kmax);
    let mut invariant = true;
    let mut indicial = q(0);
    for (k, t) in tests.iter().enumerate() {
        let out = apply(&op, t)?;
        if k == 0 {
            let c = out.coefficient(&(q(ell as i64) - a));
            indicial = c.re.clone();
            invariant &= c.is_zero();
        }
        invariant &= out.on_lattice();
    }
    Ok(LatticeReport { indicial_coefficient: indicial, invariant, checked: tests.len() })
}

/// 2×2 matrix over ℚ(i).
pub type Mat2 = [[GaussRat; 2]; 2];

fn m2(a: [[GaussRat; 2]; 2]) -> Mat2 {
    a
}

pub fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn mat_sub(x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &x[i][j] - &y[i][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn mat_scale(x: &Mat2, k: &GaussRat) -> Mat2 {
    let e = |i: usize, j: usize| &x[i][j] * k;
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn bracket(x: &Mat2, y: &Mat2) -> Mat2 {
    mat_sub(&mat_mul(x, y), &mat_mul(y, x))
}

fn identity() -> Mat2 {
    [[GaussRat::one(), GaussRat::zero()], [GaussRat::zero(), GaussRat::one()]]
}

/// Inverse of a 2×2 matrix; `None` if singular.
pub fn mat_inv(x: &Mat2) -> Option<Mat2> {
    let det = &(&x[0][0] * &x[1][1]) - &(&x[0][1] * &x[1][0]);
    let d = det.inv()?;
    Some([
        [&x[1][1] * &d, &(-&x[0][1]) * &d],
        [&(-&x[1][0]) * &d, &x[0][0] * &d],
    ])
}

fn gr(re: Q, im: Q) -> GaussRat {
    GaussRat::new(re, im)
}

/// Standard basis of sl(2,ℝ), `k = i(-e+f)` and the Cayley element `c₁`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sl2Basis {
    pub h: Mat2,
    pub e: Mat2,
    pub f: Mat2,
    pub k: Mat2,
    pub c1: Mat2,
}

impl Sl2Basis {
    pub fn standard() -> Self {
        let z = GaussRat::zero;
        let one = GaussRat::one;
        let h = m2([[one(), z()], [z(), GaussRat::int(-1)]]);
        let e = m2([[z(), one()], [z(), z()]]);
        let f = m2([[z(), z()], [one(), z()]]);
        let k = mat_scale(&mat_sub(&f, &e), &GaussRat::i());
        let c1 = m2([[one(), gr(q(0), q(-1))], [gr(q(0), qr(-1, 2)), GaussRat::real(qr(1, 2))]]);
        Self { h, e, f, k, c1 }
    }

    /// Four factors whose product is `c₁`.
    pub fn cayley_factors() -> [Mat2; 4] {
        let z = GaussRat::zero;
        let one = GaussRat::one;
        [
            m2([[gr(q(0), q(2)), z()], [z(), gr(q(0), q(2)).inv().expect("nonzero")]]),
            m2([[one(), gr(q(0), qr(-1, 2))], [z(), one()]]),
            m2([[z(), GaussRat::int(-1)], [one(), z()]]),
            m2([[one(), GaussRat::i()], [z(), one()]]),
        ]
    }
}

/// `exp(-(iπ n/2) k)`, exact: `k² = 1` gives `cos(nπ/2)·1 - i sin(nπ/2)·k`.
pub fn exp_k_quarter_turns(k: &Mat2, n: i64) -> Mat2 {
    let (c, s) = match n.rem_euclid(4) {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    };
    let a = mat_scale(&identity(), &GaussRat::int(c));
    let b = mat_scale(k, &gr(q(0), q(-s)));
    [[&a[0][0] + &b[0][0], &a[0][1] + &b[0][1]], [&a[1][0] + &b[1][0], &a[1][1] + &b[1][1]]]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixReport {
    pub checks: Vec<MatrixCheck>,
    pub pass: bool,
}

fn show(x: &Mat2) -> String {
    format!("[[{}, {}], [{}, {}]]", x[0][0], x[0][1], x[1][0], x[1][1])
}

pub fn matrix_sl2_checks(basis: &Sl2Basis) -> MatrixReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, got: Mat2, want: Mat2| {
        checks.push(MatrixCheck { name: name.into(), pass: got == want, detail: format!("got {}, want {}", show(&got), show(&want)) });
    };
    let b = basis;
    push("[h,e]=2e", bracket(&b.h, &b.e), mat_scale(&b.e, &GaussRat::int(2)));
    push("[h,f]=-2f", bracket(&b.h, &b.f), mat_scale(&b.f, &GaussRat::int(-2)));
    push("[e,f]=h", bracket(&b.e, &b.f), b.h.clone());
    push("k=i(-e+f)", b.k.clone(), mat_scale(&mat_sub(&b.f, &b.e), &GaussRat::i()));
    match mat_inv(&b.c1) {
        Some(inv) => push("Ad(c1)k=h", mat_mul(&mat_mul(&b.c1, &b.k), &inv), b.h.clone()),
        None => push("Ad(c1)k=h", identity(), mat_scale(&identity(), &GaussRat::zero())),
    }
    let w = m2([[GaussRat::zero(), GaussRat::int(-1)], [GaussRat::one(), GaussRat::zero()]]);
    push("exp(-(i pi/2)k)=w", exp_k_quarter_turns(&b.k, 1), w);
    let prod = Sl2Basis::cayley_factors().iter().fold(identity(), |acc, x| mat_mul(&acc, x));
    push("c1 factorization", prod, b.c1.clone());
    let pass = checks.iter().all(|c| c.pass);
    MatrixReport { checks, pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(m: u32, ell: u32, s: i64) -> SymbolicRadialFunction {
        SymbolicRadialFunction::monomial(m, ell, GaussRat::one(), q(s), ExpFactor::none())
    }

    #[test]
    fn operator_examples() {
        let e = apply(&OperatorSpec::Euler, &plain(3, 0, 3)).unwrap();
        assert_eq!(e, plain(3, 0, 3).scale(&GaussRat::int(3)));
        let l = apply(&OperatorSpec::RadialLaplacian, &plain(3, 0, 2)).unwrap();
        assert_eq!(l, plain(3, 0, 0).scale(&GaussRat::int(6)));
        let h = apply(&OperatorSpec::RadialLaplacian, &plain(3, 1, 1)).unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn smoothness_guard() {
        let f = plain(3, 1, 1).with_smooth_flag(true);
        let err = apply(&OperatorSpec::power(q(-1)), &f).unwrap_err();
        assert!(matches!(err, SymbolicError::LossOfSmoothness { .. }));
        assert!(apply(&OperatorSpec::power(q(-1)), &plain(3, 1, 1)).is_ok());
    }

    #[test]
    fn weil_triple_passes() {
        let rep = commutator_check(&Sl2Triple::weil(3), &gaussian_test_set(3, 6)).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.residuals.len(), 21);
    }

    #[test]
    fn shifted_h_fails() {
        let bad = Sl2Triple::weil(3).with_h_shift(q(1));
        let rep = commutator_check(&bad, &gaussian_test_set(3, 2)).unwrap();
        assert!(!rep.pass);
        assert!(rep.residuals.iter().any(|r| r.relation == "[e,f]-h" && !r.zero));
    }

    #[test]
    fn deformed_a1_is_rescaled_so_m12() {
        for m in 1..=4 {
            let tests = lattice_test_set(&q(1), m, 0, &q(1), 5);
            let d1 = Sl2Triple::deformed(q(1), m).unwrap();
            let so = Sl2Triple::so_m12(m);
            assert!(commutator_check(&so, &tests).unwrap().pass);
            assert!(commutator_check(&d1, &tests).unwrap().pass);
            assert!(!triples_agree(&d1, &so, &tests).unwrap());
            assert!(triples_agree(&d1.rescaled(&q(2)).unwrap(), &so, &tests).unwrap());
            let d2 = Sl2Triple::deformed(q(2), m).unwrap();
            assert!(triples_agree(&d2, &Sl2Triple::weil(m), &tests).unwrap());
        }
    }

    #[test]
    fn eigen_examples() {
        let s = SectorModel::new(q(2), 2, 0).unwrap();
        let r = eigencheck_da(&s, 0).unwrap();
        assert_eq!(r.eigenvalue, qr(-1, 2));
        assert!(r.zero);
        let s = SectorModel::new(q(1), 3, 0).unwrap();
        let r = eigencheck_da(&s, 1).unwrap();
        assert_eq!(r.eigenvalue, q(-2));
        assert!(r.zero);
        let s = SectorModel::new(q(3), 4, 2).unwrap();
        let r = eigencheck_da(&s, 2).unwrap();
        assert_eq!(r.eigenvalue, q(-2) - qr(3, 2));
        assert!(r.zero);
    }

    #[test]
    fn wrong_eigenvalue_leaves_residual() {
        let s = SectorModel::new(q(1), 3, 1).unwrap();
        let g = sector_eigenfunction(&s, 2);
        let dg = apply(&d_a_operator(s.a()), &g).unwrap();
        let res = dg.sub(&g.scale(&GaussRat::real(q(-3)))).unwrap();
        assert!(!res.is_zero());
    }

    #[test]
    fn matrix_checks() {
        let rep = matrix_sl2_checks(&Sl2Basis::standard());
        assert!(rep.pass, "{rep:?}");
        let mut b = Sl2Basis::standard();
        b.c1[0][0] = &b.c1[0][0] + &GaussRat::one();
        let rep = matrix_sl2_checks(&b);
        assert!(!rep.pass);
        assert!(rep.checks.iter().any(|c| c.name == "Ad(c1)k=h" && !c.pass));
    }

    #[test]
    fn json_round_trip() {
        let s = SectorModel::new(qr(1, 2), 3, 1).unwrap();
        let g = sector_eigenfunction(&s, 3);
        let js = serde_json::to_string(&g).unwrap();
        assert!(js.contains("\"expFactor\""));
        let back: SymbolicRadialFunction = serde_json::from_str(&js).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn lattice_indicial_coefficient_vanishes() {
        let rep = lattice_invariance(&qr(1, 2), 3, 2, &q(2), 6).unwrap();
        assert!(rep.invariant);
        assert!(rep.indicial_coefficient.is_zero());
    }
}
