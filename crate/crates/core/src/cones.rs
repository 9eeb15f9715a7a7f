//! Exact polyhedral cones over ℚ, the trivial-intersection test used for
//! discrete decomposability, and dimensions of spaces of harmonic polynomials.
//!
//! Every verdict carries a certificate that [`Certificate::verify`] checks with
//! exact arithmetic, independently of the simplex run that produced it.

use std::collections::HashMap;
use std::path::Path;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{fmt_q, parse_q, q, rank, serde_q_vec, Q};

#[derive(Debug, Error)]
pub enum ConeError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("generator {0} has length {1}, expected {2}")]
    BadGenerator(usize, usize, usize),
    #[error("zero generator at index {0}")]
    ZeroGenerator(usize),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid cone file: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, ConeError>;

/// `{Σ λ_i g_i : λ_i ≥ 0}`; no generators means the zero cone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalCone {
    pub dim: usize,
    #[serde(with = "serde_rows")]
    pub generators: Vec<Vec<Q>>,
}

/// Rays of an asymptotic support; a single ray for minimal representations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticSupport {
    #[serde(with = "serde_rows")]
    pub rays: Vec<Vec<Q>>,
}

mod serde_rows {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Row(#[serde(with = "serde_q_vec")] Vec<Q>);

    pub fn serialize<S: Serializer>(v: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Row> = v.iter().map(|r| Row(r.clone())).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Q>>, D::Error> {
        Ok(Vec::<Row>::deserialize(d)?.into_iter().map(|r| r.0).collect())
    }
}

impl RationalCone {
    pub fn new(dim: usize, generators: Vec<Vec<Q>>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.len() != dim {
                return Err(ConeError::BadGenerator(i, g.len(), dim));
            }
            if g.iter().all(Zero::is_zero) {
                return Err(ConeError::ZeroGenerator(i));
            }
        }
        Ok(Self { dim, generators })
    }

    /// Cone from integer generators.
    pub fn from_ints(gens: &[&[i64]]) -> Result<Self> {
        let dim = gens.first().map_or(0, |g| g.len());
        Self::new(dim, gens.iter().map(|g| g.iter().map(|&x| q(x)).collect()).collect())
    }

    pub fn ray(v: Vec<Q>) -> Result<Self> {
        Self::new(v.len(), vec![v])
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: RationalCone = serde_json::from_str(s)?;
        Self::new(c.dim, c.generators)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)
            .map_err(|source| ConeError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&s)
    }

    /// Whether `x = Σ λ_i g_i` with the given coefficients.
    pub fn contains_with(&self, x: &[Q], lambda: &[Q]) -> bool {
        if lambda.len() != self.generators.len() || x.len() != self.dim || lambda.iter().any(Signed::is_negative) {
            return false;
        }
        (0..self.dim).all(|i| {
            let s: Q = self.generators.iter().zip(lambda).map(|(g, l)| &g[i] * l).sum();
            s == x[i]
        })
    }
}

impl AsymptoticSupport {
    pub fn new(rays: Vec<Vec<Q>>) -> Result<Self> {
        let dim = rays.first().map_or(0, Vec::len);
        RationalCone::new(dim, rays.clone())?;
        Ok(Self { rays })
    }

    /// `ℝ₊β`.
    pub fn ray(beta: Vec<Q>) -> Result<Self> {
        Self::new(vec![beta])
    }

    pub fn cone(&self) -> RationalCone {
        let dim = self.rays.first().map_or(0, Vec::len);
        RationalCone { dim, generators: self.rays.clone() }
    }
}

/// Parses `"1,0,-1/2"`.
pub fn parse_vector(s: &str) -> Result<Vec<Q>> {
    s.split(',')
        .map(|t| parse_q(t.trim()).ok_or_else(|| ConeError::Parse(t.trim().to_string())))
        .collect()
}

/// Infeasibility proof for `A z = b, z ≥ 0`: `yᵀA ≥ 0` and `yᵀb < 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FarkasProof {
    /// Coordinate and sign of the normalisation `s·x_i = 1` being refuted.
    pub coordinate: usize,
    pub sign: i8,
    #[serde(with = "serde_q_vec")]
    pub y: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Certificate {
    /// Nonzero `x` with `x = Σ λ g` (first cone) and `x = Σ μ h` (second).
    Witness {
        #[serde(with = "serde_q_vec")]
        point: Vec<Q>,
        #[serde(with = "serde_q_vec")]
        lambda: Vec<Q>,
        #[serde(with = "serde_q_vec")]
        mu: Vec<Q>,
    },
    /// `y` with `y·g ≥ 1` on the first cone's generators and `y·h ≤ -1` on
    /// the second's.
    Separating {
        #[serde(with = "serde_q_vec")]
        functional: Vec<Q>,
    },
    /// One refutation per normalisation `±x_i = 1`; used when no strictly
    /// separating functional exists (cones containing lines).
    Farkas { proofs: Vec<FarkasProof> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntersectionVerdict {
    pub trivial: bool,
    pub certificate: Certificate,
}

impl IntersectionVerdict {
    /// Witness point, if the intersection is nontrivial.
    pub fn witness(&self) -> Option<&[Q]> {
        match &self.certificate {
            Certificate::Witness { point, .. } => Some(point),
            _ => None,
        }
    }
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Constraint system `[G | -H] (λ, μ) = 0`, `s·(Gλ)_i = 1`.
fn normalised_system(c1: &RationalCone, c2: &RationalCone, coord: usize, sign: i8) -> (Vec<Vec<Q>>, Vec<Q>) {
    let n = c1.dim;
    let p = c1.generators.len();
    let qn = c2.generators.len();
    let mut a = vec![vec![q(0); p + qn]; n + 1];
    for i in 0..n {
        for (j, g) in c1.generators.iter().enumerate() {
            a[i][j] = g[i].clone();
        }
        for (j, h) in c2.generators.iter().enumerate() {
            a[i][p + j] = -h[i].clone();
        }
    }
    for (j, g) in c1.generators.iter().enumerate() {
        a[n][j] = &g[coord] * q(sign as i64);
    }
    let mut b = vec![q(0); n + 1];
    b[n] = q(1);
    (a, b)
}

impl Certificate {
    /// Exact check of the certificate against the claimed verdict.
    pub fn verify(&self, c1: &RationalCone, c2: &RationalCone, trivial: bool) -> bool {
        if c1.dim != c2.dim {
            return false;
        }
        match self {
            Certificate::Witness { point, lambda, mu } => {
                !trivial
                    && point.iter().any(|x| !x.is_zero())
                    && c1.contains_with(point, lambda)
                    && c2.contains_with(point, mu)
            }
            Certificate::Separating { functional } => {
                trivial
                    && functional.len() == c1.dim
                    && c1.generators.iter().all(|g| dot(functional, g) >= q(1))
                    && c2.generators.iter().all(|h| dot(functional, h) <= q(-1))
            }
            Certificate::Farkas { proofs } => {
                if !trivial {
                    return false;
                }
                let mut covered = vec![[false; 2]; c1.dim];
                for pr in proofs {
                    if pr.coordinate >= c1.dim || !(pr.sign == 1 || pr.sign == -1) {
                        return false;
                    }
                    let (a, b) = normalised_system(c1, c2, pr.coordinate, pr.sign);
                    if pr.y.len() != a.len() {
                        return false;
                    }
                    let cols = a[0].len();
                    let ok_cols = (0..cols).all(|j| a.iter().zip(&pr.y).map(|(row, y)| &row[j] * y).sum::<Q>() >= q(0));
                    if !ok_cols || dot(&pr.y, &b) >= q(0) {
                        return false;
                    }
                    covered[pr.coordinate][usize::from(pr.sign < 0)] = true;
                }
                covered.iter().all(|c| c[0] && c[1])
            }
        }
    }
}

/// Outcome of a phase-one simplex run on `A z = b, z ≥ 0`.
enum Feasibility {
    Point(Vec<Q>),
    Infeasible(Vec<Q>),
}

/// Exact phase-one simplex with Bland's rule.
fn feasible(a: &[Vec<Q>], b: &[Q]) -> Feasibility {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    // tableau columns: original, artificial, rhs
    let width = cols + rows + 1;
    let mut t = vec![vec![q(0); width]; rows];
    let mut flip = vec![false; rows];
    for i in 0..rows {
        flip[i] = b[i].is_negative();
        let s = if flip[i] { q(-1) } else { q(1) };
        for j in 0..cols {
            t[i][j] = &a[i][j] * &s;
        }
        t[i][cols + i] = q(1);
        t[i][width - 1] = &b[i] * &s;
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    // cost row: minimise the sum of artificials, reduced costs r_j = c_j - c_Bᵀ B⁻¹ A_j
    let reduced = |t: &Vec<Vec<Q>>, basis: &Vec<usize>| -> Vec<Q> {
        let mut r = vec![q(0); width];
        for j in cols..cols + rows {
            r[j] = q(1);
        }
        for (i, &bi) in basis.iter().enumerate() {
            if bi >= cols {
                for j in 0..width {
                    r[j] -= &t[i][j];
                }
            }
        }
        r
    };
    loop {
        let r = reduced(&t, &basis);
        let Some(enter) = (0..cols + rows).find(|&j| r[j].is_negative()) else {
            let objective = -r[width - 1].clone();
            if objective.is_zero() {
                let mut z = vec![q(0); cols];
                for (i, &bi) in basis.iter().enumerate() {
                    if bi < cols {
                        z[bi] = t[i][width - 1].clone();
                    }
                }
                return Feasibility::Point(z);
            }
            // dual of phase one: y_i = 1 - r_{art_i}; Farkas vector is -y
            let y = (0..rows)
                .map(|i| {
                    let yi = q(1) - &r[cols + i];
                    let yi = if flip[i] { -yi } else { yi };
                    -yi
                })
                .collect();
            return Feasibility::Infeasible(y);
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (pi, _) = leave.expect("phase one is bounded below by zero");
        let pv = t[pi][enter].clone();
        for v in t[pi].iter_mut() {
            *v /= &pv;
        }
        let prow = t[pi].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != pi && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        basis[pi] = enter;
    }
}

fn primitive(v: &[Q]) -> Q {
    // factor that turns v into a primitive integer vector
    let mut den = num_bigint::BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let mut g = num_bigint::BigInt::zero();
    for x in v {
        let n = x.numer() * (&den / x.denom());
        g = g.gcd(&n);
    }
    if g.is_zero() {
        return q(1);
    }
    Q::new(den, g)
}

fn normalise_witness(c1: &RationalCone, c2: &RationalCone, point: Vec<Q>, lambda: Vec<Q>, mu: Vec<Q>) -> Certificate {
    let factor = if c2.generators.len() == 1 && !mu[0].is_zero() {
        q(1) / &mu[0]
    } else if c1.generators.len() == 1 && !lambda[0].is_zero() {
        q(1) / &lambda[0]
    } else {
        primitive(&point)
    };
    let sc = |v: Vec<Q>| v.into_iter().map(|x| x * &factor).collect();
    Certificate::Witness { point: sc(point), lambda: sc(lambda), mu: sc(mu) }
}

/// Decides `c1 ∩ c2 = {0}` exactly.
pub fn intersect_trivially(c1: &RationalCone, c2: &RationalCone) -> Result<IntersectionVerdict> {
    if c1.dim != c2.dim {
        return Err(ConeError::DimensionMismatch(c1.dim, c2.dim));
    }
    let n = c1.dim;
    let p = c1.generators.len();
    let mut proofs = Vec::new();
    for coord in 0..n {
        for sign in [1i8, -1] {
            let (a, b) = normalised_system(c1, c2, coord, sign);
            match feasible(&a, &b) {
                Feasibility::Point(z) => {
                    let lambda = z[..p].to_vec();
                    let mu = z[p..].to_vec();
                    let point = (0..n)
                        .map(|i| c1.generators.iter().zip(&lambda).map(|(g, l)| &g[i] * l).sum())
                        .collect();
                    let certificate = normalise_witness(c1, c2, point, lambda, mu);
                    return Ok(IntersectionVerdict { trivial: false, certificate });
                }
                Feasibility::Infeasible(y) => proofs.push(FarkasProof { coordinate: coord, sign, y }),
            }
        }
    }
    let certificate = separating_functional(c1, c2).unwrap_or(Certificate::Farkas { proofs });
    Ok(IntersectionVerdict { trivial: true, certificate })
}

/// `y = y⁺ - y⁻` with `y·g - s = 1`, `-y·h - s' = 1`.
fn separating_functional(c1: &RationalCone, c2: &RationalCone) -> Option<Certificate> {
    let n = c1.dim;
    let gens: Vec<(&Vec<Q>, Q)> = c1
        .generators
        .iter()
        .map(|g| (g, q(1)))
        .chain(c2.generators.iter().map(|h| (h, q(-1))))
        .collect();
    let rows = gens.len();
    let cols = 2 * n + rows;
    let mut a = vec![vec![q(0); cols]; rows];
    for (i, (g, s)) in gens.iter().enumerate() {
        for k in 0..n {
            a[i][k] = &g[k] * s;
            a[i][n + k] = -(&g[k] * s);
        }
        a[i][2 * n + i] = q(-1);
    }
    match feasible(&a, &vec![q(1); rows]) {
        Feasibility::Point(z) => Some(Certificate::Separating { functional: (0..n).map(|k| &z[k] - &z[n + k]).collect() }),
        Feasibility::Infeasible(_) => None,
    }
}

/// Applies the criterion `C_K(K') ∩ AS_K(π) = {0}`.
pub fn discretely_decomposable(image: &RationalCone, support: &AsymptoticSupport) -> Result<IntersectionVerdict> {
    intersect_trivially(image, &support.cone())
}

fn binom(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

/// `dim H^j(ℝ^m)`.
pub fn harmonic_dim(m: u32, j: u32) -> u64 {
    let (m, j) = (m as i64, j as i64);
    binom(j + m - 1, m - 1) - binom(j + m - 3, m - 1)
}

/// Exponent vectors of degree-`j` monomials in `m` variables.
fn monomials(m: usize, j: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if j == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=j).rev() {
        for mut rest in monomials(m - 1, j - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

const RANK_PRIME: u64 = 2_305_843_009_213_693_951;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % RANK_PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = powmod(rows[r][c], RANK_PRIME - 2);
        let prow: Vec<u64> = rows[r].iter().map(|&x| mulmod(x, inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x = (*x + RANK_PRIME - mulmod(f, *p)) % RANK_PRIME;
                }
            }
        }
        rows[r] = prow;
        r += 1;
    }
    r
}

/// `dim ker(Δ)` on degree-`j` polynomials, by exact linear algebra.
pub fn harmonic_dim_brute_force(m: u32, j: u32) -> u64 {
    let (m, j) = (m as usize, j as usize);
    let src = monomials(m, j);
    if j < 2 {
        return src.len() as u64;
    }
    let dst = monomials(m, j - 2);
    let index: HashMap<&Vec<usize>, usize> = dst.iter().enumerate().map(|(i, e)| (e, i)).collect();
    // matrix of Δ: rows indexed by target monomials
    let mut mat = vec![vec![0u64; src.len()]; dst.len()];
    for (col, e) in src.iter().enumerate() {
        for i in 0..m {
            if e[i] >= 2 {
                let mut t = e.clone();
                t[i] -= 2;
                mat[index[&t]][col] += (e[i] * (e[i] - 1)) as u64;
            }
        }
    }
    // rank mod p never exceeds the rational rank, so full row rank mod p is exact
    let rk = rank_mod_p(mat.clone(), src.len());
    let rk = if rk == dst.len() {
        rk
    } else {
        let qm: Vec<Vec<Q>> = mat.iter().map(|r| r.iter().map(|&x| q(x as i64)).collect()).collect();
        rank(&qm, src.len())
    };
    (src.len() - rk) as u64
}

/// Cones shipped with the crate.
pub const BUNDLED_EXAMPLES: &str = include_str!("../data/cone_examples.json");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeExample {
    pub name: String,
    pub notes: String,
    pub image: RationalCone,
    pub support: AsymptoticSupport,
    pub expect_trivial: bool,
}

pub fn bundled_examples() -> Vec<ConeExample> {
    serde_json::from_str(BUNDLED_EXAMPLES).expect("bundled cone examples parse")
}

/// JSON rendering of a vector as `"p/q"` strings.
pub fn vector_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(g: &[&[i64]]) -> RationalCone {
        RationalCone::from_ints(g).unwrap()
    }

    #[test]
    fn worked_examples() {
        let c = cone(&[&[1, 0], &[1, 1]]);
        let v = intersect_trivially(&c, &cone(&[&[0, 1]])).unwrap();
        assert!(v.trivial);
        assert!(matches!(v.certificate, Certificate::Separating { .. }));
        assert!(v.certificate.verify(&c, &cone(&[&[0, 1]]), true));

        let v = intersect_trivially(&c, &cone(&[&[1, 0]])).unwrap();
        assert!(!v.trivial);
        assert_eq!(v.witness().unwrap(), &[q(1), q(0)]);

        let b = cone(&[&[2, 1]]);
        let v = intersect_trivially(&c, &b).unwrap();
        assert!(!v.trivial);
        match &v.certificate {
            Certificate::Witness { point, lambda, .. } => {
                assert_eq!(point, &vec![q(2), q(1)]);
                assert_eq!(lambda, &vec![q(1), q(1)]);
            }
            other => panic!("{other:?}"),
        }
        assert!(v.certificate.verify(&c, &b, false));
    }

    #[test]
    fn lines_need_farkas() {
        // half-plane x ≥ 0 contains the y-axis
        let c = cone(&[&[1, 0], &[0, 1], &[0, -1]]);
        let r = cone(&[&[-1, 0]]);
        let v = intersect_trivially(&c, &r).unwrap();
        assert!(v.trivial);
        assert!(matches!(v.certificate, Certificate::Farkas { .. }));
        assert!(v.certificate.verify(&c, &r, true));
    }

    #[test]
    fn mismatch_and_bad_generators() {
        assert!(intersect_trivially(&cone(&[&[1, 0]]), &cone(&[&[1, 0, 0]])).is_err());
        assert!(RationalCone::new(2, vec![vec![q(0), q(0)]]).is_err());
        assert!(RationalCone::new(2, vec![vec![q(1)]]).is_err());
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic_dim(3, 2), 5);
        assert_eq!(harmonic_dim_brute_force(3, 2), 5);
        for j in 2..6 {
            assert_eq!(harmonic_dim(1, j), 0);
            assert_eq!(harmonic_dim_brute_force(1, j), 0);
        }
        assert_eq!(harmonic_dim(2, 0), 1);
        assert_eq!(harmonic_dim(1, 1), 1);
        assert_eq!(harmonic_dim(2, 5), 2);
    }

    #[test]
    fn fast_path_matches_brute_force() {
        for m in 1..=6 {
            for j in 0..=8 {
                assert_eq!(harmonic_dim(m, j), harmonic_dim_brute_force(m, j), "m={m} j={j}");
            }
        }
    }

    #[test]
    fn cone_json_round_trip() {
        let c = RationalCone::from_json(r#"{"dim":2,"generators":[["1","0"],["1/2","3"]]}"#).unwrap();
        assert_eq!(c.generators[1][0], Q::new(1.into(), 2.into()));
        let back = RationalCone::from_json(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(c, back);
        assert_eq!(parse_vector("1, -1/3").unwrap(), vec![q(1), Q::new((-1).into(), 3.into())]);
    }

    #[test]
    fn bundled_examples_have_expected_verdicts() {
        for ex in bundled_examples() {
            let v = discretely_decomposable(&ex.image, &ex.support).unwrap();
            assert_eq!(v.trivial, ex.expect_trivial, "{}", ex.name);
            assert!(v.certificate.verify(&ex.image, &ex.support.cone(), v.trivial));
        }
    }
}
