//! Exact scalar arithmetic shared by the symbolic modules: big rationals,
//! Gaussian rationals ℚ(i), `"p/q"` string encoding, and exact nullspaces.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"`, or a decimal literal such as `"0.25"`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Some(Q::from_integer(n));
    }
    // exact decimal expansion, no float round trip
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.')?;
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() { return None } else { digits.parse().ok()? };
    let d = num_traits::pow(BigInt::from(10), frac_part.len());
    let v = Q::new(n, d);
    Some(if neg { -v } else { v })
}

pub fn fmt_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn q_to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or_else(|| {
        let n = v.numer().to_f64().unwrap_or(f64::NAN);
        let d = v.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Serde adapter storing a [`Q`] as a `"p/q"` string.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let raw = String::deserialize(d)?;
        parse_q(&raw).ok_or_else(|| serde::de::Error::custom(format!("not a rational: {raw:?}")))
    }
}

/// Serde adapter for `Vec<Q>`.
pub mod serde_q_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(fmt_q).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_q(s).ok_or_else(|| serde::de::Error::custom(format!("not a rational: {s:?}"))))
            .collect()
    }
}

/// Element of ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussRat {
    #[serde(with = "serde_q")]
    pub re: Q,
    #[serde(with = "serde_q")]
    pub im: Q,
}

impl GaussRat {
    pub fn new(re: Q, im: Q) -> Self {
        Self { re, im }
    }

    pub fn real(re: Q) -> Self {
        Self { re, im: Q::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::real(q(n))
    }

    pub fn i() -> Self {
        Self { re: Q::zero(), im: Q::one() }
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self { re: &self.re * k, im: &self.im * k }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(q_to_f64(&self.re), q_to_f64(&self.im))
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_q(&self.re)),
            (true, false) => write!(f, "{}i", fmt_q(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}i", fmt_q(&self.re), sign, fmt_q(&self.im.abs()))
            }
        }
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

/// Basis of the right nullspace of a dense rational matrix (rows × cols),
/// by exact Gauss–Jordan elimination.
pub fn nullspace(rows: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.iter().filter(|r| r.iter().any(|v| !v.is_zero())).cloned().collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    if !m[r][j].is_zero() {
                        let t = &factor * &m[r][j];
                        m[i][j] = &m[i][j] - &t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Rank of a dense rational matrix.
pub fn rank(rows: &[Vec<Q>], cols: usize) -> usize {
    cols - nullspace(rows, cols).len()
}
