//! Gaussian quadrature rules and the on-disk node-table cache.
//!
//! Laguerre rules are stored with *scaled* weights: for a table of order `ν`,
//! `∫₀^∞ u^ν φ(u) du ≈ Σ W_i φ(u_i)`, exact when `φ(u) e^{u}` is a polynomial
//! of degree < 2N. Keeping `e^{-u}` out of the weights avoids underflow at
//! the far nodes.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::{DMatrix, SymmetricEigen};
use thiserror::Error;

use crate::specfun::laguerre_functions;

#[derive(Debug, Error)]
pub enum QuadratureError {
    #[error("quadrature rule needs at least one node")]
    Empty,
    #[error("Laguerre order must exceed -1, got {0}")]
    BadOrder(f64),
    #[error("truncation {requested} exceeds node table size {available}")]
    Degenerate { requested: usize, available: usize },
    #[error("cache file {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("cache file {0} has a mismatched header")]
    BadHeader(PathBuf),
}

/// Nodes and scaled weights of an N-point Gauss–Laguerre rule.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreRule {
    pub nu: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl LaguerreRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Rule for `∫ u^ν φ(u) du` adapted to decay `e^{-βu}`: nodes `v_i/β`,
    /// weights `β^{-ν-1} W_i`.
    pub fn scaled(&self, beta: f64) -> LaguerreRule {
        let f = beta.powf(-self.nu - 1.0);
        LaguerreRule {
            nu: self.nu,
            nodes: self.nodes.iter().map(|u| u / beta).collect(),
            weights: self.weights.iter().map(|w| w * f).collect(),
        }
    }

    /// `Σ W_i φ(u_i)`.
    pub fn integrate(&self, mut phi: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&u, &w)| w * phi(u)).sum()
    }
}

/// Gauss–Laguerre rule for weight `u^ν e^{-u}` with scaled weights.
///
/// Golub–Welsch eigenvalues, Newton-polished on the orthonormal recurrence.
pub fn gauss_laguerre(n: usize, nu: f64) -> Result<LaguerreRule, QuadratureError> {
    if n == 0 {
        return Err(QuadratureError::Empty);
    }
    if !(nu > -1.0) {
        return Err(QuadratureError::BadOrder(nu));
    }
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        jac[(k, k)] = 2.0 * kf + nu + 1.0;
        if k + 1 < n {
            let b = ((kf + 1.0) * (kf + 1.0 + nu)).sqrt();
            jac[(k, k + 1)] = b;
            jac[(k + 1, k)] = b;
        }
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let nf = n as f64;
    let cn = (nf * (nf + nu)).sqrt();
    for u in nodes.iter_mut() {
        for _ in 0..8 {
            let p = laguerre_functions(n + 1, nu, *u);
            // L_n/L_n' expressed in the orthonormal basis
            let den = nf * p[n] - cn * p[n - 1];
            if den == 0.0 {
                break;
            }
            let step = *u * p[n] / den;
            *u -= step;
            if step.abs() <= 4.0 * f64::EPSILON * u.abs() {
                break;
            }
        }
    }
    let weights = nodes
        .iter()
        .map(|&u| {
            let p = laguerre_functions(n, nu, u);
            1.0 / p.iter().map(|v| v * v).sum::<f64>()
        })
        .collect();
    Ok(LaguerreRule { nu, nodes, weights })
}

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>), QuadratureError> {
    if n == 0 {
        return Err(QuadratureError::Empty);
    }
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
            }
            pp = nf * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * pp * pp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    Ok((x, w))
}

/// `∫_a^b f` by composite Gauss–Legendre on `panels` equal panels.
pub fn integrate_interval(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let (x, w) = gauss_legendre(order).expect("order >= 1");
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        for (xi, wi) in x.iter().zip(&w) {
            sum += wi * f(mid + 0.5 * h * xi);
        }
    }
    sum * 0.5 * h
}

/// `∫₀^∞ f(x) dx` by the exp-sinh (double exponential) rule, refining the
/// step until successive estimates agree to `tol` (relative).
pub fn exp_sinh(f: impl Fn(f64) -> f64, tol: f64) -> f64 {
    use std::f64::consts::FRAC_PI_2;
    let tmax = 4.5;
    let eval = |t: f64| {
        let x = (FRAC_PI_2 * t.sinh()).exp();
        let dx = FRAC_PI_2 * t.cosh() * x;
        let v = f(x) * dx;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let mut h = 0.5;
    let mut sum = 0.0;
    let mut k = 0;
    while (k as f64) * h <= tmax {
        let t = k as f64 * h;
        sum += if k == 0 { eval(0.0) } else { eval(t) + eval(-t) };
        k += 1;
    }
    let mut est = sum * h;
    for _ in 0..10 {
        h *= 0.5;
        let mut add = 0.0;
        let mut j = 1;
        while (j as f64) * h <= tmax {
            let t = j as f64 * h;
            add += eval(t) + eval(-t);
            j += 2;
        }
        sum += add;
        let new = sum * h;
        if (new - est).abs() <= tol * new.abs().max(f64::MIN_POSITIVE) {
            return new;
        }
        est = new;
    }
    est
}

/// Identifies a sector node table on disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeKey {
    pub a: f64,
    pub m: u32,
    pub ell: u32,
    pub n: u32,
}

impl NodeKey {
    fn hash_key(&self) -> (u64, u32, u32, u32) {
        (self.a.to_bits(), self.m, self.ell, self.n)
    }

    fn file_name(&self) -> String {
        format!("gl_a{:016x}_m{}_l{}_n{}.bin", self.a.to_bits(), self.m, self.ell, self.n)
    }
}

type TableMap = HashMap<(u64, u32, u32, u32), Arc<LaguerreRule>>;

/// Node tables materialized on first use, shared read-only afterwards,
/// optionally persisted to a directory.
#[derive(Debug)]
pub struct NodeCache {
    dir: Option<PathBuf>,
    tables: RwLock<TableMap>,
}

static GLOBAL: OnceLock<NodeCache> = OnceLock::new();

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "MINREP_CACHE";

pub fn default_cache_dir() -> PathBuf {
    match std::env::var_os(CACHE_ENV) {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => std::env::temp_dir().join("minrep-cache"),
    }
}

impl NodeCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir, tables: RwLock::new(HashMap::new()) }
    }

    /// Process-wide cache; directory from [`CACHE_ENV`] unless configured first.
    pub fn global() -> &'static NodeCache {
        GLOBAL.get_or_init(|| NodeCache::new(Some(default_cache_dir())))
    }

    /// Sets the global cache directory. Returns `false` if the cache was
    /// already initialized.
    pub fn configure_global(dir: Option<PathBuf>) -> bool {
        GLOBAL.set(NodeCache::new(dir)).is_ok()
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Table for `key` with Laguerre order `nu`. Disk failures degrade to
    /// recomputation; only a corrupt file with the right name is reported.
    pub fn table(&self, key: NodeKey, nu: f64) -> Result<Arc<LaguerreRule>, QuadratureError> {
        let hk = key.hash_key();
        if let Some(t) = self.tables.read().expect("cache lock").get(&hk) {
            return Ok(t.clone());
        }
        let rule = match self.dir.as_ref().and_then(|d| read_table(&d.join(key.file_name()), key, nu).ok()) {
            Some(r) => r,
            None => {
                let r = gauss_laguerre(key.n as usize, nu)?;
                if let Some(d) = &self.dir {
                    // best effort; the in-memory table stays authoritative
                    let _ = write_table(d, &key.file_name(), key, &r);
                }
                r
            }
        };
        let mut guard = self.tables.write().expect("cache lock");
        Ok(guard.entry(hk).or_insert_with(|| Arc::new(rule)).clone())
    }
}

fn header_bytes(key: NodeKey) -> Vec<u8> {
    let mut h = Vec::with_capacity(20);
    h.extend_from_slice(&key.a.to_le_bytes());
    h.extend_from_slice(&key.m.to_le_bytes());
    h.extend_from_slice(&key.ell.to_le_bytes());
    h.extend_from_slice(&key.n.to_le_bytes());
    h
}

/// Writes a cache file: header `{a: f64, m: u32, ℓ: u32, N: u32}` followed by
/// N little-endian `(node, weight)` pairs.
pub fn write_table(dir: &Path, name: &str, key: NodeKey, rule: &LaguerreRule) -> Result<(), QuadratureError> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| QuadratureError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let target = dir.join(name);
    let tmp = dir.join(format!("{name}.{}.tmp", std::process::id()));
    let mut buf = header_bytes(key);
    for (u, w) in rule.nodes.iter().zip(&rule.weights) {
        buf.extend_from_slice(&u.to_le_bytes());
        buf.extend_from_slice(&w.to_le_bytes());
    }
    let mut f = fs::File::create(&tmp).map_err(io_err(&tmp))?;
    f.write_all(&buf).map_err(io_err(&tmp))?;
    f.sync_all().map_err(io_err(&tmp))?;
    fs::rename(&tmp, &target).map_err(io_err(&target))?;
    Ok(())
}

pub fn read_table(path: &Path, key: NodeKey, nu: f64) -> Result<LaguerreRule, QuadratureError> {
    let mut f = fs::File::open(path).map_err(|source| QuadratureError::Io { path: path.to_path_buf(), source })?;
    let mut buf = Vec::new();
    f.read_to_end(&mut buf).map_err(|source| QuadratureError::Io { path: path.to_path_buf(), source })?;
    let header = header_bytes(key);
    let n = key.n as usize;
    if buf.len() != header.len() + 16 * n || buf[..header.len()] != header[..] {
        return Err(QuadratureError::BadHeader(path.to_path_buf()));
    }
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for chunk in buf[header.len()..].chunks_exact(16) {
        nodes.push(f64::from_le_bytes(chunk[..8].try_into().expect("8 bytes")));
        weights.push(f64::from_le_bytes(chunk[8..].try_into().expect("8 bytes")));
    }
    Ok(LaguerreRule { nu, nodes, weights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    #[test]
    fn laguerre_rule_integrates_moments() {
        for &nu in &[-0.5, 0.0, 0.5, 2.0, 7.25] {
            let rule = gauss_laguerre(40, nu).unwrap();
            for j in 0..30 {
                let got = rule.integrate(|u| u.powi(j) * (-u).exp());
                let want = gamma(j as f64 + nu + 1.0).unwrap();
                assert!(((got - want) / want).abs() < 1e-12, "nu={nu} j={j}");
            }
        }
    }

    #[test]
    fn large_rule_is_accurate() {
        let rule = gauss_laguerre(200, 0.5).unwrap();
        assert_eq!(rule.len(), 200);
        let total: f64 = rule.integrate(|u| (-u).exp());
        assert!((total - gamma(1.5).unwrap()).abs() < 1e-13);
        let g = rule.integrate(|u| (-2.0 * u).exp() * u.powi(3));
        let want = gamma(4.5).unwrap() / 2f64.powf(4.5);
        assert!((g - want).abs() < 1e-13);
    }

    #[test]
    fn scaled_rule_matches_decay() {
        let rule = gauss_laguerre(30, 1.0).unwrap().scaled(3.0);
        let got = rule.integrate(|u| (-3.0 * u).exp());
        assert!((got - 1.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn legendre_and_exp_sinh() {
        let (x, w) = gauss_legendre(7).unwrap();
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(12)).sum();
        assert!((s - 2.0 / 13.0).abs() < 1e-14);
        let v = integrate_interval(|x| x.sin(), 0.0, std::f64::consts::PI, 4, 10);
        assert!((v - 2.0).abs() < 1e-13);
        let e = exp_sinh(|x| x.powf(1.5) * (-x).exp(), 1e-14);
        assert!((e - gamma(2.5).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn cache_round_trip_and_reuse() {
        let dir = tempfile::tempdir().unwrap();
        let cache = NodeCache::new(Some(dir.path().to_path_buf()));
        let key = NodeKey { a: 1.0, m: 3, ell: 0, n: 25 };
        let t1 = cache.table(key, 1.0).unwrap();
        let file = dir.path().join(key.file_name());
        assert!(file.exists());
        assert_eq!(fs::metadata(&file).unwrap().len(), 20 + 16 * 25);
        let t2 = cache.table(key, 1.0).unwrap();
        assert!(Arc::ptr_eq(&t1, &t2));
        let fresh = NodeCache::new(Some(dir.path().to_path_buf()));
        let t3 = fresh.table(key, 1.0).unwrap();
        assert_eq!(*t1, *t3);
        let other = NodeKey { a: 1.0, m: 3, ell: 1, n: 25 };
        assert!(matches!(read_table(&file, other, 1.0), Err(QuadratureError::BadHeader(_))));
    }
}
