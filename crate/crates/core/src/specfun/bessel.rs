use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{cos_pi, rgamma, sin_pi, Result, SpecFunError};

const EPS: f64 = 1.0e-16;
const FPMIN: f64 = 1.0e-300;
const MAXIT: usize = 100_000;
const XMIN: f64 = 2.0;
const RESCALE: f64 = 1.0e250;

/// Real Bessel order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselOrder {
    pub nu: f64,
}

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() {
            Ok(Self { nu })
        } else {
            Err(SpecFunError::Domain(format!("order must be finite, got {nu}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BesselKind {
    J,
    I,
    K,
}

// Γ-related helpers for the Temme series: gam1 = (1/Γ(1-μ) - 1/Γ(1+μ))/(2μ),
// gam2 = (1/Γ(1-μ) + 1/Γ(1+μ))/2, |μ| ≤ 1/2.
const C1: [f64; 7] = [
    -1.142_022_680_371_168e0,
    6.516_511_267_073_7e-3,
    3.087_090_173_086e-4,
    -3.470_626_964_9e-6,
    6.943_766_4e-9,
    3.677_95e-11,
    -1.356e-13,
];
const C2: [f64; 8] = [
    1.843_740_587_300_905e0,
    -7.685_284_084_478_67e-2,
    1.271_927_136_654_6e-3,
    -4.971_736_704_2e-6,
    -3.312_611_98e-8,
    2.423_096e-10,
    -1.702e-13,
    -1.49e-15,
];

fn chebev(c: &[f64], x: f64) -> f64 {
    let y2 = 2.0 * x;
    let (mut d, mut dd) = (0.0, 0.0);
    for &cj in c.iter().skip(1).rev() {
        let sv = d;
        d = y2 * d - dd + cj;
        dd = sv;
    }
    x * d - dd + 0.5 * c[0]
}

fn beschb(mu: f64) -> (f64, f64, f64, f64) {
    let xx = 8.0 * mu * mu - 1.0;
    let gam1 = chebev(&C1, xx);
    let gam2 = chebev(&C2, xx);
    // (gam1, gam2, 1/Γ(1+μ), 1/Γ(1-μ))
    (gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1)
}

/// `(J_ν(x), Y_ν(x))` for `ν ≥ 0`, `x > 0`.
///
/// Continued fraction CF1 for J'/J, downward recurrence to |μ| ≤ 1/2, then
/// Temme's series (x < 2) or Steed's CF2 (x ≥ 2) for the pair at order μ.
pub fn bessel_jy(nu: f64, x: f64) -> Result<(f64, f64)> {
    if x <= 0.0 || nu < 0.0 || !x.is_finite() || !nu.is_finite() {
        return Err(SpecFunError::Domain(format!("bessel_jy requires nu >= 0, x > 0 (nu={nu}, x={x})")));
    }
    let nl = if x < XMIN { (nu + 0.5) as usize } else { ((nu - x + 1.5).max(0.0)) as usize };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SpecFunError::Domain(format!("CF1 did not converge for x={x}")));
    }

    let mut rjl = isign * 1.0e-200;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let t = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * t - rjl;
        rjl = t;
        if rjl.abs() > RESCALE {
            rjl /= RESCALE;
            rjpl /= RESCALE;
            rjl1 /= RESCALE;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = beschb(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(SpecFunError::Domain("Temme series did not converge".into()));
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut ok = false;
        for i in 2..MAXIT {
            a += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(SpecFunError::Domain("CF2 did not converge".into()));
        }
        let gam = (p - f) / q;
        let mag = (w / ((p - f) * gam + q)).sqrt();
        rjmu = mag.copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }
    let j = rjl1 * (rjmu / rjl);
    for i in 1..=nl {
        let t = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = t;
    }
    Ok((j, rymu))
}

/// `(I_ν(x)e^{-x}, K_ν(x)e^{x})` for `ν ≥ 0`, `x > 0`.
pub fn bessel_ik_scaled(nu: f64, x: f64) -> Result<(f64, f64)> {
    if x <= 0.0 || nu < 0.0 || !x.is_finite() || !nu.is_finite() {
        return Err(SpecFunError::Domain(format!("bessel_ik requires nu >= 0, x > 0 (nu={nu}, x={x})")));
    }
    let nl = (nu + 0.5) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SpecFunError::Domain(format!("CF1 did not converge for x={x}")));
    }
    let mut ril = 1.0e-200;
    let mut ripl = h * ril;
    let mut ril1 = ril;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let t = fact * ril + ripl;
        fact -= xi;
        ripl = fact * t + ril;
        ril = t;
        if ril.abs() > RESCALE {
            ril /= RESCALE;
            ripl /= RESCALE;
            ril1 /= RESCALE;
        }
    }
    let f = ripl / ril;

    // K_μ, K_{μ+1} carrying a factor e^{x}
    let (rkmu, rk1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = beschb(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let e = e.exp();
        let mut p = 0.5 * e / gampl;
        let mut q = 0.5 / (e * gammi);
        let mut c = 1.0;
        let d = x2 * x2;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * ff;
            sum += del;
            let del1 = c * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(SpecFunError::Domain("Temme series did not converge".into()));
        }
        let ex = x.exp();
        rkmu = sum * ex;
        rk1 = sum1 * xi2 * ex;
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - xmu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut ok = false;
        for i in 2..MAXIT {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0 ;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(SpecFunError::Domain("Steed CF2 did not converge".into()));
        }
        h *= a1;
        rkmu = (PI / (2.0 * x)).sqrt() / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }
    let rkmup = xmu * xi * rkmu - rk1;
    let rimu = xi / (f * rkmu - rkmup);
    let i_scaled = rimu * ril1 / ril;
    let (mut km, mut k1) = (rkmu, rk1);
    for i in 1..=nl {
        let t = (xmu + i as f64) * xi2 * k1 + km;
        km = k1;
        k1 = t;
    }
    Ok((i_scaled, km))
}

/// J_ν(x) for real ν and x > 0.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if nu >= 0.0 {
        return Ok(bessel_jy(nu, x)?.0);
    }
    let mu = -nu;
    let (j, y) = bessel_jy(mu, x)?;
    let s = sin_pi(mu);
    Ok(cos_pi(mu) * j - if s == 0.0 { 0.0 } else { s * y })
}

/// I_ν(x) for real ν and x > 0.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    let mu = nu.abs();
    let (i, k) = bessel_ik_scaled(mu, x)?;
    let mut v = i * x.exp();
    if nu < 0.0 {
        let s = sin_pi(mu);
        if s != 0.0 {
            v += 2.0 / PI * s * k * (-x).exp();
        }
    }
    Ok(v)
}

/// K_ν(x) for real ν and x > 0 (even in ν).
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_ik_scaled(nu.abs(), x)?.1 * (-x).exp())
}

/// Σ_k s^k / (k! Γ(k+ν+1)) for complex s. With s = -t²/4 this is `J̃_ν(t)`,
/// with s = t²/4 it is `Ĩ_ν(t)`. Returns (sum, Σ|terms|).
pub fn bessel_renorm_series(nu: f64, s: Complex64) -> (Complex64, f64) {
    // direct evaluation until the Gamma argument is positive, then recurrence
    let mut k0 = 0usize;
    while (k0 as f64) + nu + 1.0 <= 0.0 {
        k0 += 1;
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut term = Complex64::new(1.0, 0.0);
    let mut fact = 1.0;
    for k in 0..=k0 {
        if k > 0 {
            term *= s;
            fact *= k as f64;
        }
        let t = term * (rgamma(k as f64 + nu + 1.0) / fact);
        sum += t;
        abs_sum += t.norm();
    }
    let mut t = {
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..k0 {
            p *= s;
        }
        p * (rgamma(k0 as f64 + nu + 1.0) / fact)
    };
    let s_abs = s.norm();
    for k in (k0 + 1)..10_000 {
        let kf = k as f64;
        t = t * s / (kf * (kf + nu));
        sum += t;
        let ta = t.norm();
        abs_sum += ta;
        if kf * (kf + nu) > s_abs && ta <= 1e-17 * sum.norm() {
            break;
        }
        if ta == 0.0 {
            break;
        }
    }
    (sum, abs_sum)
}

fn check_arg(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        return Err(SpecFunError::Domain(format!("argument must be >= 0, got {t}")));
    }
    Ok(())
}

/// `J̃_ν(t) = (t/2)^{-ν} J_ν(t)`.
pub fn bessel_j_renorm(nu: f64, t: f64) -> Result<f64> {
    check_arg(t)?;
    if t < 2.0 {
        return Ok(bessel_renorm_series(nu, Complex64::new(-0.25 * t * t, 0.0)).0.re);
    }
    let scale = (-nu * (0.5 * t).ln()).exp();
    Ok(scale * bessel_j(nu, t)?)
}

/// `Ĩ_ν(t) = (t/2)^{-ν} I_ν(t)`.
pub fn bessel_i_renorm(nu: f64, t: f64) -> Result<f64> {
    check_arg(t)?;
    if t <= 30.0 {
        return Ok(bessel_renorm_series(nu, Complex64::new(0.25 * t * t, 0.0)).0.re);
    }
    let mu = nu.abs();
    let (i, k) = bessel_ik_scaled(mu, t)?;
    let lnscale = -nu * (0.5 * t).ln();
    let mut v = i * (t + lnscale).exp();
    if nu < 0.0 {
        let s = sin_pi(mu);
        if s != 0.0 {
            v += 2.0 / PI * s * k * (lnscale - t).exp();
        }
    }
    Ok(v)
}

/// `K̃_ν(t) = (t/2)^{-ν} K_ν(t)`, t > 0.
pub fn bessel_k_renorm(nu: f64, t: f64) -> Result<f64> {
    check_arg(t)?;
    if t == 0.0 {
        return Err(SpecFunError::Singular("K-Bessel at t = 0".into()));
    }
    if t > 700.0 && -t - nu * (0.5 * t).ln() + 0.5 * (PI / (2.0 * t)).ln() < -750.0 {
        return Ok(0.0);
    }
    let (_, k) = bessel_ik_scaled(nu.abs(), t)?;
    Ok(k * (-t - nu * (0.5 * t).ln()).exp())
}

pub fn bessel_renorm(kind: BesselKind, nu: BesselOrder, t: f64) -> Result<f64> {
    match kind {
        BesselKind::J => bessel_j_renorm(nu.nu, t),
        BesselKind::I => bessel_i_renorm(nu.nu, t),
        BesselKind::K => bessel_k_renorm(nu.nu, t),
    }
}

/// `Ĩ_ν` as an entire function of `q = z²/4`, for complex `q`.
///
/// Power series while it is well conditioned, otherwise the large-argument
/// expansion with both exponential branches.
pub fn bessel_i_renorm_sq(nu: f64, q: Complex64) -> Complex64 {
    bessel_i_renorm_sq_shifted(nu, q, Complex64::new(0.0, 0.0))
}

/// `e^{shift} Ĩ_ν` with `q = z²/4`; the shift is folded into the exponent of
/// the asymptotic branches so that large growth and decay cancel without
/// overflow.
pub fn bessel_i_renorm_sq_shifted(nu: f64, q: Complex64, shift: Complex64) -> Complex64 {
    let zabs = 2.0 * q.norm().sqrt();
    if zabs <= 12.0 {
        return bessel_renorm_series(nu, q).0 * shift.exp();
    }
    if zabs <= 40.0 {
        let (s, abs_sum) = bessel_renorm_series(nu, q);
        if abs_sum <= 1.0e4 * s.norm() {
            return s * shift.exp();
        }
    }
    let mut z = (q * 4.0).sqrt();
    if z.im < 0.0 || (z.im == 0.0 && z.re < 0.0) {
        z = -z;
    }
    i_renorm_asymptotic(nu, z, shift)
}

fn i_renorm_asymptotic(nu: f64, z: Complex64, shift: Complex64) -> Complex64 {
    let mu4 = 4.0 * nu * nu;
    let inv8z = 1.0 / (8.0 * z);
    let mut s1 = Complex64::new(1.0, 0.0);
    let mut s2 = Complex64::new(1.0, 0.0);
    let mut a = Complex64::new(1.0, 0.0);
    let mut prev = f64::INFINITY;
    for k in 1..400 {
        let kf = k as f64;
        a = a * (mu4 - (2.0 * kf - 1.0).powi(2)) * inv8z / kf;
        let an = a.norm();
        if an == 0.0 {
            break;
        }
        // terms may grow while k < ν; past that, growth means divergence
        if kf > nu.abs() + 1.0 && an > prev {
            break;
        }
        prev = an;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s1 += a * sign;
        s2 += a;
        if an < 1e-17 && kf > nu.abs() {
            break;
        }
    }
    let lz2 = (z * 0.5).ln();
    let pre = -(2.0 * PI * z).ln() * 0.5 - lz2 * nu + shift;
    let t1 = (z + pre).exp() * s1;
    let phase = Complex64::new(0.0, PI * nu).exp() * Complex64::new(0.0, 1.0);
    let t2 = (-z + pre).exp() * s2 * phase;
    t1 + t2
}
