mod data {
#![allow(clippy::excessive_precision)]
    include!("data/bessel_ref.rs");
}

use data::BESSEL_REF;
use minrep::quadrature::gauss_laguerre;
use minrep::specfun::{
    bessel_i, bessel_k, bessel_renorm, bessel_renorm_series, laguerre, laguerre_norm_sq, BesselKind, BesselOrder,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn order(nu: f64) -> BesselOrder {
    BesselOrder::new(nu).unwrap()
}

#[test]
fn j_renorm_matches_reference_relative_to_envelope() {
    for &(nu, t, j, env, _, _) in BESSEL_REF {
        let got = bessel_renorm(BesselKind::J, order(nu), t).unwrap();
        let err = (got - j).abs() / env;
        assert!(err <= 1e-10, "J nu={nu} t={t}: got {got}, want {j}, err {err:e}");
    }
}

#[test]
fn i_renorm_matches_reference() {
    for &(nu, t, _, _, i, _) in BESSEL_REF {
        let got = bessel_renorm(BesselKind::I, order(nu), t).unwrap();
        let err = ((got - i) / i).abs();
        assert!(err <= 1e-10, "I nu={nu} t={t}: got {got}, want {i}, err {err:e}");
    }
}

#[test]
fn k_renorm_matches_reference() {
    for &(nu, t, _, _, _, k) in BESSEL_REF {
        let got = bessel_renorm(BesselKind::K, order(nu), t).unwrap();
        let err = ((got - k) / k).abs();
        assert!(err <= 1e-10, "K nu={nu} t={t}: got {got}, want {k}, err {err:e}");
    }
}

#[test]
fn laguerre_orthogonality_under_gauss_laguerre() {
    let rule = gauss_laguerre(40, 0.0).unwrap();
    for &alpha in &[0.0, 0.5, 1.0, 3.0] {
        let rule = if alpha == 0.0 { rule.clone() } else { gauss_laguerre(40, alpha).unwrap() };
        for j in 0..=15 {
            for k in 0..=15 {
                let ip = rule.integrate(|u| laguerre(j, &alpha, &u) * laguerre(k, &alpha, &u) * (-u).exp());
                let want = if j == k { laguerre_norm_sq(k, alpha) } else { 0.0 };
                let scale = laguerre_norm_sq(j, alpha).sqrt() * laguerre_norm_sq(k, alpha).sqrt();
                assert!((ip - want).abs() <= 1e-8 * scale, "alpha={alpha} j={j} k={k}: {ip}");
            }
        }
    }
}

#[test]
fn ik_product_decreases() {
    for &nu in &[0.0, 0.5, 1.0, 3.3, 10.0] {
        let mut prev = f64::INFINITY;
        for i in 1..200 {
            let t = 0.05 * i as f64;
            let p = bessel_i(nu, t).unwrap() * bessel_k(nu, t).unwrap();
            assert!(p < prev, "nu={nu} t={t}");
            prev = p;
        }
    }
}

proptest! {
    #[test]
    fn series_matches_evaluation(nu in -3.0f64..20.0, t in 0.0f64..10.0) {
        let s = -0.25 * t * t;
        let (series, abs_sum) = bessel_renorm_series(nu, Complex64::new(s, 0.0));
        let eval = bessel_renorm(BesselKind::J, order(nu), t).unwrap();
        // normwise: relative to the sum of term magnitudes, which bounds the
        // rounding error of any summation order
        prop_assert!((series.re - eval).abs() <= 1e-12 * abs_sum,
            "nu={} t={} series={} eval={}", nu, t, series.re, eval);
        let series_i = bessel_renorm_series(nu, Complex64::new(-s, 0.0)).0.re;
        let eval_i = bessel_renorm(BesselKind::I, order(nu), t).unwrap();
        prop_assert!((series_i - eval_i).abs() <= 1e-12 * eval_i.abs().max(1e-300));
    }
}
