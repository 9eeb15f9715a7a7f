use minrep::rational::{q, qr};
use minrep::spectral::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn sectors() -> impl Strategy<Value = SectorModel> {
    prop::sample::select(vec![(q(1), 3, 0), (q(1), 2, 1), (q(2), 2, 1), (q(2), 1, 0), (qr(1, 2), 3, 1), (q(3), 4, 2)])
        .prop_map(|(a, m, l)| SectorModel::new(a, m, l).unwrap())
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| Complex64::new(a, b)), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unitary_on_imaginary_axis(s in sectors(), c in coeffs(24), theta in -10.0..10.0f64) {
        let e = LaguerreExpansion::new(s.clone(), c);
        let out = semigroup_apply(&SemigroupQuery::new(Complex64::new(0.0, theta), s, 24).unwrap(), &e);
        prop_assert!((out.norm_sq() - e.norm_sq()).abs() <= 1e-12 * e.norm_sq());
    }

    #[test]
    fn semigroup_law(s in sectors(), c in coeffs(16), a in 0.0..2.0f64, b in -3.0..3.0f64, x in 0.0..2.0f64, y in -3.0..3.0f64) {
        let t1 = Complex64::new(a, b);
        let t2 = Complex64::new(x, y);
        let e = LaguerreExpansion::new(s.clone(), c);
        let q = |t| SemigroupQuery::new(t, s.clone(), 16).unwrap();
        let two = semigroup_apply(&q(t2), &semigroup_apply(&q(t1), &e));
        let one = semigroup_apply(&q(t1 + t2), &e);
        for (u, v) in two.coeffs.iter().zip(&one.coeffs) {
            prop_assert!((u - v).norm() <= 1e-12);
        }
    }

    #[test]
    fn analyze_round_trip(s in sectors(), c in coeffs(12)) {
        let e = LaguerreExpansion::new(s.clone(), c.clone());
        let back = analyze(|r| e.eval(r), &s, 12).unwrap();
        for (u, v) in back.coeffs.iter().zip(&c) {
            prop_assert!((u - v).norm() <= 1e-10, "{u} vs {v}");
        }
    }

    #[test]
    fn d_a_is_symmetric(s in sectors(), lo in 0.3..1.5f64, w in 0.8..2.5f64, shift in 0.0..0.7f64, p in 0.0..2.0f64, qq in 0.0..2.0f64) {
        let rep = symmetry_check(&s, (lo, lo + w), (lo + shift, lo + shift + w), p, qq);
        prop_assert!(rep.difference <= 1e-8 * rep.lhs.abs().max(1.0), "{rep:?}");
    }

    #[test]
    fn kernel_is_linear(c1 in coeffs(6), c2 in coeffs(6), alpha in -2.0..2.0f64) {
        let s = SectorModel::new(q(1), 3, 0).unwrap();
        let rule = s.rule(120).unwrap();
        let k = SemigroupKernel::new(s.clone(), Complex64::new(0.7, 0.4)).unwrap();
        let f = LaguerreExpansion::new(s.clone(), c1);
        let g = LaguerreExpansion::new(s.clone(), c2);
        let grid = [0.3, 1.1, 2.4];
        let fg = |r: f64| f.eval(r) * alpha + g.eval(r);
        let lhs = k.apply(&fg, &grid, &rule);
        let kf = k.apply(&|r| f.eval(r), &grid, &rule);
        let kg = k.apply(&|r| g.eval(r), &grid, &rule);
        for i in 0..grid.len() {
            prop_assert!((lhs.values[i] - (kf.values[i] * alpha + kg.values[i])).norm() <= 1e-12);
        }
    }
}

#[test]
fn hs_norm_full_space_exceeds_sector() {
    let s = SectorModel::new(q(2), 3, 0).unwrap();
    let q1 = SemigroupQuery::new(Complex64::new(1.0, 0.0), s.clone(), 60).unwrap();
    let one = hs_norm(&q1, false).unwrap();
    let all = hs_norm(&q1, true).unwrap();
    assert!(all.norm_sq > one.norm_sq);
    // e^{tD} at a=2 is e^{-(t/2)H} on R^3: trace of e^{-tH} = (2 sinh(t/2))^{-3}
    let want = (2.0 * (0.5f64).sinh()).powi(-3);
    assert!((all.norm_sq - want).abs() < 1e-12 * want, "{} vs {want}", all.norm_sq);
    let q0 = SemigroupQuery::new(Complex64::new(0.0, 1.0), s, 60).unwrap();
    assert!(matches!(hs_norm(&q0, false), Err(SpectralError::NotHilbertSchmidt(_))));
}

#[test]
fn kernel_matches_mehler() {
    let s = SectorModel::new(q(2), 1, 0).unwrap();
    let t = Complex64::new(0.8, -0.3);
    let k = SemigroupKernel::new(s, t).unwrap();
    for (r, y) in [(0.4, 1.3), (2.0, 0.1)] {
        let m = mehler_kernel(t / 2.0, r, y) + mehler_kernel(t / 2.0, r, -y);
        assert!((k.value(r, y) - m).norm() < 1e-12);
    }
}

#[test]
fn analyze_rejects_non_square_integrable() {
    let s = SectorModel::new(q(1), 3, 0).unwrap();
    assert!(analyze(|_| Complex64::new(1.0, 0.0), &s, 20).is_err());
}
