use minrep::fourth_order::*;
use minrep::rational::{q, qr, Q};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=7).prop_map(|(n, d)| qr(n, d))
}

fn series() -> impl Strategy<Value = ThetaSeries> {
    (0i64..4, prop::collection::vec(rat(), 3..10))
        .prop_map(|(s, c)| ThetaSeries::new(q(2 * s + 2), 2, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_is_linear(mu in rat(), nu in rat(), u in series(), alpha in rat()) {
        let p = FourthOrderParams::new(mu, nu);
        let v = ThetaSeries::new(u.sigma.clone(), 2, u.coeffs.iter().rev().cloned().collect()).unwrap();
        let lhs = apply_d(&p, &u.combine(&alpha, &v, &q(1)).unwrap()).unwrap();
        let rhs = apply_d(&p, &u).unwrap().combine(&alpha, &apply_d(&p, &v).unwrap(), &q(1)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gauge_round_trip(mu in rat(), nu in rat(), k in rat()) {
        let op = FourthOrderParams::new(mu, nu).operator();
        prop_assert_eq!(op.conjugate_exp(&k).conjugate_exp(&(-k.clone())), op);
    }

    #[test]
    fn frobenius_is_exact(b in prop::collection::vec(rat(), 4), k in 0usize..4) {
        let params = MeijerParams { b };
        if let Ok(u) = frobenius_solution(&params, k, 40) {
            let r = meijer_residual(&params, &u).unwrap();
            prop_assert_eq!(r.n, 40);
            prop_assert!(r.is_zero());
        }
    }

    #[test]
    fn eigenfunctions_satisfy_the_equation(mu in (-4i64..=4).prop_map(|n| qr(n, 2))) {
        let p = FourthOrderParams::new(mu, q(-1));
        let op = gauge_operator(&p);
        for f in polynomial_eigenfunctions(&p, Gauge::Exp, 5) {
            let u = ThetaSeries::polynomial(q(0), 1, f.polynomial.clone()).unwrap();
            let image = op.apply(&u).unwrap();
            let want = ThetaSeries::polynomial(q(0), 1, f.polynomial.clone()).unwrap();
            let diff = image.combine(&q(1), &want, &(-f.eigenvalue.clone())).unwrap();
            prop_assert!(diff.is_zero());
        }
    }
}

#[test]
fn laguerre_and_hermite_families() {
    let fams = classify_families(&parameter_scan(-1, 1, 5), 5);
    assert!(fams.iter().any(|f| f.mu == q(1) && f.nu == q(-1) && f.alpha == q(1)));
    assert!(fams.iter().any(|f| f.hermite));
}

#[test]
fn series_json_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.json");
    std::fs::write(&path, r#"{"sigma":"0","step":2,"coeffs":["1","-1/4","1/64"],"N":2}"#).unwrap();
    let u: ThetaSeries = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(u.coeffs[1], qr(-1, 4));
    let out = apply_d(&FourthOrderParams::new(q(0), q(0)), &u).unwrap();
    assert_eq!(out.sigma, q(-2));
    assert_eq!(out.n, 2);
}
