use minrep::cones::*;
use minrep::rational::q;
use proptest::prelude::*;

fn cone(dim: usize) -> impl Strategy<Value = RationalCone> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 1..4)
        .prop_filter("nonzero generators", |g| g.iter().all(|v| v.iter().any(|&x| x != 0)))
        .prop_map(move |g| RationalCone::new(dim, g.into_iter().map(|v| v.into_iter().map(q).collect()).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn verdict_is_symmetric_and_certified((c1, c2) in (2usize..=3).prop_flat_map(|d| (cone(d), cone(d)))) {
        let a = intersect_trivially(&c1, &c2).unwrap();
        let b = intersect_trivially(&c2, &c1).unwrap();
        prop_assert_eq!(a.trivial, b.trivial);
        prop_assert!(a.certificate.verify(&c1, &c2, a.trivial));
        prop_assert!(b.certificate.verify(&c2, &c1, b.trivial));
    }

    #[test]
    fn scaling_generators_keeps_verdict((c1, c2) in (2usize..=3).prop_flat_map(|d| (cone(d), cone(d))), k in 1i64..5) {
        let scaled = RationalCone::new(
            c1.dim,
            c1.generators.iter().map(|g| g.iter().map(|x| x * q(k)).collect()).collect(),
        ).unwrap();
        let a = intersect_trivially(&c1, &c2).unwrap();
        let b = intersect_trivially(&scaled, &c2).unwrap();
        prop_assert_eq!(a.trivial, b.trivial);
    }

    #[test]
    fn cone_meets_itself(c in cone(3)) {
        // every cone shares its generators with itself
        prop_assert!(!intersect_trivially(&c, &c).unwrap().trivial);
    }
}

#[test]
fn tampered_certificates_fail() {
    let c1 = RationalCone::from_ints(&[&[1, 0], &[1, 1]]).unwrap();
    let c2 = RationalCone::from_ints(&[&[2, 1]]).unwrap();
    let v = intersect_trivially(&c1, &c2).unwrap();
    assert!(!v.certificate.verify(&c1, &c2, true));
    let mut json = serde_json::to_value(&v.certificate).unwrap();
    json["point"][0] = serde_json::json!("3");
    let bad: Certificate = serde_json::from_value(json).unwrap();
    assert!(!bad.verify(&c1, &c2, false));
}

#[test]
fn bundled_examples_and_support() {
    for ex in bundled_examples() {
        let v = discretely_decomposable(&ex.image, &ex.support).unwrap();
        assert_eq!(v.trivial, ex.expect_trivial, "{}", ex.name);
    }
    let beta = parse_vector("1,0").unwrap();
    let c = RationalCone::from_ints(&[&[1, 0], &[1, 1]]).unwrap();
    let v = discretely_decomposable(&c, &AsymptoticSupport::ray(beta).unwrap()).unwrap();
    assert_eq!(v.witness().unwrap(), &[q(1), q(0)]);
}

#[test]
fn harmonic_dimensions() {
    // dim H^j(R^3) = 2j + 1
    for j in 0..10 {
        assert_eq!(harmonic_dim(3, j), 2 * j as u64 + 1);
    }
    assert_eq!(harmonic_dim_brute_force(4, 3), 16);
}
