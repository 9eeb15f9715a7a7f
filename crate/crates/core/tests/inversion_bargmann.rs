use minrep::bargmann::*;
use minrep::inversion::*;
use minrep::rational::q;
use minrep::spectral::SectorModel;
use num_complex::Complex64;

#[test]
fn rank_one_calibration_matches_closed_form() {
    for lambda in [0.5, 1.0, 1.5] {
        let op = RankOneInversion::calibrate(lambda).unwrap();
        let c = op.model.c_mu.unwrap();
        assert!((c - op.model.closed_form_c_mu()).abs() < 1e-10, "λ={lambda}: {c}");
        assert!(op.model.calibration_residual.unwrap() < 1e-10);
    }
}

#[test]
fn miscalibrated_rank_one_is_not_unitary() {
    let op = RankOneInversion::calibrate(1.0).unwrap();
    let c = op.model.c_mu.unwrap();
    let bad = op.with_c_mu(1.5 * c);
    let f = bad.sample(&|x| (-x).exp());
    let ratio = bad.norm_sq(&bad.apply_on_grid(&f)) / bad.norm_sq(&f);
    assert!((ratio - 2.25).abs() < 1e-8);
}

#[test]
fn sector_kernel_agrees_with_spectral() {
    let s = SectorModel::new(q(1), 3, 0).unwrap();
    let op = InversionOperator::new(s.clone(), Backend::Kernel);
    let rule = s.rule(200).unwrap();
    let grid = [0.2, 0.9, 2.5];
    for k in [0, 3, 8] {
        let g = |r: f64| Complex64::new(s.eigenfunctions(k + 1, r)[k], 0.0);
        let out = op.apply(&g, &grid, 30, &rule).unwrap();
        for (r, v) in grid.iter().zip(&out.values) {
            assert!((v - op.multiplier(k) * g(*r)).norm() < 1e-10);
        }
    }
}

#[test]
fn folding_and_intertwining_at_a_two() {
    let rep = folding_check(3, 0, &|r: f64| (-r * r / 2.0).exp() * (1.0 + r * r), &[0.3, 1.0, 2.2]).unwrap();
    assert!(rep.sup_error < 1e-8, "{rep:?}");
    let rep = intertwining_check(2, 1, 3, &[0.5, 1.0, 2.0]).unwrap();
    assert!(rep.sup_error < 1e-6, "{rep:?}");
}

#[test]
fn boundary_limit_is_inversion_kernel() {
    let s = SectorModel::new(q(2), 2, 1).unwrap();
    let got = boundary_limit_at_i_pi(&s, 0.7, 1.9).unwrap();
    assert!((got - e_i_pi_kernel_value(&s, 0.7, 1.9)).norm() < 1e-5);
}

#[test]
fn integrability_probe_at_fourier_case() {
    let rep = kernel_local_integrability_probe(&SectorModel::new(q(2), 1, 0).unwrap(), &[1.0, 2.0, 4.0, 8.0]);
    assert_eq!(rep.bounded_like, Some(true));
    assert!((rep.sup_abs_kernel - (2.0 / std::f64::consts::PI).sqrt()).abs() < 1e-3);
    let model = RankOneModel::new(0.5).unwrap();
    let rep = rank1_integrability_probe(&model, &[1.0, 2.0, 4.0]);
    assert!(rep.sup_abs_kernel <= 2f64.powf(-0.5) + 1e-12);
}

#[test]
fn bargmann_maps_eigenfunctions_to_monomials() {
    let op = BargmannOperator::calibrate(1.5).unwrap();
    let rep = cayley_consistency(&op, 10);
    assert!(rep.leakage.iter().all(|&l| l < 1e-8), "{:?}", rep.leakage);
    assert!(rep.isometry_residual < 1e-6);
    let bad = op.perturb_c_mu(2.0);
    assert!(cayley_consistency(&bad, 3).isometry_residual > 0.1);
}

#[test]
fn classical_bargmann_in_two_variables() {
    let b = classical_bargmann(2, &|x| classical_eigenfunction(2, x[0]) * classical_eigenfunction(1, x[1]), 4).unwrap();
    assert!((b.norm_ratio / classical_norm_constant(2) - 1.0).abs() < 1e-8);
    let biggest = b.coeffs.iter().cloned().fold(0.0f64, |a, c| a.max(c.abs()));
    let off: f64 = b.coeffs.iter().map(|c| c.abs()).sum::<f64>() - biggest;
    assert!(off < 1e-8 * biggest);
}
