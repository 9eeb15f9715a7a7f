//! The acceptance suite: nine criteria, each a list of measured quantities
//! against fixed tolerances plus a wall-clock budget.

use std::fmt;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bargmann::{cayley_consistency, BargmannOperator, FockSpaceModel};
use crate::cones::{bundled_examples, intersect_trivially, RationalCone};
use crate::fourth_order::{
    apply_d, classify_families, frobenius_solution, meijer_residual, parameter_scan, polynomial_eigenfunctions,
    second_order_reduction_probe, annihilates, proportional, FourthOrderParams, Gauge, MeijerParams, ThetaSeries,
};
use crate::inversion::{
    boundary_limit_at_i_pi, e_i_pi_kernel_value, folding_check, invert_kernel, invert_spectral, Backend,
    InversionOperator, RankOneInversion,
};
use crate::radial_symbolic::{commutator_check, lattice_test_set, Sl2Triple};
use crate::rational::{q, qr, Q};
use crate::specfun::hermite_coeffs;
use crate::spectral::{
    hs_norm, mehler_kernel, merged_spectrum, semigroup_apply, spectral_kernel_value, LaguerreExpansion, SectorModel,
    SemigroupKernel, SemigroupQuery,
};

#[derive(Debug, Clone, Serialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Metric {
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self { name: name.into(), value, tolerance, pass: value <= tolerance }
    }

    /// Count of failures that must be zero.
    pub fn exact(name: impl Into<String>, failures: usize) -> Self {
        Self::at_most(name, failures as f64, 0.0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: String,
    pub pass: bool,
    pub metrics: Vec<Metric>,
    pub notes: Vec<String>,
    pub elapsed_s: f64,
    pub budget_s: Option<f64>,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let worst = self
            .metrics
            .iter()
            .filter(|m| m.tolerance > 0.0)
            .map(|m| m.value / m.tolerance)
            .fold(0.0, f64::max);
        write!(
            f,
            "criterion {} [{}] {} ({} metrics, worst/tol {:.2e}, {:.2} s)",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.metrics.len(),
            worst,
            self.elapsed_s
        )
    }
}

pub const TITLES: [&str; 9] = [
    "exact sl2 relations",
    "merged spectra",
    "lowest-weight decomposition",
    "semigroup kernel vs spectral",
    "unitary inversion",
    "Mehler and J-Bessel limit",
    "Bargmann transform",
    "fourth-order operator",
    "cone criterion",
];

const BUDGETS: [Option<f64>; 9] = [Some(5.0), Some(1.0), None, Some(30.0), Some(60.0), None, None, None, Some(1.0)];

type Outcome = Result<(Vec<Metric>, Vec<String>), String>;

pub fn run(id: u8) -> Option<CriterionReport> {
    let body: fn() -> Outcome = match id {
        1 => sl2_relations,
        2 => spectra,
        3 => lowest_weights,
        4 => semigroup,
        5 => inversion,
        6 => mehler_and_limit,
        7 => bargmann,
        8 => fourth_order,
        9 => cones,
        _ => return None,
    };
    let idx = (id - 1) as usize;
    let start = Instant::now();
    let outcome = body();
    let elapsed_s = start.elapsed().as_secs_f64();
    let budget_s = BUDGETS[idx];
    let (mut metrics, mut notes) = match outcome {
        Ok(v) => v,
        Err(e) => (vec![Metric::exact("completed", 1)], vec![e]),
    };
    if let Some(b) = budget_s {
        metrics.push(Metric::at_most("runtime_s", elapsed_s, b));
    }
    let pass = metrics.iter().all(|m| m.pass);
    if !pass {
        notes.extend(metrics.iter().filter(|m| !m.pass).map(|m| format!("{} = {:e} > {:e}", m.name, m.value, m.tolerance)));
    }
    Some(CriterionReport { id, title: TITLES[idx].to_string(), pass, metrics, notes, elapsed_s, budget_s })
}

pub fn run_all() -> Vec<CriterionReport> {
    (1..=9).filter_map(run).collect()
}

fn sup<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn sl2_relations() -> Outcome {
    let mut failures = 0;
    let mut cases = 0;
    for a in [qr(1, 2), q(1), q(2), q(3)] {
        for m in 1..=4 {
            let triple = Sl2Triple::deformed(a.clone(), m).map_err(err)?;
            for ell in 0..=3 {
                let tests = lattice_test_set(&a, m, ell, &a.recip(), 3);
                let rep = commutator_check(&triple, &tests).map_err(err)?;
                cases += rep.residuals.len();
                failures += rep.residuals.iter().filter(|r| !r.zero).count();
            }
        }
    }
    Ok((vec![Metric::exact("nonzero_residuals", failures)], vec![format!("{cases} residuals checked")]))
}

fn spectra() -> Outcome {
    let mut metrics = Vec::new();
    for m in 1..=4u32 {
        for a in [1i64, 2] {
            let got = merged_spectrum(&q(a), m, 10).map_err(err)?;
            let want: Vec<Q> = (0..10).map(|j| -(q(j) + qr(m as i64 - 2 + a, 2)) / q(a)).collect();
            metrics.push(Metric::exact(format!("spectrum a={a} m={m}"), usize::from(got != want)));
        }
    }
    Ok((metrics, vec![]))
}

/// Metrics that cannot pass as stated, with the reason.
pub const KNOWN_UNATTAINABLE: &[(u8, &str, &str)] = &[(
    2,
    "spectrum a=1 m=1",
    "for m = 1 the l = 0 sector has nu = -1; e^{-|x|} is not in L^2(dx/|x|), so the top eigenvalue is -1, not 0",
)];

fn lowest_weights() -> Outcome {
    let mut bad = 0;
    for m in 1..=4u32 {
        for ell in 0..=10u32 {
            for a in [q(1), q(2)] {
                let s = SectorModel::formal(a.clone(), m, ell).map_err(err)?;
                let lw = s.lowest_weight();
                let formula = q(2 * ell as i64 + m as i64 - 2) / &a + q(1);
                let printed = if a == q(1) { q(2 * ell as i64 + m as i64 - 1) } else { q(ell as i64) + qr(m as i64, 2) };
                // h acts on the ground state by -2λ₀
                let from_spectrum = -(s.eigenvalue(0) * q(2));
                bad += usize::from(lw != formula || lw != printed || lw != from_spectrum);
            }
        }
    }
    Ok((vec![Metric::exact("mismatched_lowest_weights", bad)], vec![]))
}

fn semigroup() -> Outcome {
    let ts = [Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0), Complex64::new(1.0, 1.0)];
    let grid: Vec<f64> = (0..20).map(|i| 0.1 + 0.2 * i as f64).collect();
    let mut metrics = Vec::new();
    for (a, m, ell) in [(1, 3, 0), (2, 2, 1)] {
        let sector = SectorModel::new(q(a), m, ell).map_err(err)?;
        let rule = sector.rule(200).map_err(err)?;
        let f = LaguerreExpansion::from_basis(
            sector.clone(),
            60,
            &[(0, Complex64::new(1.0, 0.0)), (3, Complex64::new(0.5, 0.0)), (7, Complex64::new(0.0, -0.25))],
        );
        for t in ts {
            let kernel = SemigroupKernel::new(sector.clone(), t).map_err(err)?;
            let k_err = sup(grid.iter().flat_map(|&r| {
                let kernel = &kernel;
                let sector = &sector;
                grid.iter().map(move |&s| (kernel.value(r, s) - spectral_kernel_value(sector, t, 60, r, s)).norm())
            }));
            let query = SemigroupQuery::new(t, sector.clone(), 60).map_err(err)?;
            let spectral = semigroup_apply(&query, &f);
            let fe = |r: f64| f.eval(r);
            let applied = kernel.apply(&fe, &grid, &rule);
            let a_err = sup(grid.iter().zip(&applied.values).map(|(&r, v)| (v - spectral.eval(r)).norm()));
            let hs_q = kernel.hs_norm_sq_quadrature(&rule);
            let hs_s = hs_norm(&query, false).map_err(err)?.norm_sq;
            let tag = format!("({a},{m},{ell}) t={t}");
            metrics.push(Metric::at_most(format!("kernel_vs_spectral_sum {tag}"), k_err, 1e-8));
            metrics.push(Metric::at_most(format!("kernel_vs_semigroup_apply {tag}"), a_err, 1e-8));
            metrics.push(Metric::at_most(format!("hs_relative {tag}"), (hs_q - hs_s).abs() / hs_s, 1e-4));
        }
    }
    Ok((metrics, vec![]))
}

fn inversion() -> Outcome {
    let mut metrics = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut spec_err: f64 = 0.0;
    for (a, m, ell) in [(1, 3, 0), (1, 2, 2), (2, 2, 1), (3, 4, 1)] {
        let sector = SectorModel::new(q(a), m, ell).map_err(err)?;
        let op = InversionOperator::new(sector.clone(), Backend::Spectral);
        for _ in 0..5 {
            let coeffs: Vec<Complex64> = (0..40).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let e = LaguerreExpansion::new(sector.clone(), coeffs);
            let n0 = e.norm_sq();
            spec_err = spec_err.max((invert_spectral(&op, &e).norm_sq() - n0).abs() / n0);
        }
    }
    metrics.push(Metric::at_most("spectral_norm_preservation", spec_err, 1e-12));

    let ys: Vec<f64> = (0..20).map(|i| 0.05 + 0.4 * i as f64).collect();
    for lambda in [0.5, 1.0, 1.5] {
        let op = RankOneInversion::calibrate(lambda).map_err(err)?;
        let model = &op.model;
        let f = |x: f64| model.eigenfunction(13, x) + 0.5 * model.eigenfunction(0, x) - 0.3 * model.eigenfunction(4, x);
        let fin = op.sample(&f);
        let fout = op.apply_on_grid(&fin);
        let n_in = op.norm_sq(&fin);
        metrics.push(Metric::at_most(format!("rank1_norm λ={lambda}"), (op.norm_sq(&fout) - n_in).abs() / n_in, 1e-6));
        let mut eig: f64 = 0.0;
        for k in 0..20 {
            let out = op.apply_at(&op.sample(&|x| model.eigenfunction(k, x)), &ys);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            eig = eig.max(sup(ys.iter().zip(&out).map(|(&y, v)| (v - sign * model.eigenfunction(k, y)).norm())));
        }
        metrics.push(Metric::at_most(format!("rank1_vs_spectral λ={lambda}"), eig, 1e-6));
        // the equivalent sector has ν = ν₀, so F² = 1
        let ff = op.apply_at(&fout, &ys);
        metrics.push(Metric::at_most(format!("rank1_square λ={lambda}"), sup(ys.iter().zip(&ff).map(|(&y, v)| (v - f(y)).norm())), 1e-6));
        let c = model.c_mu.unwrap_or(f64::NAN);
        metrics.push(Metric::at_most(format!("rank1_c_mu_closed_form λ={lambda}"), (c - model.closed_form_c_mu()).abs(), 1e-6));
    }

    let grid: Vec<f64> = (0..20).map(|i| 0.1 + 0.2 * i as f64).collect();
    for (a, m, ell) in [(1, 3, 0), (2, 2, 1)] {
        let sector = SectorModel::new(q(a), m, ell).map_err(err)?;
        let op = InversionOperator::new(sector.clone(), Backend::Kernel);
        let rule = sector.rule(200).map_err(err)?;
        let mut worst: f64 = 0.0;
        for k in 0..20 {
            let g = |r: f64| Complex64::new(sector.eigenfunctions(k + 1, r)[k], 0.0);
            let out = invert_kernel(&op, &g, &grid, &rule);
            worst = worst.max(sup(grid.iter().zip(&out.values).map(|(&r, v)| (v - op.multiplier(k) * g(r)).norm())));
        }
        metrics.push(Metric::at_most(format!("sector_kernel_vs_spectral ({a},{m},{ell})"), worst, 1e-6));
    }

    let rho = [0.2, 0.7, 1.5, 3.0];
    for (m, ell) in [(1u32, 0u32), (2, 1), (3, 2)] {
        let f = move |r: f64| r.powi(ell as i32) * (1.0 + 0.5 * r * r) * (-r * r / 2.0).exp();
        let rep = folding_check(m, ell, &f, &rho).map_err(err)?;
        metrics.push(Metric::at_most(format!("folding_vs_hankel m={m} ℓ={ell}"), rep.sup_error, 1e-6));
    }
    Ok((metrics, vec![]))
}

fn mehler_and_limit() -> Outcome {
    let mut metrics = Vec::new();
    let sector = SectorModel::new(q(2), 1, 0).map_err(err)?;
    let pts = [0.2, 0.9, 1.7, 2.8];
    for t in [Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0), Complex64::new(1.0, 1.0)] {
        let kernel = SemigroupKernel::new(sector.clone(), t).map_err(err)?;
        let tau = t / 2.0;
        let e = sup(pts.iter().flat_map(|&r| {
            let kernel = &kernel;
            pts.iter().map(move |&s| (kernel.value(r, s) - mehler_kernel(tau, r, s) - mehler_kernel(tau, r, -s)).norm())
        }));
        metrics.push(Metric::at_most(format!("mehler t={t}"), e, 1e-8));
    }
    for (a, m, ell) in [(1, 3, 0), (2, 2, 1), (2, 1, 0)] {
        let s = SectorModel::new(q(a), m, ell).map_err(err)?;
        let mut worst: f64 = 0.0;
        for &r in &[0.3, 1.0, 2.0] {
            for &x in &[0.5, 1.5, 2.5] {
                let lim = boundary_limit_at_i_pi(&s, r, x).map_err(err)?;
                worst = worst.max((lim - e_i_pi_kernel_value(&s, r, x)).norm());
            }
        }
        metrics.push(Metric::at_most(format!("limit_at_i_pi ({a},{m},{ell})"), worst, 1e-5));
    }
    Ok((metrics, vec![]))
}

fn bargmann() -> Outcome {
    let mut metrics = Vec::new();
    for lambda in [0.5, 1.0, 1.5] {
        let op = BargmannOperator::calibrate(lambda).map_err(err)?;
        let rep = cayley_consistency(&op, 10);
        metrics.push(Metric::at_most(format!("leakage λ={lambda}"), sup(rep.leakage.iter().copied()), 1e-8));
        metrics.push(Metric::at_most(format!("isometry λ={lambda}"), rep.isometry_residual, 1e-6));
        let model = FockSpaceModel::new(lambda).map_err(err)?;
        let w = sup((0..=10).map(|n| (model.weight(n) - model.weight_by_quadrature(n)).abs() / model.weight(n)));
        metrics.push(Metric::at_most(format!("fock_moments λ={lambda}"), w, 1e-8));
    }
    Ok((metrics, vec![]))
}

fn fourth_order() -> Outcome {
    let mut metrics = Vec::new();
    let mut notes = Vec::new();

    // 𝒟 on monomials against the three-term closed form
    let mut bad = 0;
    for (mu, nu) in [(qr(1, 3), qr(2, 5)), (q(2), q(-1)), (qr(-1, 2), q(3))] {
        let p = FourthOrderParams::new(mu.clone(), nu.clone());
        for s in [q(4), qr(9, 2), q(7)] {
            let out = apply_d(&p, &ThetaSeries::monomial(s.clone(), 2)).map_err(err)?;
            let lead = &s * (&s + &mu) * (&s + &nu) * (&s + &mu + &nu);
            let mid = -(&s * (&s + &mu) + (&s + q(2) + &nu) * (&s + q(2) + &mu + &nu)) - p.constant();
            bad += usize::from(out.sigma != &s - q(2) || out.coeffs != vec![lead, mid, q(1)]);
        }
    }
    metrics.push(Metric::exact("d_on_monomials", bad));

    let mut nonzero = 0;
    for b in [
        [qr(1, 3), qr(1, 7), qr(2, 5), qr(-5, 11)],
        [q(0), qr(1, 2), qr(1, 3), qr(-1, 4)],
        [qr(3, 2), qr(-2, 3), qr(5, 7), qr(1, 9)],
    ] {
        let params = MeijerParams::new(b);
        for k in 0..4 {
            let u = frobenius_solution(&params, k, 40).map_err(err)?;
            let r = meijer_residual(&params, &u).map_err(err)?;
            nonzero += usize::from(r.n < 40 || !r.is_zero());
        }
    }
    metrics.push(Metric::exact("frobenius_residuals_N40", nonzero));

    let maxdeg = 6;
    let families = classify_families(&parameter_scan(-3, 3, maxdeg), maxdeg);
    let grid: Vec<Q> = (-6..=6).map(|n| qr(n, 2)).collect();
    let missing_laguerre = grid
        .iter()
        .filter(|mu| !(**mu < q(0) && mu.is_integer()))
        .filter(|mu| !families.iter().any(|f| &f.mu == *mu && f.nu == q(-1) && &f.alpha == *mu))
        .count();
    metrics.push(Metric::exact("laguerre_family_missing", missing_laguerre));
    let hermite = families.iter().filter(|f| f.hermite).count();
    metrics.push(Metric::exact("hermite_family_missing", usize::from(hermite == 0)));
    notes.push(format!("{} Laguerre families, {} Hermite", families.len(), hermite));

    let mut unreduced = 0;
    for mu in [qr(1, 2), q(0), q(2)] {
        let p = FourthOrderParams::new(mu, q(-1));
        for f in polynomial_eigenfunctions(&p, Gauge::Exp, maxdeg).into_iter().filter(|f| f.polynomial.len() > 2) {
            let u = ThetaSeries::polynomial(q(0), 1, f.polynomial).map_err(err)?;
            let rep = second_order_reduction_probe(&u, 1).map_err(err)?;
            let ok = match &rep.operator {
                Some(op) => annihilates(&op.to_theta(), &u).map_err(err)?,
                None => false,
            };
            unreduced += usize::from(!ok);
        }
    }
    metrics.push(Metric::exact("laguerre_without_reduction", unreduced));
    let gaussian = polynomial_eigenfunctions(&FourthOrderParams::new(qr(-1, 2), q(-1)), Gauge::Gaussian, 12);
    let not_hermite = gaussian
        .iter()
        .filter(|f| !proportional(&f.polynomial, &hermite_coeffs(f.polynomial.len() - 1)))
        .count();
    metrics.push(Metric::exact("gaussian_gauge_not_hermite", not_hermite + usize::from(gaussian.len() < 6)));
    Ok((metrics, notes))
}

pub struct ConeCase {
    pub name: &'static str,
    pub c1: RationalCone,
    pub c2: RationalCone,
    pub expect_trivial: bool,
}

/// Twelve pairs including cones that share only a boundary ray.
pub fn cone_suite() -> Vec<ConeCase> {
    let c = |g: &[&[i64]]| RationalCone::from_ints(g).expect("valid generators");
    let wedge = || c(&[&[1, 0], &[1, 1]]);
    let half = || c(&[&[1, 0], &[0, 1], &[0, -1]]);
    let octant = || c(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    let mut v = vec![
        ConeCase { name: "wedge vs outside ray", c1: wedge(), c2: c(&[&[0, 1]]), expect_trivial: true },
        ConeCase { name: "wedge vs boundary ray", c1: wedge(), c2: c(&[&[1, 0]]), expect_trivial: false },
        ConeCase { name: "wedge vs interior ray", c1: wedge(), c2: c(&[&[2, 1]]), expect_trivial: false },
        ConeCase { name: "half-plane vs opposite ray", c1: half(), c2: c(&[&[-1, 0]]), expect_trivial: true },
        ConeCase { name: "half-plane vs ray on its line", c1: half(), c2: c(&[&[0, -3]]), expect_trivial: false },
        ConeCase { name: "octant vs diagonal", c1: octant(), c2: c(&[&[1, 1, 1]]), expect_trivial: false },
        ConeCase { name: "octant vs mixed-sign ray", c1: octant(), c2: c(&[&[-1, 2, 3]]), expect_trivial: true },
        ConeCase {
            name: "face shared with a 3D wedge",
            c1: c(&[&[1, 0, 0], &[0, 1, 0]]),
            c2: c(&[&[1, 1, 0], &[0, 0, 1]]),
            expect_trivial: false,
        },
        ConeCase { name: "wedges sharing one ray", c1: wedge(), c2: c(&[&[1, 1], &[0, 1]]), expect_trivial: false },
        ConeCase { name: "disjoint wedges", c1: c(&[&[1, 0], &[2, 1]]), c2: c(&[&[1, 2], &[0, 1]]), expect_trivial: true },
    ];
    for ex in bundled_examples() {
        v.push(ConeCase {
            name: if ex.expect_trivial { "U(2), image cone zero" } else { "U(2), image cone the plane" },
            c1: ex.image,
            c2: ex.support.cone(),
            expect_trivial: ex.expect_trivial,
        });
    }
    v
}

fn cones() -> Outcome {
    let suite = cone_suite();
    let mut wrong = 0;
    let mut uncertified = 0;
    for case in &suite {
        let v = intersect_trivially(&case.c1, &case.c2).map_err(err)?;
        wrong += usize::from(v.trivial != case.expect_trivial);
        uncertified += usize::from(!v.certificate.verify(&case.c1, &case.c2, v.trivial));
    }
    Ok((
        vec![
            Metric::exact("suite_size_not_12", usize::from(suite.len() != 12)),
            Metric::exact("wrong_verdicts", wrong),
            Metric::exact("unverified_certificates", uncertified),
        ],
        vec![],
    ))
}
