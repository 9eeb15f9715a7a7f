//! `minrep` command-line front end.
//!
//! Exit codes: 0 success, 1 validation or usage error, 2 numerical acceptance
//! failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use minrep::bargmann::{cayley_consistency, BargmannOperator};
use minrep::catalog;
use minrep::cones::{intersect_trivially, parse_vector, vector_strings, AsymptoticSupport, RationalCone};
use minrep::fourth_order::{
    apply_d, classify_families, frobenius_solution, meijer_residual, parameter_scan, polynomial_eigenfunctions,
    FourthOrderParams, Gauge, MeijerParams, ThetaSeries,
};
use minrep::inversion::{Backend, InversionOperator};
use minrep::quadrature::NodeCache;
use minrep::radial_symbolic::{commutator_check, lattice_test_set, Sl2Triple};
use minrep::rational::{fmt_q, parse_q, q_to_f64, Q};
use minrep::spectral::{
    hs_norm, merged_spectrum, semigroup_apply, spectrum, LaguerreExpansion, SectorModel, SemigroupKernel,
    SemigroupQuery, DEFAULT_NODES,
};
use minrep::verify;
use num_complex::Complex64;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "minrep", version, about = "Schrödinger-model computations for minimal representations")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Quadrature node cache directory (overrides MINREP_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct SectorArgs {
    /// Deformation parameter, e.g. 1, 2, 1/2.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = 0)]
    ell: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues of D_a, merged over ℓ unless --ell is given.
    Spectrum {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Exact sl₂ commutator residuals of the deformed triple.
    Commutators {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 3)]
        ell_max: u32,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
    },
    /// Unitary inversion operator on a sector function.
    Transform {
        #[command(flatten)]
        sector: SectorArgs,
        #[arg(long, value_enum, default_value_t = BackendArg::Spectral)]
        backend: BackendArg,
        /// Real coefficients in the basis g_0, g_1, ...
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        coeffs: String,
        /// Comma-separated radii.
        #[arg(long, default_value = "0.5,1,1.5,2")]
        grid: String,
        #[arg(long, default_value_t = 60)]
        truncation: usize,
    },
    /// Holomorphic semigroup e^{tD_a} on a sector function.
    Semigroup {
        #[command(flatten)]
        sector: SectorArgs,
        /// `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, value_enum, default_value_t = BackendArg::Spectral)]
        backend: BackendArg,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, default_value = "0.5,1,1.5,2")]
        grid: String,
        #[arg(long, default_value_t = 60)]
        truncation: usize,
    },
    /// Rank-one Bargmann transform consistency report.
    Bargmann {
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
    },
    /// Exact θ-calculus for the fourth-order operator.
    FourthOrder {
        #[command(subcommand)]
        action: FourthOrderAction,
    },
    /// Discrete-decomposability test `C1 ∩ C2 = {0}`.
    ConeCheck {
        /// JSON cone file: {"dim": n, "generators": [["p/q", ...], ...]}.
        #[arg(long)]
        c1: PathBuf,
        #[arg(long, conflicts_with = "beta")]
        c2: Option<PathBuf>,
        /// Asymptotic support ray, e.g. "1,0".
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
    },
    /// Families of simple Lie algebras with an L²(Ξ) model.
    Catalog {
        #[arg(long)]
        family: Option<String>,
    },
    /// Full acceptance suite.
    Verify {
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Subcommand)]
enum FourthOrderAction {
    /// Apply 𝒟_{μ,ν} to a series read from JSON.
    Apply {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long)]
        series: PathBuf,
    },
    /// Polynomial eigenfunctions up to a degree.
    Eigen {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value_t = 6)]
        maxdeg: usize,
        #[arg(long, value_enum, default_value_t = GaugeArg::Exp)]
        gauge: GaugeArg,
    },
    /// Frobenius solution of ∏(θ-b_j)u = xu and its residual.
    Frobenius {
        /// Four comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 40)]
        n: usize,
    },
    /// Scan (μ,ν) on a half-integer grid for Laguerre families.
    Scan {
        #[arg(long, default_value_t = -3, allow_negative_numbers = true)]
        lo: i64,
        #[arg(long, default_value_t = 3)]
        hi: i64,
        #[arg(long, default_value_t = 6)]
        maxdeg: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Spectral,
    Kernel,
}

#[derive(Clone, Copy, ValueEnum)]
enum GaugeArg {
    Exp,
    Gaussian,
}

/// A validation error; always exit code 1.
struct Failure {
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self { message: message.into() }
    }
}

fn invalid<E: std::fmt::Display>(e: E) -> Failure {
    Failure::invalid(e.to_string())
}

/// JSON document, an optional numeric vector for CSV, and whether a
/// numerical check failed.
struct Report {
    json: Value,
    series: Option<Vec<Complex64>>,
    failed: bool,
}

impl Report {
    fn new(json: Value) -> Self {
        Self { json, series: None, failed: false }
    }

    fn with_series(mut self, s: Vec<Complex64>) -> Self {
        self.series = Some(s);
        self
    }
}

fn rational(s: &str, what: &str) -> Result<Q, Failure> {
    parse_q(s.trim()).ok_or_else(|| Failure::invalid(format!("{what}: cannot parse {s:?} as a rational")))
}

fn floats(s: &str, what: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| Failure::invalid(format!("{what}: bad number {x:?}"))))
        .collect()
}

fn complex(s: &str) -> Result<Complex64, Failure> {
    let v = floats(s, "--t")?;
    match v[..] {
        [re] => Ok(Complex64::new(re, 0.0)),
        [re, im] => Ok(Complex64::new(re, im)),
        _ => Err(Failure::invalid("--t takes `re` or `re,im`")),
    }
}

fn sector(args: &SectorArgs) -> Result<SectorModel, Failure> {
    SectorModel::new(rational(&args.a, "--a")?, args.m, args.ell).map_err(invalid)
}

fn q_json(v: &Q) -> Value {
    if v.is_integer() {
        if let Ok(n) = i64::try_from(v.to_integer()) {
            return json!(n);
        }
    }
    json!(q_to_f64(v))
}

fn expansion(s: &SectorModel, coeffs: &str, n: usize) -> Result<LaguerreExpansion, Failure> {
    let c = floats(coeffs, "--coeffs")?;
    if c.len() > n {
        return Err(Failure::invalid("more coefficients than the truncation"));
    }
    let entries: Vec<(usize, Complex64)> = c.iter().enumerate().map(|(k, &v)| (k, Complex64::new(v, 0.0))).collect();
    Ok(LaguerreExpansion::from_basis(s.clone(), n, &entries))
}

fn cx_json(v: &[Complex64]) -> Value {
    json!(v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Spectrum { a, m, ell, count } => {
            let a = rational(a, "--a")?;
            let eig = match ell {
                Some(l) => spectrum(&SectorModel::new(a, *m, *l).map_err(invalid)?, *count),
                None => merged_spectrum(&a, *m, *count).map_err(invalid)?,
            };
            let series = eig.iter().map(|v| Complex64::new(q_to_f64(v), 0.0)).collect();
            Ok(Report::new(json!({
                "eigenvalues": eig.iter().map(q_json).collect::<Vec<_>>(),
                "exact": eig.iter().map(fmt_q).collect::<Vec<_>>(),
            }))
            .with_series(series))
        }
        Command::Commutators { a, m, ell_max, kmax } => {
            let a = rational(a, "--a")?;
            let triple = Sl2Triple::deformed(a.clone(), *m).map_err(invalid)?;
            let mut checked = 0;
            let mut nonzero = Vec::new();
            for ell in 0..=*ell_max {
                let tests = lattice_test_set(&a, *m, ell, &a.recip(), *kmax);
                let rep = commutator_check(&triple, &tests).map_err(invalid)?;
                checked += rep.residuals.len();
                for r in rep.residuals.iter().filter(|r| !r.zero) {
                    nonzero.push(json!({"ell": ell, "relation": r.relation, "test": r.test_index, "residual": r.residual.to_string()}));
                }
            }
            let pass = nonzero.is_empty();
            let mut r = Report::new(json!({
                "verdict": if pass { "PASS" } else { "FAIL" },
                "checked": checked,
                "nonzero": nonzero,
            }));
            r.failed = !pass;
            Ok(r)
        }
        Command::Transform { sector: sa, backend, coeffs, grid, truncation } => {
            let s = sector(sa)?;
            let grid = floats(grid, "--grid")?;
            let e = expansion(&s, coeffs, *truncation)?;
            let be = match backend {
                BackendArg::Spectral => Backend::Spectral,
                BackendArg::Kernel => Backend::Kernel,
            };
            let op = InversionOperator::new(s.clone(), be);
            let rule = s.rule(DEFAULT_NODES).map_err(invalid)?;
            let f = |r: f64| e.eval(r);
            let out = op.apply(&f, &grid, *truncation, &rule).map_err(invalid)?;
            Ok(Report::new(json!({
                "backend": match be { Backend::Spectral => "spectral", Backend::Kernel => "kernel" },
                "phase": [op.phase.re, op.phase.im],
                "square": [op.square().re, op.square().im],
                "grid": grid,
                "values": cx_json(&out.values),
            }))
            .with_series(out.values))
        }
        Command::Semigroup { sector: sa, t, backend, coeffs, grid, truncation } => {
            let s = sector(sa)?;
            let t = complex(t)?;
            let grid = floats(grid, "--grid")?;
            let query = SemigroupQuery::new(t, s.clone(), *truncation).map_err(invalid)?;
            let e = expansion(&s, coeffs, *truncation)?;
            let values = match backend {
                BackendArg::Spectral => {
                    let out = semigroup_apply(&query, &e);
                    grid.iter().map(|&r| out.eval(r)).collect::<Vec<_>>()
                }
                BackendArg::Kernel => {
                    let k = SemigroupKernel::new(s.clone(), t).map_err(invalid)?;
                    let rule = s.rule(DEFAULT_NODES).map_err(invalid)?;
                    k.apply(&|r| e.eval(r), &grid, &rule).values
                }
            };
            let hs = hs_norm(&query, false).ok().map(|h| h.norm);
            Ok(Report::new(json!({ "t": [t.re, t.im], "grid": grid, "values": cx_json(&values), "hsNorm": hs }))
                .with_series(values))
        }
        Command::Bargmann { lambda, kmax } => {
            let op = BargmannOperator::calibrate(*lambda).map_err(invalid)?;
            let rep = cayley_consistency(&op, *kmax);
            let series = rep.leakage.iter().map(|&l| Complex64::new(l, 0.0)).collect();
            let mut r = Report::new(serde_json::to_value(&rep).map_err(invalid)?).with_series(series);
            r.failed = rep.leakage.iter().any(|&l| l > 1e-8) || rep.isometry_residual > 1e-6;
            Ok(r)
        }
        Command::FourthOrder { action } => fourth_order(action),
        Command::ConeCheck { c1, c2, beta } => {
            let c1 = RationalCone::load(c1).map_err(invalid)?;
            let c2 = match (c2, beta) {
                (Some(p), None) => RationalCone::load(p).map_err(invalid)?,
                (None, Some(b)) => {
                    let v = parse_vector(b).map_err(invalid)?;
                    AsymptoticSupport::ray(v).map_err(invalid)?.cone()
                }
                _ => return Err(Failure::invalid("give exactly one of --c2 or --beta")),
            };
            let v = intersect_trivially(&c1, &c2).map_err(invalid)?;
            let mut doc = json!({ "trivial": v.trivial, "certificate": v.certificate });
            let mut series = Vec::new();
            if let Some(w) = v.witness() {
                doc["witness"] = json!(vector_strings(w));
                series = w.iter().map(|x| Complex64::new(q_to_f64(x), 0.0)).collect();
            }
            let mut r = Report::new(doc).with_series(series);
            r.failed = !v.certificate.verify(&c1, &c2, v.trivial);
            Ok(r)
        }
        Command::Catalog { family } => {
            let doc = match family {
                Some(tag) => serde_json::to_value(catalog::query_tag(tag).map_err(invalid)?),
                None => serde_json::to_value(catalog::all()),
            }
            .map_err(invalid)?;
            Ok(Report::new(json!({ "families": doc })))
        }
        Command::Verify { criterion } => {
            let reports = match criterion {
                Some(id) => vec![verify::run(*id).ok_or_else(|| Failure::invalid("criterion must be 1..=9"))?],
                None => verify::run_all(),
            };
            for r in &reports {
                eprintln!("{r}");
            }
            let series = reports.iter().map(|r| Complex64::new(if r.pass { 1.0 } else { 0.0 }, 0.0)).collect();
            let mut out = Report::new(json!({ "criteria": reports })).with_series(series);
            out.failed = reports.iter().any(|r| !r.pass);
            Ok(out)
        }
    }
}

fn fourth_order(action: &FourthOrderAction) -> Result<Report, Failure> {
    let params = |mu: &str, nu: &str| Ok::<_, Failure>(FourthOrderParams::new(rational(mu, "--mu")?, rational(nu, "--nu")?));
    let q_series = |v: &[Q]| v.iter().map(|x| Complex64::new(q_to_f64(x), 0.0)).collect::<Vec<_>>();
    match action {
        FourthOrderAction::Apply { mu, nu, series } => {
            let p = params(mu, nu)?;
            let text = fs::read_to_string(series).map_err(invalid)?;
            let u: ThetaSeries = serde_json::from_str(&text).map_err(invalid)?;
            let out = apply_d(&p, &u).map_err(invalid)?;
            let s = q_series(&out.coeffs);
            Ok(Report::new(serde_json::to_value(&out).map_err(invalid)?).with_series(s))
        }
        FourthOrderAction::Eigen { mu, nu, maxdeg, gauge } => {
            let g = match gauge {
                GaugeArg::Exp => Gauge::Exp,
                GaugeArg::Gaussian => Gauge::Gaussian,
            };
            let fs = polynomial_eigenfunctions(&params(mu, nu)?, g, *maxdeg);
            let s = fs.iter().map(|f| Complex64::new(q_to_f64(&f.eigenvalue), 0.0)).collect();
            Ok(Report::new(json!({ "eigenfunctions": fs })).with_series(s))
        }
        FourthOrderAction::Frobenius { b, k, n } => {
            let b: Vec<Q> = b.split(',').map(|x| rational(x, "--b")).collect::<Result<_, _>>()?;
            let b: [Q; 4] = b.try_into().map_err(|_| Failure::invalid("--b takes four rationals"))?;
            if *k > 3 {
                return Err(Failure::invalid("--k must be 0..=3"));
            }
            let mp = MeijerParams::new(b);
            let u = frobenius_solution(&mp, *k, *n).map_err(invalid)?;
            let r = meijer_residual(&mp, &u).map_err(invalid)?;
            let s = q_series(&u.coeffs);
            let mut rep = Report::new(json!({ "series": u, "residualZero": r.is_zero(), "residualN": r.n })).with_series(s);
            rep.failed = !r.is_zero();
            Ok(rep)
        }
        FourthOrderAction::Scan { lo, hi, maxdeg } => {
            if lo > hi {
                return Err(Failure::invalid("--lo must not exceed --hi"));
            }
            let hits = parameter_scan(*lo, *hi, *maxdeg);
            let families = classify_families(&hits, *maxdeg);
            Ok(Report::new(json!({ "families": families, "hits": hits.len() })))
        }
    }
}

fn csv(series: &[Complex64]) -> String {
    let mut s = String::from("index,re,im\n");
    for (i, z) in series.iter().enumerate() {
        s.push_str(&format!("{i},{},{}\n", z.re, z.im));
    }
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(dir) = &cli.cache_dir {
        NodeCache::configure_global(Some(dir.clone()));
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(1);
        }
    };
    let text = match cli.format {
        Format::Json => {
            let mut doc = json!({ "schema": "1" });
            if let (Value::Object(base), Value::Object(extra)) = (&mut doc, report.json) {
                base.extend(extra);
            }
            format!("{doc}\n")
        }
        Format::Csv => match &report.series {
            Some(s) => csv(s),
            None => {
                eprintln!("error: this subcommand has no numeric series for CSV output");
                return ExitCode::from(1);
            }
        },
    };
    let written = match &cli.output {
        Some(p) => fs::write(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(if report.failed { 2 } else { 0 })
}
