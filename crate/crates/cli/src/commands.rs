use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use naivecov_core::asymptotic::{asymptotic_bound, asymptotic_coverage};
use naivecov_core::mcsim::draws::mc_coverage_c2;
use naivecov_core::mcsim::regression::{empirical_min_coverage, SimDesign};
use naivecov_core::specialfn::{norm_cdf, z_quantile};
use naivecov_core::{
    coverage_probability, finite_bound, rho_one_bound, AsymptoticProblem, BoundProblem, CoverageEvaluator,
    MethodKind, SearchConfig, SelectionMethod, Tolerance,
};

use crate::design::parse_design;
use crate::error::CliError;
use crate::grid::{check_rho, parse_m_list, parse_rho_grid, MValue};
use crate::{CommonArgs, Format, SimulateArgs};

const MIN_VERIFY_REPS: usize = 10_000;

fn resolve_method(name: &str, test_size: Option<f64>, alpha: f64) -> Result<SelectionMethod, CliError> {
    let kind: MethodKind = name.parse()?;
    let size = match kind {
        MethodKind::TTest => Some(test_size.unwrap_or(alpha)),
        _ => test_size,
    };
    Ok(SelectionMethod::new(kind, size)?)
}

fn check_alpha(alpha: f64) -> Result<(), CliError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CliError::invalid(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    Ok(())
}

/// Large-sample analogue of the rho = 1 bound: W degenerates at 1.
fn asymptotic_rho_one(alpha: f64, method: &SelectionMethod) -> Result<f64, CliError> {
    let d = method.asymptotic_d()?;
    let z = z_quantile(alpha)?;
    Ok(if d < z { 2.0 * (norm_cdf(z) - norm_cdf(d)) } else { 0.0 })
}

struct PointValue {
    bound: f64,
    /// `None` at rho = 1, where no gamma is involved.
    gamma_star: Option<f64>,
    quad_err: Option<f64>,
}

fn evaluate_point(
    method: &SelectionMethod,
    alpha: f64,
    p: u64,
    m: MValue,
    rho: f64,
    gamma: Option<f64>,
) -> Result<PointValue, CliError> {
    let tol = Tolerance::default();
    if rho == 1.0 {
        if gamma.is_some() {
            return Err(CliError::invalid("--gamma has no meaning at rho = 1"));
        }
        let bound = match m {
            MValue::Finite(m) => rho_one_bound(&BoundProblem::from_m(alpha, p, m, 1.0)?, method, tol)?,
            MValue::Inf => asymptotic_rho_one(alpha, method)?,
        };
        return Ok(PointValue { bound, gamma_star: None, quad_err: None });
    }
    match m {
        MValue::Finite(m) => {
            let pr = BoundProblem::from_m(alpha, p, m, rho)?;
            if let Some(g) = gamma {
                let c = coverage_probability(&pr, method, g, tol)?;
                return Ok(PointValue { bound: c.value, gamma_star: Some(g), quad_err: Some(c.quad_err) });
            }
            let b = finite_bound(&pr, method, tol, &SearchConfig::default())?;
            let quad_err = if b.at_limit {
                0.0
            } else {
                CoverageEvaluator::new(&pr, method, tol)?.evaluate(b.gamma_star)?.quad_err
            };
            Ok(PointValue { bound: b.bound, gamma_star: Some(b.gamma_star), quad_err: Some(quad_err) })
        }
        MValue::Inf => {
            let pr = AsymptoticProblem::for_method(alpha, rho, method)?;
            if let Some(g) = gamma {
                let v = asymptotic_coverage(&pr, g)?;
                return Ok(PointValue { bound: v, gamma_star: Some(g), quad_err: None });
            }
            let b = asymptotic_bound(&pr)?;
            Ok(PointValue { bound: b.bound, gamma_star: Some(b.gamma_star), quad_err: None })
        }
    }
}

fn emit(out: Option<&Path>, content: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn csv_bytes(header: &[String], rows: &[Vec<String>]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.into_inner().map_err(|e| CliError::Runtime(e.to_string()))
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut v = serde_json::to_vec_pretty(value)?;
    v.push(b'\n');
    Ok(v)
}

fn opt_str(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

#[derive(Serialize)]
struct BoundRecord {
    bound: f64,
    gamma_star: Option<f64>,
    method: String,
    alpha: f64,
    m: MValue,
    rho: f64,
    quad_err: Option<f64>,
}

pub fn bound(args: &CommonArgs, limit: bool) -> Result<(), CliError> {
    check_alpha(args.alpha)?;
    let method = resolve_method(args.method.as_deref().unwrap_or("cp"), args.test_size, args.alpha)?;
    let m = if limit {
        if args.m.is_some() {
            return Err(CliError::invalid("`limit` always uses m = inf; drop --m"));
        }
        MValue::Inf
    } else {
        let text = args.m.as_deref().ok_or_else(|| CliError::invalid("--m is required"))?;
        match parse_m_list(text)?.as_slice() {
            [m] => *m,
            _ => return Err(CliError::invalid("`bound` takes a single m; use `curve` for a list")),
        }
    };
    if args.rho_grid.is_some() {
        return Err(CliError::invalid("`bound` takes a single --rho; use `curve` for a grid"));
    }
    let rho = args.rho.ok_or_else(|| CliError::invalid("--rho is required"))?;
    check_rho(rho)?;
    let v = evaluate_point(&method, args.alpha, args.p.unwrap_or(2), m, rho, args.gamma)?;
    let rec = BoundRecord {
        bound: v.bound,
        gamma_star: v.gamma_star,
        method: method.to_string(),
        alpha: args.alpha,
        m,
        rho,
        quad_err: v.quad_err,
    };
    let bytes = match args.format.unwrap_or(Format::Json) {
        Format::Json => json_bytes(&rec)?,
        Format::Csv => csv_bytes(
            &["bound", "gamma_star", "method", "alpha", "m", "rho", "quad_err"].map(String::from),
            &[vec![
                rec.bound.to_string(),
                opt_str(rec.gamma_star),
                rec.method,
                rec.alpha.to_string(),
                rec.m.to_string(),
                rec.rho.to_string(),
                opt_str(rec.quad_err),
            ]],
        )?,
    };
    emit(args.out.as_deref(), &bytes)
}

#[derive(Serialize)]
struct CurveRow {
    method: String,
    alpha: f64,
    p: u64,
    m: MValue,
    rho: f64,
    bound: f64,
    /// A number, or `rho_one` for the closed-form rho = 1 row.
    gamma_star: String,
}

fn rho_values(args: &CommonArgs, default_grid: &str) -> Result<Vec<f64>, CliError> {
    match (args.rho, args.rho_grid.as_deref()) {
        (Some(r), _) => {
            check_rho(r)?;
            Ok(vec![r])
        }
        (None, Some(g)) => parse_rho_grid(g),
        (None, None) => parse_rho_grid(default_grid),
    }
}

pub fn curve(args: &CommonArgs) -> Result<(), CliError> {
    check_alpha(args.alpha)?;
    let method = resolve_method(args.method.as_deref().unwrap_or("cp"), args.test_size, args.alpha)?;
    let ms = parse_m_list(args.m.as_deref().unwrap_or("5,20,50,1000,inf"))?;
    let rhos = rho_values(args, "0:0.01:0.99")?;
    let p = args.p.unwrap_or(2);
    if ms.contains(&MValue::Inf) {
        method.asymptotic_d()?;
    }
    if let Some(MValue::Finite(m)) = ms.iter().find(|m| matches!(m, MValue::Finite(_))) {
        BoundProblem::from_m(args.alpha, p, *m, 0.0)?;
    }
    let points: Vec<(MValue, f64)> = ms.iter().flat_map(|&m| rhos.iter().map(move |&r| (m, r))).collect();
    let rows: Vec<CurveRow> = points
        .par_iter()
        .map(|&(m, rho)| {
            let v = evaluate_point(&method, args.alpha, p, m, rho, args.gamma)?;
            Ok(CurveRow {
                method: method.to_string(),
                alpha: args.alpha,
                p,
                m,
                rho,
                bound: v.bound,
                gamma_star: v.gamma_star.map(|g| g.to_string()).unwrap_or_else(|| "rho_one".into()),
            })
        })
        .collect::<Result<_, CliError>>()?;
    let bytes = match args.format.unwrap_or(Format::Csv) {
        Format::Json => json_bytes(&rows)?,
        Format::Csv => csv_bytes(
            &["method", "alpha", "p", "m", "rho", "bound", "gamma_star"].map(String::from),
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.method.clone(),
                        r.alpha.to_string(),
                        r.p.to_string(),
                        r.m.to_string(),
                        r.rho.to_string(),
                        r.bound.to_string(),
                        r.gamma_star.clone(),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
    };
    emit(args.out.as_deref(), &bytes)
}

#[derive(Serialize)]
struct VerifyPoint {
    method: String,
    p: u64,
    m: u64,
    rho: f64,
    gamma: f64,
    quadrature: f64,
    monte_carlo: f64,
    std_err: f64,
    /// |quadrature - monte_carlo| in standard errors
    z: f64,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    alpha: f64,
    reps: usize,
    seed: u64,
    all_pass: bool,
    points: Vec<VerifyPoint>,
}

pub fn verify(args: &CommonArgs) -> Result<(), CliError> {
    check_alpha(args.alpha)?;
    let reps = args.reps.unwrap_or(2_000_000);
    if reps < MIN_VERIFY_REPS {
        return Err(CliError::invalid(format!("verify needs --reps >= {MIN_VERIFY_REPS}, got {reps}")));
    }
    let methods: Vec<SelectionMethod> = match args.method.as_deref() {
        Some(name) => vec![resolve_method(name, args.test_size, args.alpha)?],
        None => vec![
            SelectionMethod::CP,
            SelectionMethod::ADJR2,
            SelectionMethod::AIC,
            SelectionMethod::BIC,
            SelectionMethod::t_test(args.test_size.unwrap_or(0.05))?,
        ],
    };
    let ms: Vec<u64> = parse_m_list(args.m.as_deref().unwrap_or("5,20"))?
        .into_iter()
        .map(|m| match m {
            MValue::Finite(m) => Ok(m),
            MValue::Inf => Err(CliError::invalid("verify runs at finite m only")),
        })
        .collect::<Result<_, _>>()?;
    let rhos = match (args.rho, args.rho_grid.as_deref()) {
        (None, None) => vec![0.0, 0.5, 0.9],
        _ => rho_values(args, "")?,
    };
    if rhos.contains(&1.0) {
        return Err(CliError::invalid("verify needs rho < 1"));
    }
    let gammas = args.gamma.map(|g| vec![g]).unwrap_or_else(|| vec![0.0, 1.0, 3.0]);
    let p = args.p.unwrap_or(10);

    let mut points = Vec::new();
    let mut index = 0u64;
    for method in &methods {
        for &m in &ms {
            for &rho in &rhos {
                let pr = BoundProblem::from_m(args.alpha, p, m, rho)?;
                for &gamma in &gammas {
                    let q = coverage_probability(&pr, method, gamma, Tolerance::default())?;
                    let mc = mc_coverage_c2(&pr, method, gamma, reps, args.seed.wrapping_add(index))?;
                    index += 1;
                    let diff = (q.value - mc.estimate).abs();
                    let z = if mc.std_err > 0.0 { diff / mc.std_err } else if diff == 0.0 { 0.0 } else { f64::INFINITY };
                    points.push(VerifyPoint {
                        method: method.to_string(),
                        p,
                        m,
                        rho,
                        gamma,
                        quadrature: q.value,
                        monte_carlo: mc.estimate,
                        std_err: mc.std_err,
                        z,
                        pass: z <= 3.0,
                    });
                }
            }
        }
    }
    let failed: Vec<String> = points
        .iter()
        .filter(|p| !p.pass)
        .map(|p| format!("{} m={} rho={} gamma={} ({:.2} SE)", p.method, p.m, p.rho, p.gamma, p.z))
        .collect();
    let report = VerifyReport { alpha: args.alpha, reps, seed: args.seed, all_pass: failed.is_empty(), points };
    let bytes = match args.format.unwrap_or(Format::Json) {
        Format::Json => json_bytes(&report)?,
        Format::Csv => csv_bytes(
            &["method", "p", "m", "rho", "gamma", "quadrature", "monte_carlo", "std_err", "z", "pass"].map(String::from),
            &report
                .points
                .iter()
                .map(|p| {
                    vec![
                        p.method.clone(),
                        p.p.to_string(),
                        p.m.to_string(),
                        p.rho.to_string(),
                        p.gamma.to_string(),
                        p.quadrature.to_string(),
                        p.monte_carlo.to_string(),
                        p.std_err.to_string(),
                        p.z.to_string(),
                        p.pass.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
    };
    emit(args.out.as_deref(), &bytes)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("points outside 3 SE: {}", failed.join("; "))))
    }
}

#[derive(Serialize)]
struct SimulateRow {
    method: String,
    alpha: f64,
    n: usize,
    p: usize,
    q: usize,
    /// `full` (all subsets of the selectable coefficients) or `last_only`
    family: &'static str,
    beta: Vec<f64>,
    reps: usize,
    coverage: f64,
    std_err: f64,
    seed: u64,
}

pub fn simulate(args: &SimulateArgs) -> Result<(), CliError> {
    check_alpha(args.alpha)?;
    let method = resolve_method(&args.method, args.test_size, args.alpha)?;
    let text = fs::read_to_string(&args.design)
        .map_err(|e| CliError::invalid(format!("cannot read design file {}: {e}", args.design.display())))?;
    let file = parse_design(&text)?;
    if file.q < 1 || file.q >= file.p {
        return Err(CliError::invalid(format!("need 1 <= q < p, got q={} p={}", file.q, file.p)));
    }
    let design = SimDesign::new(
        file.x,
        file.a,
        file.q,
        nalgebra::DVector::from_column_slice(&file.betas[0]),
        file.sigma,
    )?;
    let table = empirical_min_coverage(&design, &method, args.alpha, &file.betas, args.reps, args.seed)?;
    let mut rows = Vec::new();
    for r in table {
        for (family, est) in [("full", r.full), ("last_only", r.restricted)] {
            rows.push(SimulateRow {
                method: method.to_string(),
                alpha: args.alpha,
                n: file.n,
                p: file.p,
                q: file.q,
                family,
                beta: r.beta.clone(),
                reps: args.reps,
                coverage: est.estimate,
                std_err: est.std_err,
                seed: args.seed,
            });
        }
    }
    let bytes = match args.format {
        Format::Json => json_bytes(&rows)?,
        Format::Csv => {
            let mut header: Vec<String> = ["method", "alpha", "n", "p", "q", "family"].map(String::from).to_vec();
            header.extend((1..=file.p).map(|j| format!("beta{j}")));
            header.extend(["reps", "coverage", "std_err", "seed"].map(String::from));
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut v = vec![
                        r.method.clone(),
                        r.alpha.to_string(),
                        r.n.to_string(),
                        r.p.to_string(),
                        r.q.to_string(),
                        r.family.to_string(),
                    ];
                    v.extend(r.beta.iter().map(f64::to_string));
                    v.extend([r.reps.to_string(), r.coverage.to_string(), r.std_err.to_string(), r.seed.to_string()]);
                    v
                })
                .collect();
            csv_bytes(&header, &body)?
        }
    };
    emit(args.out.as_deref(), &bytes)
}
