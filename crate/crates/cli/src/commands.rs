use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::Path;
use std::time::Instant;

use polyszego_core::format::{parse_real, parse_zzbar, real_to_json, to_pretty};
use polyszego_core::numerics::{
    compare_symbolic_numeric, harmonic_szego_bergman_check, matched_disc, quadrature_floor,
    szbar_constancy_experiment, ExperimentReport,
};
use polyszego_core::suite::{self, SuiteConfig};
use polyszego_core::szego::SzegoReportJson;
use polyszego_core::{
    szego_project, tolerances as tol, verify_decomposition, Ellipse, Ellipsoid, Error,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, Command, DomainArgs, Experiment, Format, GridArgs, OutputArgs, PolyArgs};

pub struct Report {
    pub json: Value,
    pub text: String,
}

pub struct Outcome {
    pub report: Report,
    /// Set when a check failed; the process exits with status 1.
    pub failure: Option<String>,
}

#[derive(Debug)]
pub struct CliError {
    status: u8,
    message: String,
}

impl CliError {
    pub fn status(&self) -> u8 {
        self.status
    }

    fn usage(message: impl Into<String>) -> Self {
        Self {
            status: 2,
            message: format!("error: {}", message.into()),
        }
    }

    /// Wraps a library error; parse errors get the offending source line
    /// and a caret under the reported byte.
    fn from_core(err: Error, label: &str, src: Option<&str>) -> Self {
        match (&err, src) {
            (Error::Parse { pos, msg }, Some(src)) => {
                let (line_no, line, col) = locate(src, *pos);
                Self {
                    status: 2,
                    message: format!(
                        "error: parse error in {label} at line {line_no}, column {}: {msg}\n  {line}\n  {}^",
                        col + 1,
                        " ".repeat(col)
                    ),
                }
            }
            (Error::Internal(_), _) => Self {
                status: 1,
                message: format!("error: {err}"),
            },
            _ => Self {
                status: 2,
                message: format!("error in {label}: {err}"),
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// 1-based line number, the line itself, and the 0-based character column
/// of byte offset `pos`.
fn locate(src: &str, pos: usize) -> (usize, &str, usize) {
    let pos = pos.min(src.len());
    let start = src[..pos].rfind('\n').map_or(0, |i| i + 1);
    let end = src[pos..].find('\n').map_or(src.len(), |i| pos + i);
    let line_no = src[..start].matches('\n').count() + 1;
    (line_no, &src[start..end], src[start..pos].chars().count())
}

type CliResult<T> = Result<T, CliError>;

fn core<T>(r: polyszego_core::Result<T>, label: &str) -> CliResult<T> {
    r.map_err(|e| CliError::from_core(e, label, None))
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn poly_source(args: &PolyArgs) -> CliResult<(String, String)> {
    match (&args.poly, &args.poly_file) {
        (Some(s), _) => Ok((s.clone(), "--poly".into())),
        (None, Some(path)) => Ok((
            read_file(path)?.trim_end().to_string(),
            path.display().to_string(),
        )),
        (None, None) => Err(CliError::usage("one of --poly or --poly-file is required")),
    }
}

fn parse_ellipse(src: &str) -> CliResult<Ellipse> {
    Ellipse::parse(src).map_err(|e| CliError::from_core(e, "--ellipse", Some(src)))
}

fn grid_params(grid: &GridArgs) -> (usize, usize) {
    (
        grid.nodes.unwrap_or(tol::NODES),
        grid.degree.unwrap_or(tol::BASIS_DEGREE),
    )
}

fn check_lines(checks: &BTreeMap<String, bool>) -> String {
    checks
        .iter()
        .map(|(name, ok)| format!("check {name}: {}\n", if *ok { "pass" } else { "FAIL" }))
        .collect()
}

fn failed_checks(checks: &BTreeMap<String, bool>) -> Option<String> {
    let failed: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !**ok)
        .map(|(n, _)| n.as_str())
        .collect();
    (!failed.is_empty()).then(|| failed.join(", "))
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let timestamps = !cli.common.no_timestamp;
    match &cli.command {
        Command::Dirichlet { domain, poly } => dirichlet(domain, poly),
        Command::Szego { ellipse, poly } => szego(&ellipse.ellipse, poly),
        Command::Verify {
            ellipse,
            poly,
            grid,
            tol,
        } => verify(&ellipse.ellipse, poly, grid, *tol, timestamps),
        Command::Experiment(Experiment::Szbar { ellipse, grid }) => {
            szbar(&ellipse.ellipse, grid, timestamps)
        }
        Command::Experiment(Experiment::Harmonic {
            ellipse,
            poly,
            grid,
            tol,
        }) => harmonic(&ellipse.ellipse, poly, grid, *tol, timestamps),
        Command::Suite { seed, grid } => run_suite(*seed, grid, timestamps),
    }
}

fn dirichlet(domain: &DomainArgs, poly: &PolyArgs) -> CliResult<Outcome> {
    let ellipsoid = match (&domain.ellipse, &domain.ellipsoid) {
        (Some(src), _) => parse_ellipse(src)?.to_ellipsoid(),
        (None, Some(path)) => {
            let text = read_file(path)?;
            Ellipsoid::from_json(&text)
                .map_err(|e| CliError::from_core(e, &path.display().to_string(), Some(&text)))?
        }
        (None, None) => {
            return Err(CliError::usage(
                "one of --ellipse or --ellipsoid is required",
            ))
        }
    };
    let (src, label) = poly_source(poly)?;
    let p = parse_real(&src, ellipsoid.dim())
        .map_err(|e| CliError::from_core(e, &label, Some(&src)))?;

    let (u, degree_bound, determinant) = if p.degree() >= 2 {
        let m = (p.degree() - 2) as u32;
        let sys = core(ellipsoid.fischer_system(m), "Fischer system")?;
        let det = core(sys.determinant(), "Fischer system")?;
        let u = core(sys.extend(std::slice::from_ref(&p)), "Fischer system")?.remove(0);
        (u, Some(m), Some(det.to_canonical_string()))
    } else {
        (p.clone(), None, None)
    };
    let divisible = core(
        (&p - &u).divide_exact(&ellipsoid.defining_poly()),
        "division",
    )?
    .is_some();
    let checks = BTreeMap::from([
        ("harmonic".to_string(), u.is_harmonic()),
        ("boundary_agreement".to_string(), divisible),
        ("degree".to_string(), u.degree() <= p.degree()),
    ]);
    let text = format!("{}\n{}", to_pretty(&u), check_lines(&checks));
    let json = json!({
        "ellipsoid": ellipsoid.to_json(),
        "input": real_to_json(&p),
        "extension": real_to_json(&u),
        "extension_text": to_pretty(&u),
        "fischer_degree_bound": degree_bound,
        "fischer_determinant": determinant,
        "checks": checks,
    });
    Ok(Outcome {
        failure: failed_checks(&checks),
        report: Report { json, text },
    })
}

#[derive(Serialize)]
struct SzegoOutput {
    ellipse: polyszego_core::EllipseJson,
    #[serde(rename = "N")]
    n: u32,
    #[serde(flatten)]
    report: SzegoReportJson,
}

fn szego(ellipse: &str, poly: &PolyArgs) -> CliResult<Outcome> {
    let e = parse_ellipse(ellipse)?;
    let (src, label) = poly_source(poly)?;
    let f = parse_zzbar(&src).map_err(|err| CliError::from_core(err, &label, Some(&src)))?;
    let d = core(szego_project(&e, &f), "projection")?;
    let cert = core(verify_decomposition(&d, &e), "certificate")?;
    let report = SzegoReportJson::new(&d, &cert);
    let mut text = format!(
        "{}\n{}",
        report.projection_text,
        check_lines(&report.checks)
    );
    for c in cert.failures() {
        let _ = writeln!(text, "  {}: {}", c.name, c.detail);
    }
    let failure = failed_checks(&report.checks);
    let json = serde_json::to_value(SzegoOutput {
        ellipse: e.to_json(),
        n: d.n,
        report,
    })
    .expect("serializable report");
    Ok(Outcome {
        failure,
        report: Report { json, text },
    })
}

fn experiment_text(r: &ExperimentReport) -> String {
    let mut s = format!(
        "experiment: {}\nellipse: {},{},{},{}\nM: {}\nbasis_degree: {}\n",
        r.experiment, r.ellipse.a, r.ellipse.b, r.ellipse.h, r.ellipse.k, r.m, r.basis_degree
    );
    for (k, c) in r.coefficients.iter().enumerate() {
        let _ = writeln!(s, "c{k}: {:+.6e} {:+.6e}i", c.re, c.im);
    }
    for (name, v) in &r.deviations {
        let _ = writeln!(s, "{name}: {v:.6e}");
    }
    if let Some(c) = r.condition_estimate {
        let _ = writeln!(s, "condition_estimate: {c:.6e}");
    }
    if let Some(t) = r.runtime_ms {
        let _ = writeln!(s, "runtime_ms: {t:.3}");
    }
    s
}

fn experiment_outcome(
    mut report: ExperimentReport,
    start: Instant,
    timestamps: bool,
    failure: Option<String>,
) -> Outcome {
    if timestamps {
        report.runtime_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let text = experiment_text(&report);
    let json = serde_json::to_value(&report).expect("serializable report");
    Outcome {
        failure,
        report: Report { json, text },
    }
}

fn verify(
    ellipse: &str,
    poly: &PolyArgs,
    grid: &GridArgs,
    tol: f64,
    timestamps: bool,
) -> CliResult<Outcome> {
    let start = Instant::now();
    let e = parse_ellipse(ellipse)?;
    let (m, d) = grid_params(grid);
    let (src, label) = poly_source(poly)?;
    let f = parse_zzbar(&src).map_err(|err| CliError::from_core(err, &label, Some(&src)))?;
    let cmp = core(compare_symbolic_numeric(&e, &f, m, d), "comparison")?;
    let failure = (cmp.max_coeff_dev >= tol).then(|| {
        format!(
            "max coefficient deviation {:.3e} is not below {tol:e}",
            cmp.max_coeff_dev
        )
    });
    let report = ExperimentReport {
        experiment: "verify".into(),
        ellipse: e.to_json(),
        m,
        basis_degree: d,
        coefficients: cmp.numeric,
        deviations: BTreeMap::from([("max_coeff_dev".to_string(), cmp.max_coeff_dev)]),
        condition_estimate: Some(cmp.condition_estimate),
        runtime_ms: None,
    };
    Ok(experiment_outcome(report, start, timestamps, failure))
}

fn szbar(ellipse: &str, grid: &GridArgs, timestamps: bool) -> CliResult<Outcome> {
    let start = Instant::now();
    let e = parse_ellipse(ellipse)?;
    let (m, d) = grid_params(grid);
    let r = core(szbar_constancy_experiment(&e, m, d), "experiment")?;
    let mut deviations = BTreeMap::from([
        (
            "deviation_from_constant".to_string(),
            r.deviation_from_constant,
        ),
        (
            "deviation_from_span_1_z".to_string(),
            r.deviation_from_span_1_z,
        ),
    ]);
    let failure = if e.is_disc() {
        let floor = core(quadrature_floor(&e, m, d), "floor")?;
        let center_error = (r.coefficients[0] - e.center_f64().conj()).norm();
        deviations.insert("quadrature_floor".into(), floor);
        deviations.insert("center_error".into(), center_error);
        let ok = r.deviation_from_constant < tol::DISC_FLOOR_FACTOR * floor
            && center_error < tol::DISC_CENTER;
        (!ok).then(|| "S zbar on a disc is not constant to within the quadrature floor".to_string())
    } else {
        let floor = core(
            matched_disc(&e, m).and_then(|disc| quadrature_floor(&disc, m, d)),
            "floor",
        )?;
        deviations.insert("matched_disc_floor".into(), floor);
        let ok = r.deviation_from_constant > tol::ECCENTRIC_FACTOR * floor
            && r.deviation_from_span_1_z > tol::ECCENTRIC_FACTOR * floor;
        (!ok).then(|| "S zbar is not separated from span{1, z} by the expected margin".to_string())
    };
    let report = ExperimentReport {
        experiment: "szbar".into(),
        ellipse: e.to_json(),
        m,
        basis_degree: d,
        coefficients: r.coefficients,
        deviations,
        condition_estimate: Some(r.condition_estimate),
        runtime_ms: None,
    };
    Ok(experiment_outcome(report, start, timestamps, failure))
}

fn harmonic(
    ellipse: &str,
    poly: &PolyArgs,
    grid: &GridArgs,
    tol: f64,
    timestamps: bool,
) -> CliResult<Outcome> {
    let start = Instant::now();
    let e = parse_ellipse(ellipse)?;
    let (m, d) = grid_params(grid);
    let (src, label) = poly_source(poly)?;
    let p = parse_real(&src, 2).map_err(|err| CliError::from_core(err, &label, Some(&src)))?;
    let order = tol::AREA_ORDER.max(2 * (d + p.degree().max(0) as usize) + 4);
    let r = core(
        harmonic_szego_bergman_check(&e, &p, d, m, order),
        "harmonic check",
    )?;
    let failure = (r.max_deviation >= tol).then(|| {
        format!(
            "Szego and Bergman projections differ by {:.3e}",
            r.max_deviation
        )
    });
    let report = ExperimentReport {
        experiment: "harmonic".into(),
        ellipse: e.to_json(),
        m,
        basis_degree: d,
        coefficients: r.szego,
        deviations: BTreeMap::from([("max_deviation".to_string(), r.max_deviation)]),
        condition_estimate: None,
        runtime_ms: None,
    };
    Ok(experiment_outcome(report, start, timestamps, failure))
}

fn run_suite(seed: Option<u64>, grid: &GridArgs, timestamps: bool) -> CliResult<Outcome> {
    let defaults = SuiteConfig::default();
    let config = SuiteConfig {
        seed: seed.unwrap_or(defaults.seed),
        nodes: grid.nodes.unwrap_or(defaults.nodes),
        basis_degree: grid.degree.unwrap_or(defaults.basis_degree),
        area_order: defaults.area_order,
    };
    let results = suite::run_all(&config);
    let failed: Vec<String> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.id.to_string())
        .collect();
    let mut text: String = results.iter().map(|r| r.line() + "\n").collect();
    let _ = writeln!(
        text,
        "{} passed, {} failed",
        results.len() - failed.len(),
        failed.len()
    );
    let criteria: Vec<Value> = results
        .iter()
        .map(|r| {
            let mut v = json!({
                "id": r.id,
                "name": r.name,
                "passed": r.passed,
                "detail": r.detail,
                "budget_s": r.budget.as_secs(),
            });
            if timestamps {
                v["runtime_ms"] = json!(r.runtime.as_secs_f64() * 1e3);
            }
            v
        })
        .collect();
    let json = json!({
        "config": config,
        "criteria": criteria,
        "passed": results.len() - failed.len(),
        "failed": failed.len(),
    });
    let failure = (!failed.is_empty()).then(|| format!("criteria {}", failed.join(", ")));
    Ok(Outcome {
        failure,
        report: Report { json, text },
    })
}

pub fn emit(out: &OutputArgs, report: &Report) -> std::io::Result<()> {
    let body = match out.format {
        Format::Json => {
            serde_json::to_string_pretty(&report.json).expect("serializable report") + "\n"
        }
        Format::Text => report.text.clone(),
    };
    match &out.out {
        Some(path) => std::fs::write(path, body),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(body.as_bytes())
        }
    }
}
