//! The acceptance suite: ten end-to-end checks over the exact and numerical
//! pipelines, each with a runtime budget.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gauss::GaussRat;
use crate::numerics::{
    compare_symbolic_numeric, harmonic_szego_bergman_check, inner_product, matched_disc,
    numerical_bergman, quadrature_floor, szbar_constancy_experiment, AreaGrid, BoundaryGrid,
    HolomorphicBasis,
};
use crate::poly::{zzbar_to_xy, PolyZZbar};
use crate::random;
use crate::szego::{kernel_membership, operator_a, szego_project, verify_decomposition, Ellipse};
use crate::tolerances as tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub nodes: usize,
    pub basis_degree: usize,
    pub area_order: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: tol::SEED,
            nodes: tol::NODES,
            basis_degree: tol::BASIS_DEGREE,
            area_order: tol::AREA_ORDER,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(with = "millis")]
    pub runtime: Duration,
    #[serde(with = "millis")]
    pub budget: Duration,
}

impl CriterionResult {
    /// One-line summary, e.g. `[PASS]  1 closed-form projection (0.01 s): ...`.
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {} ({:.2} s / {} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.runtime.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

mod millis {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64() * 1e3)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)? / 1e3))
    }
}

pub const CRITERIA: [(u32, &str); 10] = [
    (1, "closed-form weighted projection"),
    (2, "projection degree and holomorphy"),
    (3, "weighted orthogonality"),
    (4, "symbolic/numeric agreement"),
    (5, "Dirichlet exactness on ellipsoids"),
    (6, "kernel of A"),
    (7, "constancy of S zbar"),
    (8, "Bergman projection"),
    (9, "Szego vs Bergman for harmonic input"),
    (10, "perimeter convergence"),
];

/// Runs one criterion by number.
pub fn run(id: u32, config: &SuiteConfig) -> Option<CriterionResult> {
    let name = CRITERIA.iter().find(|(i, _)| *i == id)?.1;
    let seed = config.seed.wrapping_add(u64::from(id));
    let start = Instant::now();
    let outcome = match id {
        1 => closed_form(config),
        2 => degree_and_holomorphy(seed),
        3 => weighted_orthogonality(config),
        4 => symbolic_numeric(config),
        5 => dirichlet_exactness(seed),
        6 => kernel(seed),
        7 => constancy(config),
        8 => bergman(seed, config),
        9 => harmonic(seed, config),
        10 => perimeter(),
        _ => unreachable!(),
    };
    let runtime = start.elapsed();
    let budget = tol::runtime_budget(id);
    let (mut passed, mut detail) = match outcome {
        Ok(pair) => pair,
        Err(e) => (false, format!("error: {e}")),
    };
    if runtime > budget {
        passed = false;
        detail.push_str("; over the runtime budget");
    }
    Some(CriterionResult {
        id,
        name: name.to_string(),
        passed,
        detail,
        runtime,
        budget,
    })
}

/// Runs all criteria in order.
pub fn run_all(config: &SuiteConfig) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .filter_map(|(id, _)| run(*id, config))
        .collect()
}

type Outcome = Result<(bool, String)>;

/// Shared random input for criteria 3 and 4: twenty degree-≤6 polynomials.
fn twenty_random(config: &SuiteConfig) -> Vec<PolyZZbar> {
    let mut rng = random::rng(config.seed.wrapping_add(34));
    (0..20).map(|_| random::zzbar_poly(&mut rng, 6)).collect()
}

fn closed_form(config: &SuiteConfig) -> Outcome {
    let mut worst_numeric = 0.0f64;
    for (a, b) in [(2, 1), (3, 2), (5, 4), (1, 1)] {
        let e = Ellipse::centered(a, b);
        let d = szego_project(&e, &PolyZZbar::zbar())?;
        let expected = PolyZZbar::zz(1, 0, GaussRat::ratio(a * a - b * b, a * a + b * b));
        if d.projection != expected {
            return Ok((
                false,
                format!("({a},{b}): got {} expected {expected}", d.projection),
            ));
        }
        let cmp =
            compare_symbolic_numeric(&e, &PolyZZbar::zbar(), config.nodes, config.basis_degree)?;
        worst_numeric = worst_numeric.max(cmp.max_coeff_dev);
    }
    Ok((
        worst_numeric < tol::SYMBOLIC_NUMERIC,
        format!("exact on 4 ellipses; numerical confirmation within {worst_numeric:.2e}"),
    ))
}

fn degree_and_holomorphy(seed: u64) -> Outcome {
    let e = Ellipse::centered(2, 1);
    let mut rng = random::rng(seed);
    for i in 0..100 {
        let f = random::zzbar_poly(&mut rng, 6);
        let d = szego_project(&e, &f)?;
        let cert = verify_decomposition(&d, &e)?;
        if !d.projection.is_holomorphic() || d.projection.degree() > f.degree() || !cert.passed() {
            let failed: Vec<&str> = cert.failures().map(|c| c.name.as_str()).collect();
            return Ok((false, format!("input #{i} {f}: failed {failed:?}")));
        }
    }
    Ok((
        true,
        "100 inputs: holomorphic, degree bounded, certificate exact".into(),
    ))
}

fn weighted_orthogonality(config: &SuiteConfig) -> Outcome {
    let e = Ellipse::centered(2, 1);
    let grid = BoundaryGrid::new(&e, config.nodes, true)?;
    let powers: Vec<Vec<Complex64>> = (0..=tol::ORTHOGONALITY_MAX_POWER)
        .map(|k| grid.z.iter().map(|z| z.powu(k)).collect())
        .collect();
    let mut worst = 0.0f64;
    for f in twenty_random(config) {
        let h = szego_project(&e, &f)?.projection;
        let residual: Vec<Complex64> = grid
            .z
            .iter()
            .map(|&z| f.evaluate(z) - h.evaluate(z))
            .collect();
        for zk in &powers {
            worst = worst.max(inner_product(&residual, zk, &grid)?.norm());
        }
    }
    Ok((
        worst < tol::WEIGHTED_ORTHOGONALITY,
        format!(
            "max |<f - h, z^k>_w| = {worst:.2e} over 20 inputs, k <= {}",
            tol::ORTHOGONALITY_MAX_POWER
        ),
    ))
}

fn symbolic_numeric(config: &SuiteConfig) -> Outcome {
    let e = Ellipse::centered(2, 1);
    let mut worst = 0.0f64;
    let mut worst_cond = 0.0f64;
    for f in twenty_random(config) {
        let cmp = compare_symbolic_numeric(&e, &f, config.nodes, config.basis_degree)?;
        worst = worst.max(cmp.max_coeff_dev);
        worst_cond = worst_cond.max(cmp.condition_estimate);
    }
    Ok((
        worst < tol::SYMBOLIC_NUMERIC,
        format!(
            "max coefficient deviation {worst:.2e} over 20 inputs (condition {worst_cond:.1e})"
        ),
    ))
}

fn dirichlet_exactness(seed: u64) -> Outcome {
    let mut rng = random::rng(seed);
    for i in 0..50 {
        let dim = if rng.random_bool(0.5) { 2 } else { 3 };
        let ellipsoid = random::ellipsoid(&mut rng, dim);
        let p = random::real_poly(&mut rng, dim, 8);
        let u = ellipsoid.harmonic_extension(&p)?;
        let divisible = (&p - &u)
            .divide_exact(&ellipsoid.defining_poly())?
            .is_some();
        if !u.is_harmonic() || !divisible {
            return Ok((
                false,
                format!(
                    "input #{i} (n = {dim}, degree {}): harmonic {}, divisible {divisible}",
                    p.degree(),
                    u.is_harmonic()
                ),
            ));
        }
    }
    Ok((
        true,
        "50 inputs: extension harmonic and r | p - Ep exactly".into(),
    ))
}

fn kernel(seed: u64) -> Outcome {
    let e = Ellipse::centered(2, 1);
    let r = e.defining_poly_zzbar();
    let mut rng = random::rng(seed);
    for i in 0..50 {
        let g = random::holomorphic_poly(&mut rng, 6);
        let q = random::zzbar_poly(&mut rng, 4);
        let f = &g + &(&r * &q);
        if !operator_a(&e, &f)?.is_zero() {
            return Ok((false, format!("kernel input #{i}: A(g + r q) != 0 for {f}")));
        }
    }
    let mut tested = 0;
    while tested < 50 {
        let f = random::zzbar_poly(&mut rng, 6);
        if kernel_membership(&e, &f)? {
            continue;
        }
        if operator_a(&e, &f)?.is_zero() {
            return Ok((
                false,
                format!("A vanishes on {f}, which is outside the kernel"),
            ));
        }
        tested += 1;
    }
    Ok((
        true,
        "A = 0 on 50 kernel inputs, A != 0 on 50 non-kernel inputs".into(),
    ))
}

fn constancy(config: &SuiteConfig) -> Outcome {
    let (m, d) = (config.nodes, config.basis_degree);
    let mut notes = Vec::new();
    let mut passed = true;
    for disc in [Ellipse::centered(1, 1), Ellipse::from_ints(1, 1, 1, 0)] {
        let floor = quadrature_floor(&disc, m, d)?;
        let report = szbar_constancy_experiment(&disc, m, d)?;
        let center_err = (report.coefficients[0] - disc.center_f64().conj()).norm();
        passed &= floor <= tol::FLOOR_CEILING
            && report.deviation_from_constant < tol::DISC_FLOOR_FACTOR * floor
            && center_err < tol::DISC_CENTER;
        notes.push(format!(
            "disc h={}: dev {:.1e} floor {floor:.1e} |c0 - conj(c)| {center_err:.1e}",
            disc.h(),
            report.deviation_from_constant
        ));
    }
    let e = Ellipse::centered(2, 1);
    let floor = quadrature_floor(&matched_disc(&e, m)?, m, d)?;
    let report = szbar_constancy_experiment(&e, m, d)?;
    passed &= floor <= tol::FLOOR_CEILING
        && report.deviation_from_constant > tol::ECCENTRIC_FACTOR * floor
        && report.deviation_from_span_1_z > tol::ECCENTRIC_FACTOR * floor;
    if (m, d) == (tol::NODES, tol::BASIS_DEGREE) {
        passed &= (report.deviation_from_constant - tol::ECCENTRIC_DEVIATION_FROM_CONSTANT).abs()
            < tol::FROZEN_REPRODUCTION
            && (report.deviation_from_span_1_z - tol::ECCENTRIC_DEVIATION_FROM_SPAN).abs()
                < tol::FROZEN_REPRODUCTION;
    }
    notes.push(format!(
        "2:1 ellipse: dev {:.4e} span dev {:.4e} vs matched-disc floor {floor:.1e}",
        report.deviation_from_constant, report.deviation_from_span_1_z
    ));
    Ok((passed, notes.join("; ")))
}

fn bergman(seed: u64, config: &SuiteConfig) -> Outcome {
    let (d, order) = (config.basis_degree, config.area_order);
    let e = Ellipse::centered(2, 1);
    let grid = AreaGrid::new(&e, order)?;
    let basis = HolomorphicBasis::for_ellipse(&e, d);
    let table: Vec<Vec<Complex64>> = grid.z.iter().map(|&z| basis.eval(z)).collect();
    let mut rng = random::rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let p = random::zzbar_poly(&mut rng, 4);
        let proj = numerical_bergman(&e, &p, d, order)?;
        let residual: Vec<Complex64> = grid
            .z
            .iter()
            .map(|&z| p.evaluate(z) - proj.eval(z))
            .collect();
        for k in 0..=d {
            let phi: Vec<Complex64> = table.iter().map(|row| row[k]).collect();
            worst = worst.max(grid.inner_product(&residual, &phi).norm());
        }
    }
    let disc = Ellipse::centered(1, 1);
    let zzbar = numerical_bergman(&disc, &PolyZZbar::zz(1, 1, GaussRat::one()), d, order)?;
    let zbar = numerical_bergman(&disc, &PolyZZbar::zbar(), d, order)?;
    let half = Complex64::new(0.5, 0.0);
    let err_zzbar = max_dev(&zzbar.coefficients, &[half]);
    let err_zbar = max_dev(&zbar.coefficients, &[]);
    Ok((
        worst < tol::BERGMAN_ORTHOGONALITY && err_zzbar < tol::BERGMAN_DISC && err_zbar < tol::BERGMAN_DISC,
        format!("residual orthogonality {worst:.1e}; disc B(z zbar) - 1/2 {err_zzbar:.1e}, B(zbar) {err_zbar:.1e}"),
    ))
}

/// Largest coefficient distance from `expected` padded with zeros.
fn max_dev(coeffs: &[Complex64], expected: &[Complex64]) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| (c - expected.get(i).copied().unwrap_or_else(Complex64::zero)).norm())
        .fold(0.0, f64::max)
}

fn harmonic(seed: u64, config: &SuiteConfig) -> Outcome {
    let disc = Ellipse::centered(1, 1);
    let mut rng = random::rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let p = zzbar_to_xy(&random::harmonic_poly(&mut rng, 5));
        let report = harmonic_szego_bergman_check(
            &disc,
            &p,
            config.basis_degree,
            config.nodes,
            config.area_order,
        )?;
        worst = worst.max(report.max_deviation);
    }
    Ok((
        worst < tol::HARMONIC_AGREEMENT,
        format!("max Szego/Bergman deviation {worst:.2e} over 10 inputs"),
    ))
}

fn perimeter() -> Outcome {
    let e = Ellipse::centered(2, 1);
    let coarse = BoundaryGrid::new(&e, 1024, false)?.perimeter();
    let fine = BoundaryGrid::new(&e, 8192, false)?.perimeter();
    let err = (coarse - fine).abs();
    Ok((
        err < tol::PERIMETER,
        format!("|L_1024 - L_8192| = {err:.2e}, L = {fine:.15}"),
    ))
}
