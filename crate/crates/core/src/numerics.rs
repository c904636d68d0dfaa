//! Floating-point oracle for the exact solvers.
//!
//! Boundary integrals use the periodic trapezoid rule on the parametrization
//! `z(t) = c + a·cos t + i·b·sin t`, which converges spectrally for the
//! smooth periodic integrands met here. Area integrals use Gauss–Legendre in
//! the radial variable and the trapezoid rule in the angle. Projections onto
//! holomorphic polynomials are weighted least-squares problems in the
//! centered, scaled monomials `((z − c)/s)^k`, solved by Householder QR.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use gauss_quad::GaussLegendre;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::GaussRat;
use crate::poly::{PolyRealN, PolyZZbar};
use crate::szego::{szego_project, Ellipse, EllipseJson};

/// Condition estimates above this attach a warning to a projection.
pub const CONDITION_WARNING: f64 = 1e10;

/// Compensated (Neumaier) sum, accumulated in iteration order.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn compensated_sum_c(values: impl IntoIterator<Item = Complex64>) -> Complex64 {
    let vals: Vec<Complex64> = values.into_iter().collect();
    Complex64::new(
        compensated_sum(vals.iter().map(|v| v.re)),
        compensated_sum(vals.iter().map(|v| v.im)),
    )
}

/// Trapezoid nodes on the boundary of an ellipse.
#[derive(Clone, Debug)]
pub struct BoundaryGrid {
    ellipse: Ellipse,
    weighted: bool,
    pub t: Vec<f64>,
    pub z: Vec<Complex64>,
    /// Arclength quadrature weights `|z'(t_j)|·2π/M`.
    pub ds: Vec<f64>,
    /// `1/|∂̄r(z_j)|`, or all ones when unweighted.
    pub omega: Vec<f64>,
    /// Unit tangent `i·∂̄r/|∂̄r|`, counterclockwise.
    pub tangent: Vec<Complex64>,
}

impl BoundaryGrid {
    pub fn new(e: &Ellipse, m: usize, weighted: bool) -> Result<Self> {
        if m < 16 || !m.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "node count must be even and >= 16, got {m}"
            )));
        }
        let (a, b, c) = (e.a_f64(), e.b_f64(), e.center_f64());
        let dbar_r = e.dbar_r();
        let step = 2.0 * PI / m as f64;
        let mut grid = Self {
            ellipse: e.clone(),
            weighted,
            t: Vec::with_capacity(m),
            z: Vec::with_capacity(m),
            ds: Vec::with_capacity(m),
            omega: Vec::with_capacity(m),
            tangent: Vec::with_capacity(m),
        };
        for j in 0..m {
            let t = step * j as f64;
            let (s, co) = t.sin_cos();
            let z = c + Complex64::new(a * co, b * s);
            let speed = Complex64::new(-a * s, b * co).norm();
            let g = dbar_r.evaluate(z);
            grid.t.push(t);
            grid.z.push(z);
            grid.ds.push(speed * step);
            grid.omega.push(if weighted { 1.0 / g.norm() } else { 1.0 });
            grid.tangent.push(Complex64::i() * g / g.norm());
        }
        Ok(grid)
    }

    pub fn ellipse(&self) -> &Ellipse {
        &self.ellipse
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn perimeter(&self) -> f64 {
        compensated_sum(self.ds.iter().copied())
    }

    /// `ω_j·ds_j`.
    pub fn measure(&self) -> Vec<f64> {
        self.omega
            .iter()
            .zip(&self.ds)
            .map(|(w, d)| w * d)
            .collect()
    }

    pub fn values(&self, f: &PolyZZbar) -> Vec<Complex64> {
        self.z.iter().map(|&z| f.evaluate(z)).collect()
    }
}

pub fn boundary_grid(e: &Ellipse, m: usize, weighted: bool) -> Result<BoundaryGrid> {
    BoundaryGrid::new(e, m, weighted)
}

/// `Σ f_j · conj(g_j) · ω_j · ds_j`.
pub fn inner_product(f: &[Complex64], g: &[Complex64], grid: &BoundaryGrid) -> Result<Complex64> {
    if f.len() != grid.len() || g.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.len(),
            found: if f.len() != grid.len() {
                f.len()
            } else {
                g.len()
            },
        });
    }
    Ok(weighted_sum(f, g, &grid.measure()))
}

fn weighted_sum(f: &[Complex64], g: &[Complex64], w: &[f64]) -> Complex64 {
    compensated_sum_c(f.iter().zip(g).zip(w).map(|((a, b), w)| a * b.conj() * *w))
}

/// `φ_k(z) = ((z − center)/scale)^k`, `k = 0..=degree`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolomorphicBasis {
    pub center: Complex64,
    pub scale: f64,
    pub degree: usize,
}

impl HolomorphicBasis {
    pub fn for_ellipse(e: &Ellipse, degree: usize) -> Self {
        Self {
            center: e.center_f64(),
            scale: e.a_f64().max(e.b_f64()),
            degree,
        }
    }

    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        let w = (z - self.center) / self.scale;
        let mut out = Vec::with_capacity(self.degree + 1);
        let mut p = Complex64::one();
        for _ in 0..=self.degree {
            out.push(p);
            p *= w;
        }
        out
    }

    /// Exact coefficients of a holomorphic polynomial in this basis:
    /// substitutes `z = center + scale·w` and expands.
    pub fn exact_coefficients(&self, e: &Ellipse, h: &PolyZZbar) -> Result<Vec<GaussRat>> {
        if !h.is_holomorphic() {
            return Err(Error::invalid(
                "basis conversion needs a holomorphic polynomial",
            ));
        }
        if h.degree() > self.degree as i64 {
            return Err(Error::invalid(format!(
                "polynomial degree {} exceeds basis degree {}",
                h.degree(),
                self.degree
            )));
        }
        let c = GaussRat::new(e.h().clone(), e.k().clone());
        let s = GaussRat::real(if e.a() >= e.b() {
            e.a().clone()
        } else {
            e.b().clone()
        });
        // (c + s·w)^j expanded into powers of w.
        let mut out = vec![GaussRat::zero(); self.degree + 1];
        let mut binom_row = vec![GaussRat::one()];
        for j in 0..=self.degree {
            if j > 0 {
                let mut next = vec![GaussRat::zero(); j + 1];
                for (k, v) in binom_row.iter().enumerate() {
                    next[k] += &(v * &c);
                    next[k + 1] += &(v * &s);
                }
                binom_row = next;
            }
            let dj = h.coeff_of(&[j as u32, 0]);
            if dj.is_zero() {
                continue;
            }
            for (k, v) in binom_row.iter().enumerate() {
                out[k] += &(&dj * v);
            }
        }
        Ok(out)
    }
}

/// Least-squares projection onto a [`HolomorphicBasis`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericalProjection {
    pub coefficients: Vec<Complex64>,
    pub basis: HolomorphicBasis,
    /// Weighted 2-norm of `f − Σ c_k φ_k` over the quadrature nodes.
    pub residual_norm: f64,
    /// Ratio of extreme singular values of the weighted basis matrix.
    pub condition_estimate: f64,
    pub warning: Option<String>,
}

impl NumericalProjection {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.basis
            .eval(z)
            .iter()
            .zip(&self.coefficients)
            .map(|(p, c)| p * c)
            .sum()
    }
}

fn least_squares(
    nodes: &[Complex64],
    weights: &[f64],
    values: &[Complex64],
    basis: HolomorphicBasis,
) -> NumericalProjection {
    let (rows, cols) = (nodes.len(), basis.degree + 1);
    let sqrt_w: Vec<f64> = weights.iter().map(|w| w.sqrt()).collect();
    let mut a = DMatrix::<Complex64>::zeros(rows, cols);
    for (j, z) in nodes.iter().enumerate() {
        for (k, phi) in basis.eval(*z).into_iter().enumerate() {
            a[(j, k)] = phi * sqrt_w[j];
        }
    }
    let b = DVector::from_iterator(rows, values.iter().zip(&sqrt_w).map(|(f, w)| f * *w));
    let sv = a.clone().singular_values();
    let (smax, smin) = (sv.max(), sv.min());
    let condition_estimate = if smin > 0.0 {
        smax / smin
    } else {
        f64::INFINITY
    };

    let qr = a.clone().qr();
    let qtb = qr.q().adjoint() * &b;
    let coeffs = qr
        .r()
        .solve_upper_triangular(&qtb)
        .unwrap_or_else(|| DVector::from_element(cols, Complex64::new(f64::NAN, f64::NAN)));
    let residual_norm = (&b - &a * &coeffs).norm();
    let warning = (condition_estimate > CONDITION_WARNING).then(|| {
        format!("basis condition estimate {condition_estimate:.3e} exceeds {CONDITION_WARNING:.0e}")
    });
    NumericalProjection {
        coefficients: coeffs.iter().copied().collect(),
        basis,
        residual_norm,
        condition_estimate,
        warning,
    }
}

/// Projection of boundary values onto holomorphic polynomials of degree
/// `≤ basis_degree` in the grid's (possibly weighted) inner product.
pub fn numerical_szego(
    grid: &BoundaryGrid,
    values: &[Complex64],
    basis_degree: usize,
) -> Result<NumericalProjection> {
    if values.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.len(),
            found: values.len(),
        });
    }
    if 4 * (basis_degree + 1) > grid.len() {
        return Err(Error::invalid(format!(
            "basis degree {basis_degree} needs at least {} nodes",
            4 * (basis_degree + 1)
        )));
    }
    let basis = HolomorphicBasis::for_ellipse(grid.ellipse(), basis_degree);
    Ok(least_squares(&grid.z, &grid.measure(), values, basis))
}

pub fn numerical_szego_poly(
    grid: &BoundaryGrid,
    f: &PolyZZbar,
    basis_degree: usize,
) -> Result<NumericalProjection> {
    numerical_szego(grid, &grid.values(f), basis_degree)
}

/// `⟨f − Σ c_k φ_k, φ_k⟩` for every basis element, on the grid.
pub fn residual_inner_products(
    grid: &BoundaryGrid,
    values: &[Complex64],
    proj: &NumericalProjection,
) -> Result<Vec<Complex64>> {
    let residual: Vec<Complex64> = values
        .iter()
        .zip(&grid.z)
        .map(|(f, z)| f - proj.eval(*z))
        .collect();
    (0..=proj.basis.degree)
        .map(|k| {
            let phi: Vec<Complex64> = grid.z.iter().map(|z| proj.basis.eval(*z)[k]).collect();
            inner_product(&residual, &phi, grid)
        })
        .collect()
}

/// Tensor quadrature over the interior of an ellipse in elliptic-polar
/// coordinates `x = h + aρ cos θ`, `y = k + bρ sin θ`.
#[derive(Clone, Debug)]
pub struct AreaGrid {
    pub z: Vec<Complex64>,
    /// Includes the Jacobian `a·b·ρ`.
    pub weights: Vec<f64>,
}

impl AreaGrid {
    /// `order` Gauss–Legendre nodes in `ρ ∈ [0, 1]` times `order` trapezoid
    /// nodes in `θ`.
    pub fn new(e: &Ellipse, order: usize) -> Result<Self> {
        let gl = GaussLegendre::new(order)
            .map_err(|_| Error::invalid(format!("quadrature order {order} is too small")))?;
        let (a, b, c) = (e.a_f64(), e.b_f64(), e.center_f64());
        let dtheta = 2.0 * PI / order as f64;
        let mut z = Vec::with_capacity(order * order);
        let mut weights = Vec::with_capacity(order * order);
        for (node, w) in gl.iter() {
            // map [-1, 1] -> [0, 1]
            let rho = 0.5 * (node + 1.0);
            let wr = 0.5 * w;
            for j in 0..order {
                let (s, co) = (dtheta * j as f64).sin_cos();
                z.push(c + Complex64::new(a * rho * co, b * rho * s));
                weights.push(a * b * rho * wr * dtheta);
            }
        }
        Ok(Self { z, weights })
    }

    pub fn area(&self) -> f64 {
        compensated_sum(self.weights.iter().copied())
    }

    pub fn inner_product(&self, f: &[Complex64], g: &[Complex64]) -> Complex64 {
        weighted_sum(f, g, &self.weights)
    }
}

/// Bergman (area) projection of `f` onto holomorphic polynomials of degree
/// `≤ basis_degree`.
pub fn numerical_bergman(
    e: &Ellipse,
    f: &PolyZZbar,
    basis_degree: usize,
    quad_order: usize,
) -> Result<NumericalProjection> {
    let needed = 2 * (basis_degree + f.degree().max(0) as usize) + 4;
    if quad_order < needed {
        return Err(Error::invalid(format!(
            "quadrature order {quad_order} is below the required {needed}"
        )));
    }
    let grid = AreaGrid::new(e, quad_order)?;
    let values: Vec<Complex64> = grid.z.iter().map(|&z| f.evaluate(z)).collect();
    Ok(least_squares(
        &grid.z,
        &grid.weights,
        &values,
        HolomorphicBasis::for_ellipse(e, basis_degree),
    ))
}

/// Unweighted numerical `S z̄` and how far it is from a constant and from
/// `span{1, z}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstancyReport {
    pub coefficients: Vec<Complex64>,
    /// 2-norm of the coefficients of degree `≥ 1`.
    pub deviation_from_constant: f64,
    /// 2-norm of the coefficients of degree `≥ 2`.
    pub deviation_from_span_1_z: f64,
    pub condition_estimate: f64,
}

pub fn szbar_constancy_experiment(
    e: &Ellipse,
    m: usize,
    basis_degree: usize,
) -> Result<ConstancyReport> {
    let grid = BoundaryGrid::new(e, m, false)?;
    let proj = numerical_szego_poly(&grid, &PolyZZbar::zbar(), basis_degree)?;
    let tail = |from: usize| {
        proj.coefficients
            .iter()
            .skip(from)
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    };
    Ok(ConstancyReport {
        deviation_from_constant: tail(1),
        deviation_from_span_1_z: tail(2),
        coefficients: proj.coefficients.clone(),
        condition_estimate: proj.condition_estimate,
    })
}

/// Empirical accuracy floor of the unweighted boundary projection: the
/// largest coefficient error when each basis element is projected onto the
/// basis, floored at machine epsilon.
pub fn quadrature_floor(e: &Ellipse, m: usize, basis_degree: usize) -> Result<f64> {
    let grid = BoundaryGrid::new(e, m, false)?;
    let basis = HolomorphicBasis::for_ellipse(e, basis_degree);
    let table: Vec<Vec<Complex64>> = grid.z.iter().map(|&z| basis.eval(z)).collect();
    let mut worst = f64::EPSILON;
    for k in 0..=basis_degree {
        let values: Vec<Complex64> = table.iter().map(|row| row[k]).collect();
        let proj = numerical_szego(&grid, &values, basis_degree)?;
        for (i, c) in proj.coefficients.iter().enumerate() {
            let target = if i == k {
                Complex64::one()
            } else {
                Complex64::zero()
            };
            worst = worst.max((c - target).norm());
        }
    }
    Ok(worst)
}

/// Disc with the same perimeter and center as `e`, perimeter measured on an
/// `m`-node grid.
pub fn matched_disc(e: &Ellipse, m: usize) -> Result<Ellipse> {
    let perimeter = BoundaryGrid::new(e, m, false)?.perimeter();
    let radius = BigRational::from_float(perimeter / (2.0 * PI))
        .ok_or_else(|| Error::Internal("non-finite perimeter".into()))?;
    Ellipse::new(radius.clone(), radius, e.h().clone(), e.k().clone())
}

/// `z ↦ rotation·(z − shift)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineNormalization {
    pub rotation: Complex64,
    pub shift: Complex64,
}

impl AffineNormalization {
    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.rotation * (z - self.shift)
    }
}

/// Map sending a domain with `S z̄ = a z + b` to one with `S z̄ = |a| z`:
/// `rotation = e^{−i·arg(a)/2}`, `shift = (ā b + b̄)/(1 − |a|²)`.
pub fn normalize_affine(a: Complex64, b: Complex64) -> Result<AffineNormalization> {
    let modulus = a.norm();
    if (1.0 - modulus).abs() <= 1e-12 {
        return Err(Error::invalid("normalization is singular when |a| = 1"));
    }
    let rotation = Complex64::from_polar(1.0, -a.arg() / 2.0);
    let shift = (a.conj() * b + b.conj()) / (1.0 - modulus * modulus);
    Ok(AffineNormalization { rotation, shift })
}

/// Szegő and Bergman projections of one harmonic polynomial on a disc.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarmonicCheckReport {
    pub szego: Vec<Complex64>,
    pub bergman: Vec<Complex64>,
    pub max_deviation: f64,
}

pub fn harmonic_szego_bergman_check(
    disc: &Ellipse,
    p: &PolyRealN,
    basis_degree: usize,
    m: usize,
    quad_order: usize,
) -> Result<HarmonicCheckReport> {
    if !disc.is_disc() {
        return Err(Error::invalid("the harmonic check needs a disc (a = b)"));
    }
    if !p.is_harmonic() {
        return Err(Error::invalid("input polynomial is not harmonic"));
    }
    let f = p.to_zzbar()?;
    let grid = BoundaryGrid::new(disc, m, false)?;
    let szego = numerical_szego_poly(&grid, &f, basis_degree)?;
    let bergman = numerical_bergman(disc, &f, basis_degree, quad_order)?;
    let max_deviation = szego
        .coefficients
        .iter()
        .zip(&bergman.coefficients)
        .map(|(s, b)| (s - b).norm())
        .fold(0.0, f64::max);
    Ok(HarmonicCheckReport {
        szego: szego.coefficients,
        bergman: bergman.coefficients,
        max_deviation,
    })
}

/// Exact weighted projection against the weighted-grid numerical one, both
/// in the scaled basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub symbolic: Vec<Complex64>,
    pub numeric: Vec<Complex64>,
    pub max_coeff_dev: f64,
    pub condition_estimate: f64,
}

pub fn compare_symbolic_numeric(
    e: &Ellipse,
    f: &PolyZZbar,
    m: usize,
    basis_degree: usize,
) -> Result<ComparisonReport> {
    let exact = szego_project(e, f)?;
    let grid = BoundaryGrid::new(e, m, true)?;
    let numeric = numerical_szego_poly(&grid, f, basis_degree)?;
    let symbolic: Vec<Complex64> = numeric
        .basis
        .exact_coefficients(e, &exact.projection)?
        .iter()
        .map(GaussRat::to_complex64)
        .collect();
    let max_coeff_dev = symbolic
        .iter()
        .zip(&numeric.coefficients)
        .map(|(s, n)| (s - n).norm())
        .fold(0.0, f64::max);
    Ok(ComparisonReport {
        symbolic,
        numeric: numeric.coefficients,
        max_coeff_dev,
        condition_estimate: numeric.condition_estimate,
    })
}

/// Serialized result of a numerical experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub ellipse: EllipseJson,
    #[serde(rename = "M")]
    pub m: usize,
    pub basis_degree: usize,
    /// `[re, im]` pairs in the scaled basis `((z − c)/max(a, b))^k`.
    pub coefficients: Vec<Complex64>,
    pub deviations: BTreeMap<String, f64>,
    pub condition_estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime_ms: Option<f64>,
}
