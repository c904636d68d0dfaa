//! Exact weighted Szegő projection of polynomials on a planar ellipse.
//!
//! With `r` the quadratic defining polynomial and boundary weight
//! `ω = 1/|∂̄r|`, every `f` of degree `N` splits as
//!
//! ```text
//! f = h + ∂r·∂̄E(p) + r·q,      h ∈ HP_N, p ∈ P_N, q ∈ P_{N−2}
//! ```
//!
//! where `E` is the harmonic extension. On the boundary `r·q` vanishes and
//! `∂r·∂̄E(p)` is orthogonal to the weighted Hardy space, so `h` is the
//! weighted projection of `f`. The split is found by one exact linear solve
//! over the three coefficient blocks; `h` is unique, `p` and `q` are not.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::dirichlet::{extend_all, Ellipsoid};
use crate::error::{Error, Result};
use crate::format::{self, ZZbarTermJson};
use crate::gauss::{parse_rational, rat_to_f64, GaussRat};
use crate::linalg::{self, Matrix, Pivoting, SolveOutcome};
use crate::poly::{monomials_up_to, Monomial, PolyZZbar};

/// `(x−h)²/a² + (y−k)²/b² < 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ellipse {
    a: BigRational,
    b: BigRational,
    h: BigRational,
    k: BigRational,
}

impl Ellipse {
    pub fn new(a: BigRational, b: BigRational, h: BigRational, k: BigRational) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::invalid("ellipse semi-axes must be positive"));
        }
        Ok(Self { a, b, h, k })
    }

    /// Integer-parameter shorthand; panics on nonpositive axes.
    pub fn from_ints(a: i64, b: i64, h: i64, k: i64) -> Self {
        let r = |v: i64| BigRational::from_integer(v.into());
        Self::new(r(a), r(b), r(h), r(k)).expect("positive semi-axes")
    }

    pub fn centered(a: i64, b: i64) -> Self {
        Self::from_ints(a, b, 0, 0)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn h(&self) -> &BigRational {
        &self.h
    }

    pub fn k(&self) -> &BigRational {
        &self.k
    }

    pub fn a_f64(&self) -> f64 {
        rat_to_f64(&self.a)
    }

    pub fn b_f64(&self) -> f64 {
        rat_to_f64(&self.b)
    }

    pub fn center_f64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.h), rat_to_f64(&self.k))
    }

    pub fn is_disc(&self) -> bool {
        self.a == self.b
    }

    /// Parses `"a,b,h,k"` with rational entries such as `3/2`.
    pub fn parse(src: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut offset = 0;
        for part in src.split(',') {
            let trimmed = part.trim();
            let lead = part.len() - part.trim_start().len();
            let v = parse_rational(trimmed).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::parse(offset + lead + pos, msg),
                other => other,
            })?;
            values.push(v);
            offset += part.len() + 1;
        }
        let [a, b, h, k]: [BigRational; 4] = values.try_into().map_err(|v: Vec<_>| {
            Error::parse(0, format!("expected 4 values a,b,h,k, found {}", v.len()))
        })?;
        Self::new(a, b, h, k)
    }

    pub fn to_json(&self) -> EllipseJson {
        EllipseJson {
            a: self.a.to_string(),
            b: self.b.to_string(),
            h: self.h.to_string(),
            k: self.k.to_string(),
        }
    }

    pub fn to_ellipsoid(&self) -> Ellipsoid {
        Ellipsoid::planar(&self.a, &self.b, &self.h, &self.k).expect("validated ellipse")
    }

    /// `r` rewritten in `z, z̄`.
    pub fn defining_poly_zzbar(&self) -> PolyZZbar {
        self.to_ellipsoid()
            .defining_poly()
            .to_zzbar()
            .expect("planar defining polynomial")
    }

    /// `∂r`.
    pub fn d_r(&self) -> PolyZZbar {
        self.defining_poly_zzbar().d_dz()
    }

    /// `∂̄r`.
    pub fn dbar_r(&self) -> PolyZZbar {
        self.defining_poly_zzbar().d_dzbar()
    }

    /// Harmonic extension computed directly in `z, z̄`.
    pub fn harmonic_extension(&self, p: &PolyZZbar) -> Result<PolyZZbar> {
        Ok(extend_all(&self.defining_poly_zzbar(), std::slice::from_ref(p))?.remove(0))
    }
}

/// Exact parameters as rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipseJson {
    pub a: String,
    pub b: String,
    pub h: String,
    pub k: String,
}

/// `A(p) = ∂r · ∂̄E(p)`.
pub fn operator_a(e: &Ellipse, p: &PolyZZbar) -> Result<PolyZZbar> {
    Ok(operator_a_all(e, std::slice::from_ref(p))?.remove(0))
}

fn operator_a_all(e: &Ellipse, ps: &[PolyZZbar]) -> Result<Vec<PolyZZbar>> {
    let d_r = e.d_r();
    let extended = extend_all(&e.defining_poly_zzbar(), ps)?;
    Ok(extended.iter().map(|u| &d_r * &u.d_dzbar()).collect())
}

/// `true` iff `p = g + r·q` with `g` holomorphic, i.e. `p` lies in the
/// kernel of [`operator_a`].
pub fn kernel_membership(e: &Ellipse, p: &PolyZZbar) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    let n = p.degree();
    let r = e.defining_poly_zzbar();
    let rows = monomials_up_to(2, n);
    let mut columns: Vec<PolyZZbar> = (0..=n as u32)
        .map(|k| PolyZZbar::zz(k, 0, GaussRat::one()))
        .collect();
    columns.extend(
        monomials_up_to(2, n - 2)
            .into_iter()
            .map(|m| &r * &PolyZZbar::term(m, GaussRat::one())),
    );
    let a = Matrix::from_poly_columns(&rows, &columns);
    let b = Matrix::from_poly_columns(&rows, std::slice::from_ref(p));
    Ok(matches!(
        linalg::solve(&a, &b, Pivoting::SmallestSize),
        SolveOutcome::Solved { .. }
    ))
}

/// Ordering of the unknown blocks in the combined system. Changing it
/// changes which particular `(p, q)` comes out, never `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BlockOrder {
    #[default]
    ProjectionFirst,
    CofactorFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SolveStrategy {
    pub pivoting: Pivoting,
    pub block_order: BlockOrder,
}

impl SolveStrategy {
    /// First-nonzero pivots with the blocks reversed.
    pub fn alternate() -> Self {
        Self {
            pivoting: Pivoting::FirstNonzero,
            block_order: BlockOrder::CofactorFirst,
        }
    }
}

/// `input = projection + A(preimage) + r·cofactor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SzegoDecomposition {
    pub input: PolyZZbar,
    pub projection: PolyZZbar,
    pub preimage: PolyZZbar,
    pub cofactor: PolyZZbar,
    /// Degree bound of the ambient space `P_N`.
    pub n: u32,
}

/// Weighted Szegő projection of `f`, with `N = max(deg f, 0)`.
pub fn szego_project(e: &Ellipse, f: &PolyZZbar) -> Result<SzegoDecomposition> {
    szego_project_with(e, f, f.degree().max(0) as u32, SolveStrategy::default())
}

/// As [`szego_project`], treating `f` as an element of `P_n` for a given
/// `n ≥ deg f`.
pub fn szego_project_with(
    e: &Ellipse,
    f: &PolyZZbar,
    n: u32,
    strategy: SolveStrategy,
) -> Result<SzegoDecomposition> {
    if f.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: f.dim(),
        });
    }
    if f.degree() > i64::from(n) {
        return Err(Error::invalid(format!(
            "degree bound {n} is below the input degree {}",
            f.degree()
        )));
    }
    let nn = i64::from(n);
    let r = e.defining_poly_zzbar();
    let rows = monomials_up_to(2, nn);

    let h_basis: Vec<Monomial> = (0..=n).map(|k| Monomial::new(vec![k, 0])).collect();
    let h_cols: Vec<PolyZZbar> = h_basis
        .iter()
        .map(|m| PolyZZbar::term(m.clone(), GaussRat::one()))
        .collect();

    // Holomorphic monomials are in the kernel of A and contribute nothing.
    let p_basis: Vec<Monomial> = rows.iter().filter(|m| m.exps()[1] > 0).cloned().collect();
    let p_monomials: Vec<PolyZZbar> = p_basis
        .iter()
        .map(|m| PolyZZbar::term(m.clone(), GaussRat::one()))
        .collect();
    let p_cols = operator_a_all(e, &p_monomials)?;

    let q_basis = monomials_up_to(2, nn - 2);
    let q_cols: Vec<PolyZZbar> = q_basis
        .iter()
        .map(|m| &r * &PolyZZbar::term(m.clone(), GaussRat::one()))
        .collect();

    let (nh, np) = (h_cols.len(), p_cols.len());
    let blocks: Vec<&[PolyZZbar]> = match strategy.block_order {
        BlockOrder::ProjectionFirst => vec![&h_cols, &p_cols, &q_cols],
        BlockOrder::CofactorFirst => vec![&q_cols, &p_cols, &h_cols],
    };
    let columns: Vec<PolyZZbar> = blocks.concat();
    let a = Matrix::from_poly_columns(&rows, &columns);
    let b = Matrix::from_poly_columns(&rows, std::slice::from_ref(f));
    let sol = linalg::solve(&a, &b, strategy.pivoting)
        .into_solution()
        .ok_or_else(|| Error::Internal("Szegő decomposition system is inconsistent".to_string()))?;
    let x: Vec<GaussRat> = sol.column(0).collect();
    let (hx, px, qx) = match strategy.block_order {
        BlockOrder::ProjectionFirst => (&x[..nh], &x[nh..nh + np], &x[nh + np..]),
        BlockOrder::CofactorFirst => {
            let nq = q_cols.len();
            (&x[nq + np..], &x[nq..nq + np], &x[..nq])
        }
    };
    let projection = PolyZZbar::from_coeffs(&h_basis, hx.iter().cloned())?;
    let preimage = if p_basis.is_empty() {
        PolyZZbar::zero2()
    } else {
        PolyZZbar::from_coeffs(&p_basis, px.iter().cloned())?
    };
    let cofactor = if q_basis.is_empty() {
        PolyZZbar::zero2()
    } else {
        PolyZZbar::from_coeffs(&q_basis, qx.iter().cloned())?
    };
    Ok(SzegoDecomposition {
        input: f.clone(),
        projection,
        preimage,
        cofactor,
        n,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Exact re-check of every [`SzegoDecomposition`] invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionCertificate {
    /// `f − h − A(p) − r·q`; zero for a valid decomposition.
    pub residual: PolyZZbar,
    pub checks: Vec<CheckResult>,
}

impl DecompositionCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn verify_decomposition(
    d: &SzegoDecomposition,
    e: &Ellipse,
) -> Result<DecompositionCertificate> {
    let r = e.defining_poly_zzbar();
    let residual =
        &(&(&d.input - &d.projection) - &operator_a(e, &d.preimage)?) - &(&r * &d.cofactor);
    let n = i64::from(d.n);
    let check = |name: &str, passed: bool, detail: String| CheckResult {
        name: name.to_string(),
        passed,
        detail,
    };
    let checks = vec![
        check(
            "residual_zero",
            residual.is_zero(),
            format!("f - h - A(p) - r*q = {}", format::to_pretty(&residual)),
        ),
        check(
            "projection_holomorphic",
            d.projection.is_holomorphic(),
            format!("h = {}", format::to_pretty(&d.projection)),
        ),
        check(
            "projection_degree",
            d.projection.degree() <= n,
            format!("deg h = {} <= N = {n}", d.projection.degree()),
        ),
        check(
            "input_degree",
            d.input.degree() <= n,
            format!("deg f = {} <= N = {n}", d.input.degree()),
        ),
        check(
            "preimage_degree",
            d.preimage.degree() <= n,
            format!("deg p = {} <= N = {n}", d.preimage.degree()),
        ),
        check(
            "cofactor_degree",
            d.cofactor.degree() <= (n - 2).max(-1),
            format!("deg q = {} <= N - 2 = {}", d.cofactor.degree(), n - 2),
        ),
    ];
    Ok(DecompositionCertificate { residual, checks })
}

/// CLI-facing JSON of a decomposition together with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SzegoReportJson {
    pub input: Vec<ZZbarTermJson>,
    pub projection: Vec<ZZbarTermJson>,
    pub preimage: Vec<ZZbarTermJson>,
    pub cofactor: Vec<ZZbarTermJson>,
    pub projection_text: String,
    pub checks: std::collections::BTreeMap<String, bool>,
}

impl SzegoReportJson {
    pub fn new(d: &SzegoDecomposition, cert: &DecompositionCertificate) -> Self {
        Self {
            input: format::zzbar_to_json(&d.input),
            projection: format::zzbar_to_json(&d.projection),
            preimage: format::zzbar_to_json(&d.preimage),
            cofactor: format::zzbar_to_json(&d.cofactor),
            projection_text: format::to_pretty(&d.projection),
            checks: cert
                .checks
                .iter()
                .map(|c| (c.name.clone(), c.passed))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_zzbar;

    fn q(n: i64, d: i64) -> GaussRat {
        GaussRat::ratio(n, d)
    }

    #[test]
    fn defining_poly_of_two_one_ellipse() {
        let e = Ellipse::centered(2, 1);
        let expected = parse_zzbar("-3/16*z^2 + 5/8*z*zbar - 3/16*zbar^2 - 1").unwrap();
        assert_eq!(e.defining_poly_zzbar(), expected);
        assert_eq!(e.d_r().conjugate(), e.dbar_r());
        assert_eq!(e.d_r().degree(), 1);
    }

    #[test]
    fn operator_a_examples() {
        let e = Ellipse::centered(2, 1);
        assert!(operator_a(&e, &parse_zzbar("z^3").unwrap())
            .unwrap()
            .is_zero());
        assert_eq!(
            operator_a(&e, &PolyZZbar::zbar()).unwrap(),
            parse_zzbar("-3/8*z + 5/8*zbar").unwrap()
        );
        let disc = Ellipse::centered(1, 1);
        assert_eq!(
            operator_a(&disc, &PolyZZbar::zbar()).unwrap(),
            PolyZZbar::zbar()
        );
    }

    #[test]
    fn kernel_membership_examples() {
        let e = Ellipse::centered(2, 1);
        assert!(kernel_membership(&e, &parse_zzbar("z^5").unwrap()).unwrap());
        let v = &e.defining_poly_zzbar() * &parse_zzbar("zbar + 1").unwrap();
        assert!(kernel_membership(&e, &v).unwrap());
        assert!(!kernel_membership(&e, &PolyZZbar::zbar()).unwrap());
    }

    #[test]
    fn holomorphic_input_is_fixed() {
        let e = Ellipse::centered(2, 1);
        let f = parse_zzbar("z^4 - 2*z + 1/3").unwrap();
        let d = szego_project(&e, &f).unwrap();
        assert_eq!(d.projection, f);
        assert!(d.preimage.is_zero() && d.cofactor.is_zero());
    }

    #[test]
    fn zbar_on_two_one_ellipse() {
        let d = szego_project(&Ellipse::centered(2, 1), &PolyZZbar::zbar()).unwrap();
        assert_eq!(d.projection, PolyZZbar::zz(1, 0, q(3, 5)));
    }

    #[test]
    fn zbar_on_unit_disc() {
        let d = szego_project(&Ellipse::centered(1, 1), &PolyZZbar::zbar()).unwrap();
        assert!(d.projection.is_zero());
    }

    #[test]
    fn constant_and_zero_inputs() {
        let e = Ellipse::from_ints(3, 2, 1, -1);
        let c = PolyZZbar::from_const(q(7, 2));
        assert_eq!(szego_project(&e, &c).unwrap().projection, c);
        let z = szego_project(&e, &PolyZZbar::zero2()).unwrap();
        assert!(z.projection.is_zero());
        assert_eq!(z.n, 0);
    }

    #[test]
    fn certificate_catches_tampering() {
        let e = Ellipse::centered(2, 1);
        let f = parse_zzbar("zbar^2*z + 3*zbar").unwrap();
        let d = szego_project(&e, &f).unwrap();
        assert!(verify_decomposition(&d, &e).unwrap().passed());

        let mut bad = d.clone();
        bad.projection = &bad.projection + &PolyZZbar::zbar();
        let cert = verify_decomposition(&bad, &e).unwrap();
        assert!(!cert.residual.is_zero());
        assert!(cert.failures().any(|c| c.name == "residual_zero"));

        let mut bad = d.clone();
        bad.projection = &bad.projection + &PolyZZbar::zz(d.n + 1, 0, q(1, 1));
        let cert = verify_decomposition(&bad, &e).unwrap();
        assert!(cert.failures().any(|c| c.name == "projection_degree"));
    }

    #[test]
    fn shifted_ellipse_projection_is_certified() {
        let e = Ellipse::new(
            BigRational::new(5.into(), 2.into()),
            BigRational::from_integer(1.into()),
            BigRational::new(1.into(), 3.into()),
            BigRational::new((-2).into(), 1.into()),
        )
        .unwrap();
        let f = parse_zzbar("zbar^3 - i*z*zbar + 2").unwrap();
        let d = szego_project(&e, &f).unwrap();
        assert!(verify_decomposition(&d, &e).unwrap().passed());
        let alt = szego_project_with(&e, &f, d.n, SolveStrategy::alternate()).unwrap();
        assert_eq!(alt.projection, d.projection);
    }

    #[test]
    fn bound_below_degree_rejected() {
        let e = Ellipse::centered(2, 1);
        assert!(szego_project_with(
            &e,
            &parse_zzbar("zbar^3").unwrap(),
            2,
            SolveStrategy::default()
        )
        .is_err());
    }

    #[test]
    fn zzbar_extension_matches_real_route() {
        let e = Ellipse::from_ints(3, 2, 1, 0);
        let f = parse_zzbar("zbar^3*z + 2*zbar^2 - z").unwrap();
        let via_zzbar = e.harmonic_extension(&f).unwrap();
        let via_xy = e.to_ellipsoid().harmonic_extension(&f.to_xy()).unwrap();
        assert_eq!(via_xy.to_zzbar().unwrap(), via_zzbar);
    }

    #[test]
    fn ellipse_descriptor_parsing() {
        let e = Ellipse::parse("2, 1,1/2,-3").unwrap();
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(
            e,
            Ellipse::new(r(2, 1), r(1, 1), r(1, 2), r(-3, 1)).unwrap()
        );
        assert_eq!(e.to_json().h, "1/2");
        assert!(matches!(Ellipse::parse("2,1,0"), Err(Error::Parse { .. })));
        assert!(matches!(
            Ellipse::parse("2,1,x,0"),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            Ellipse::parse("0,1,0,0"),
            Err(Error::InvalidInput(_))
        ));
    }
}
