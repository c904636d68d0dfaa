//! Polynomial Dirichlet problem on ellipsoids.
//!
//! For an ellipsoid with quadratic defining polynomial `r`, the Fischer map
//! `q ↦ Δ(r·q)` sends polynomials of degree `≤ m` to polynomials of degree
//! `≤ m` and is invertible there. Given data `p` of degree `N ≥ 2`, solving
//! `Δ(r·q) = Δp` at `m = N − 2` gives the harmonic extension
//! `u = p − r·q`: it is harmonic and agrees with `p` on the boundary.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gauss::{parse_rational, GaussRat};
use crate::linalg::{self, Matrix, Pivoting, SolveOutcome};
use crate::poly::{monomials_up_to, Monomial, PolyRealN, SparsePoly, Variables};

/// Matrix of `q ↦ Δ(r·q)` on the graded-lex monomial basis of degree `≤ m`.
///
/// The top homogeneous part of `Δ(r·q)` only sees the top part of `q`
/// (through the quadratic part of `r`), so the matrix is block triangular
/// by degree. Determinants and solves work block by block.
#[derive(Clone, Debug)]
pub struct FischerSystem<V: Variables> {
    degree_bound: u32,
    basis: Vec<Monomial>,
    matrix: Matrix,
    /// Diagonal block of each degree `0..=m` and its monomials.
    blocks: Vec<(Vec<Monomial>, Matrix)>,
    r: SparsePoly<V>,
}

impl<V: Variables> FischerSystem<V> {
    /// Builds the matrix without certifying it; see [`Self::certify`].
    pub fn build(r: &SparsePoly<V>, degree_bound: u32) -> Self {
        let basis = monomials_up_to(r.dim(), i64::from(degree_bound));
        let columns: Vec<_> = basis
            .iter()
            .map(|m| (r * &SparsePoly::term(m.clone(), GaussRat::one())).laplacian())
            .collect();
        let matrix = Matrix::from_poly_columns(&basis, &columns);
        let blocks = (0..=u64::from(degree_bound))
            .map(|d| {
                let (idx, mons): (Vec<usize>, Vec<Monomial>) = basis
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| m.degree() == d)
                    .map(|(i, m)| (i, m.clone()))
                    .unzip();
                let cols: Vec<_> = idx.iter().map(|&i| columns[i].clone()).collect();
                let block = Matrix::from_poly_columns(&mons, &cols);
                (mons, block)
            })
            .collect();
        Self {
            degree_bound,
            basis,
            matrix,
            blocks,
            r: r.clone(),
        }
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Product of the diagonal block determinants.
    pub fn determinant(&self) -> Result<GaussRat> {
        let mut det = GaussRat::one();
        for (_, block) in &self.blocks {
            det = det * linalg::determinant(block)?;
        }
        Ok(det)
    }

    /// Exact nonzero determinant, or an internal error when the matrix is
    /// singular (which does not happen for an ellipsoid).
    pub fn certify(&self) -> Result<GaussRat> {
        let det = self.determinant()?;
        if det.is_zero() {
            return Err(Error::Internal(format!(
                "Fischer matrix of degree bound {} is singular",
                self.degree_bound
            )));
        }
        Ok(det)
    }

    /// Solves `Δ(r·q) = rhs` for each right-hand side, top degree first.
    pub fn solve(&self, rhs: &[SparsePoly<V>]) -> Result<Vec<SparsePoly<V>>> {
        if let Some(bad) = rhs
            .iter()
            .find(|p| p.degree() > i64::from(self.degree_bound))
        {
            return Err(Error::invalid(format!(
                "right-hand side of degree {} exceeds the Fischer degree bound {}",
                bad.degree(),
                self.degree_bound
            )));
        }
        let dim = self.r.dim();
        let mut remainders = rhs.to_vec();
        let mut qs = vec![SparsePoly::zero(dim); rhs.len()];
        for (mons, block) in self.blocks.iter().rev() {
            let b = Matrix::from_poly_columns(mons, &remainders);
            let solution = match linalg::solve(block, &b, Pivoting::SmallestSize) {
                SolveOutcome::Solved { solution, rank } if rank == mons.len() => solution,
                outcome => {
                    return Err(Error::Internal(format!(
                        "Fischer block has rank {} < {}",
                        outcome.rank(),
                        mons.len()
                    )))
                }
            };
            for (j, (q, rem)) in qs.iter_mut().zip(&mut remainders).enumerate() {
                let part = SparsePoly::from_coeffs(mons, solution.column(j))?;
                if part.is_zero() {
                    continue;
                }
                *rem = &*rem - &(&self.r * &part).laplacian();
                *q = &*q + &part;
            }
        }
        if remainders.iter().any(|p| !p.is_zero()) {
            return Err(Error::Internal(
                "Fischer back substitution left a remainder".into(),
            ));
        }
        Ok(qs)
    }

    /// Harmonic extensions of polynomials of degree `≤ degree_bound + 2`.
    pub fn extend(&self, data: &[SparsePoly<V>]) -> Result<Vec<SparsePoly<V>>> {
        let rhs: Vec<_> = data.iter().map(SparsePoly::laplacian).collect();
        let qs = self.solve(&rhs)?;
        Ok(data
            .iter()
            .zip(qs)
            .map(|(p, q)| p - &(&self.r * &q))
            .collect())
    }
}

/// Harmonic extensions of `data` for the quadric `r`, sharing one Fischer
/// solve across all inputs.
pub(crate) fn extend_all<V: Variables>(
    r: &SparsePoly<V>,
    data: &[SparsePoly<V>],
) -> Result<Vec<SparsePoly<V>>> {
    let top = data.iter().map(SparsePoly::degree).max().unwrap_or(-1);
    if top <= 1 {
        return Ok(data.to_vec());
    }
    FischerSystem::build(r, (top - 2) as u32).extend(data)
}

/// `{x : (x − c)ᵀ Q (x − c) < 1}` with `Q` symmetric positive definite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ellipsoid {
    q: Vec<Vec<BigRational>>,
    center: Vec<BigRational>,
}

impl Ellipsoid {
    pub fn new(q: Vec<Vec<BigRational>>, center: Vec<BigRational>) -> Result<Self> {
        let n = center.len();
        if n == 0 {
            return Err(Error::invalid("ellipsoid dimension must be positive"));
        }
        if q.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: q.len(),
            });
        }
        if let Some(row) = q.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        let asymmetric = (0..n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .find(|&(i, j)| q[i][j] != q[j][i]);
        if let Some((i, j)) = asymmetric {
            return Err(Error::invalid(format!("Q is not symmetric at ({i}, {j})")));
        }
        // Sylvester's criterion, exactly.
        for k in 1..=n {
            let minor = Matrix::from_rows(
                (0..k)
                    .map(|i| (0..k).map(|j| GaussRat::real(q[i][j].clone())).collect())
                    .collect(),
            );
            let det = linalg::determinant(&minor)?;
            if !det.re.is_positive() {
                return Err(Error::invalid(format!(
                    "Q is not positive definite (leading minor {k} = {det})"
                )));
            }
        }
        Ok(Self { q, center })
    }

    /// Axis-aligned ellipse `(x−h)²/a² + (y−k)²/b² < 1`.
    pub fn planar(
        a: &BigRational,
        b: &BigRational,
        h: &BigRational,
        k: &BigRational,
    ) -> Result<Self> {
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::invalid("semi-axes must be positive"));
        }
        let zero = BigRational::zero();
        Self::new(
            vec![
                vec![(a * a).recip(), zero.clone()],
                vec![zero, (b * b).recip()],
            ],
            vec![h.clone(), k.clone()],
        )
    }

    pub fn unit_ball(n: usize) -> Self {
        let q = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self {
            q,
            center: vec![BigRational::zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn q(&self) -> &[Vec<BigRational>] {
        &self.q
    }

    pub fn center(&self) -> &[BigRational] {
        &self.center
    }

    /// `r(x) = (x − c)ᵀ Q (x − c) − 1`.
    pub fn defining_poly(&self) -> PolyRealN {
        let n = self.dim();
        let shifted: Vec<PolyRealN> = (0..n)
            .map(|i| {
                PolyRealN::var(n, i)
                    - PolyRealN::constant(n, GaussRat::real(self.center[i].clone()))
            })
            .collect();
        let mut r = PolyRealN::constant(n, GaussRat::from_int(-1));
        for i in 0..n {
            for j in 0..n {
                if self.q[i][j].is_zero() {
                    continue;
                }
                let t = (&shifted[i] * &shifted[j]).scale(&GaussRat::real(self.q[i][j].clone()));
                r = r + t;
            }
        }
        r
    }

    /// Certified Fischer system for degree bound `m`.
    pub fn fischer_system(&self, m: u32) -> Result<FischerSystem<crate::poly::RealN>> {
        let sys = FischerSystem::build(&self.defining_poly(), m);
        sys.certify()?;
        Ok(sys)
    }

    /// Harmonic polynomial `u` with `deg u ≤ deg p` and `u = p` on the
    /// boundary.
    pub fn harmonic_extension(&self, p: &PolyRealN) -> Result<PolyRealN> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.dim(),
            });
        }
        let mut out = extend_all(&self.defining_poly(), std::slice::from_ref(p))?;
        Ok(out.remove(0))
    }

    /// Parses either `{dim, Q, center}` (rationals as strings or integers,
    /// `Q` flat row-major or nested) or the planar `{a, b, h, k}` form.
    pub fn from_json(src: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(src)
            .map_err(|e| Error::parse(0, format!("ellipsoid JSON: {e}")))?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let field = |name: &str| {
            v.get(name)
                .ok_or_else(|| Error::invalid(format!("ellipsoid JSON is missing `{name}`")))
        };
        if v.get("a").is_some() {
            let h = v
                .get("h")
                .map(json_rational)
                .transpose()?
                .unwrap_or_default();
            let k = v
                .get("k")
                .map(json_rational)
                .transpose()?
                .unwrap_or_default();
            return Self::planar(
                &json_rational(field("a")?)?,
                &json_rational(field("b")?)?,
                &h,
                &k,
            );
        }
        let center = json_list(field("center")?)?
            .iter()
            .map(json_rational)
            .collect::<Result<Vec<_>>>()?;
        let n = center.len();
        if let Some(dim) = v.get("dim") {
            if dim.as_u64() != Some(n as u64) {
                return Err(Error::invalid(format!(
                    "`dim` {dim} does not match center length {n}"
                )));
            }
        }
        let q_json = json_list(field("Q")?)?;
        let q = if q_json.first().is_some_and(Value::is_array) {
            q_json
                .iter()
                .map(|row| json_list(row)?.iter().map(json_rational).collect())
                .collect::<Result<Vec<Vec<_>>>>()?
        } else {
            if q_json.len() != n * n {
                return Err(Error::DimensionMismatch {
                    expected: n * n,
                    found: q_json.len(),
                });
            }
            let flat = q_json
                .iter()
                .map(json_rational)
                .collect::<Result<Vec<_>>>()?;
            flat.chunks(n).map(<[_]>::to_vec).collect()
        };
        Self::new(q, center)
    }

    pub fn to_json(&self) -> EllipsoidJson {
        EllipsoidJson {
            dim: self.dim(),
            q: self.q.iter().flatten().map(ToString::to_string).collect(),
            center: self.center.iter().map(ToString::to_string).collect(),
        }
    }
}

/// Serialized form of an [`Ellipsoid`]: `Q` row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipsoidJson {
    pub dim: usize,
    #[serde(rename = "Q")]
    pub q: Vec<String>,
    pub center: Vec<String>,
}

fn json_list(v: &Value) -> Result<&Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::invalid(format!("expected a JSON array, found {v}")))
}

fn json_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(Error::invalid(format!(
            "expected an integer or a rational string, found {v}"
        ))),
    }
}

pub fn harmonic_extension(e: &Ellipsoid, p: &PolyRealN) -> Result<PolyRealN> {
    e.harmonic_extension(p)
}

pub fn is_harmonic<V: Variables>(p: &SparsePoly<V>) -> bool {
    p.is_harmonic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_real;
    use crate::poly::PolyZZbar;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn unit_disc() -> Ellipsoid {
        Ellipsoid::unit_ball(2)
    }

    #[test]
    fn fischer_unit_disc_m0() {
        let sys = unit_disc().fischer_system(0).unwrap();
        assert_eq!(
            sys.matrix(),
            &Matrix::from_rows(vec![vec![GaussRat::from_int(4)]])
        );
    }

    #[test]
    fn fischer_unit_disc_m1() {
        let sys = unit_disc().fischer_system(1).unwrap();
        assert_eq!(sys.basis().len(), 3);
        let x = PolyRealN::x();
        let r = unit_disc().defining_poly();
        assert_eq!((&r * &x).laplacian(), x.scale(&GaussRat::from_int(8)));
        // basis order is 1, y, x
        let expected = Matrix::from_rows(vec![
            vec![4.into(), 0.into(), 0.into()],
            vec![0.into(), 8.into(), 0.into()],
            vec![0.into(), 0.into(), 8.into()],
        ]);
        assert_eq!(sys.matrix(), &expected);
    }

    #[test]
    fn fischer_unit_ball_3d() {
        let sys = Ellipsoid::unit_ball(3).fischer_system(0).unwrap();
        assert_eq!(sys.matrix().get(0, 0), &GaussRat::from_int(6));
    }

    #[test]
    fn block_solve_matches_full_matrix() {
        let e = Ellipsoid::planar(&rat(3, 2), &rat(1, 1), &rat(1, 3), &rat(-1, 2)).unwrap();
        let sys = e.fischer_system(3).unwrap();
        assert_eq!(
            sys.determinant().unwrap(),
            linalg::determinant(sys.matrix()).unwrap()
        );
        let rhs = parse_real("x^3 - 2*x*y + y/3 + 5", 2).unwrap();
        let q = sys.solve(std::slice::from_ref(&rhs)).unwrap().remove(0);
        assert_eq!((&e.defining_poly() * &q).laplacian(), rhs);
        let b = Matrix::from_poly_columns(sys.basis(), std::slice::from_ref(&rhs));
        let full = linalg::solve(sys.matrix(), &b, Pivoting::FirstNonzero)
            .into_solution()
            .unwrap();
        assert_eq!(
            SparsePoly::from_coeffs(sys.basis(), full.column(0)).unwrap(),
            q
        );
    }

    #[test]
    fn linear_data_is_fixed() {
        let e = Ellipsoid::planar(&rat(2, 1), &rat(1, 1), &rat(1, 3), &rat(-1, 1)).unwrap();
        let x = PolyRealN::x();
        assert_eq!(e.harmonic_extension(&x).unwrap(), x);
    }

    #[test]
    fn modulus_on_unit_disc() {
        let p = parse_real("x^2 + y^2", 2).unwrap();
        assert_eq!(
            unit_disc().harmonic_extension(&p).unwrap(),
            PolyRealN::constant(2, GaussRat::one())
        );
    }

    #[test]
    fn x_squared_on_ellipse() {
        let e = Ellipsoid::planar(&rat(2, 1), &rat(1, 1), &rat(0, 1), &rat(0, 1)).unwrap();
        let u = e
            .harmonic_extension(&parse_real("x^2", 2).unwrap())
            .unwrap();
        assert_eq!(u, parse_real("(4*x^2 - 4*y^2 + 4)/5", 2).unwrap());
    }

    #[test]
    fn is_harmonic_examples() {
        assert!(is_harmonic(&parse_real("x^2 - y^2", 2).unwrap()));
        assert!(!is_harmonic(&PolyZZbar::zz(1, 1, GaussRat::one())));
        assert!(is_harmonic(&parse_real("x^3 - 3*x*y^2", 2).unwrap()));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let p = PolyRealN::var(3, 0);
        assert!(matches!(
            unit_disc().harmonic_extension(&p),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn rejects_bad_quadrics() {
        let z = rat(0, 1);
        let indefinite = vec![vec![rat(1, 1), z.clone()], vec![z.clone(), rat(-1, 1)]];
        assert!(Ellipsoid::new(indefinite, vec![z.clone(), z.clone()]).is_err());
        let asym = vec![vec![rat(2, 1), rat(1, 1)], vec![z.clone(), rat(2, 1)]];
        assert!(Ellipsoid::new(asym, vec![z.clone(), z.clone()]).is_err());
        assert!(Ellipsoid::planar(&rat(-1, 1), &rat(1, 1), &z, &z).is_err());
    }

    #[test]
    fn json_descriptors() {
        let planar = Ellipsoid::from_json(r#"{"a": 2, "b": "1", "h": "1/2", "k": 0}"#).unwrap();
        assert_eq!(
            planar,
            Ellipsoid::planar(&rat(2, 1), &rat(1, 1), &rat(1, 2), &rat(0, 1)).unwrap()
        );
        let general = Ellipsoid::from_json(
            r#"{"dim": 2, "Q": ["1/4", "0", "0", "1"], "center": ["1/2", "0"]}"#,
        )
        .unwrap();
        assert_eq!(general, planar);
        let nested =
            Ellipsoid::from_json(r#"{"Q": [["2","1"],["1","2"]], "center": [0, 0]}"#).unwrap();
        assert_eq!(nested.dim(), 2);
        let round = serde_json::to_string(&planar.to_json()).unwrap();
        assert_eq!(Ellipsoid::from_json(&round).unwrap(), planar);
        assert!(Ellipsoid::from_json(r#"{"dim": 3, "Q": ["1"], "center": ["0"]}"#).is_err());
    }
}
