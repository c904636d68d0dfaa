//! Exact linear algebra over the Gaussian rationals.
//!
//! Systems are solved by fraction-free (Bareiss) elimination: each row of
//! `[A | B]` is first scaled by the lcm of its denominators, after which all
//! arithmetic stays in the Gaussian integers `ℤ[i]` and every division in the
//! Bareiss update is exact. Back substitution runs over `ℚ(i)` with free
//! variables set to zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gauss::GaussRat;
use crate::poly::{Monomial, SparsePoly, Variables};

/// Dense row-major matrix of Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussRat>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussRat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<GaussRat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Column `j` holds the coefficients of `columns[j]` on `row_basis`.
    pub fn from_poly_columns<V: Variables>(
        row_basis: &[Monomial],
        columns: &[SparsePoly<V>],
    ) -> Self {
        let mut m = Self::zeros(row_basis.len(), columns.len());
        for (j, p) in columns.iter().enumerate() {
            for (i, c) in p.coeffs_on(row_basis).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussRat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = GaussRat> + '_ {
        (0..self.rows).map(move |i| self.get(i, j).clone())
    }

    pub fn row(&self, i: usize) -> &[GaussRat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

/// Row pivot choice during elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Pivoting {
    /// Nonzero entry with the fewest bits, which limits coefficient growth.
    #[default]
    SmallestSize,
    /// First nonzero entry in the column.
    FirstNonzero,
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    /// One particular solution (free variables zero), one column per
    /// right-hand side.
    Solved {
        solution: Matrix,
        rank: usize,
    },
    Inconsistent {
        rank: usize,
    },
}

impl SolveOutcome {
    pub fn into_solution(self) -> Option<Matrix> {
        match self {
            SolveOutcome::Solved { solution, .. } => Some(solution),
            SolveOutcome::Inconsistent { .. } => None,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            SolveOutcome::Solved { rank, .. } | SolveOutcome::Inconsistent { rank } => *rank,
        }
    }
}

/// Solves `A·X = B` for every column of `B` at once.
pub fn solve(a: &Matrix, b: &Matrix, pivoting: Pivoting) -> SolveOutcome {
    assert_eq!(a.rows, b.rows, "right-hand side has wrong row count");
    let ech = Echelon::reduce(a, Some(b), pivoting);
    let rank = ech.pivots.len();
    let total = a.cols + b.cols;
    // Rows past the rank are zero in the A block; any nonzero in B is a
    // contradiction.
    for i in rank..a.rows {
        if (a.cols..total).any(|j| !ech.m[i][j].is_zero()) {
            return SolveOutcome::Inconsistent { rank };
        }
    }
    let mut solution = Matrix::zeros(a.cols, b.cols);
    for rhs in 0..b.cols {
        for k in (0..rank).rev() {
            let pc = ech.pivots[k];
            let row = &ech.m[k];
            let mut acc = row[a.cols + rhs].to_rat();
            for &later in &ech.pivots[k + 1..] {
                let x = solution.get(later, rhs);
                if !x.is_zero() && !row[later].is_zero() {
                    acc -= &(&row[later].to_rat() * x);
                }
            }
            let value = &acc / &row[pc].to_rat();
            solution.set(pc, rhs, value);
        }
    }
    SolveOutcome::Solved { solution, rank }
}

pub fn rank(a: &Matrix) -> usize {
    Echelon::reduce(a, None, Pivoting::SmallestSize)
        .pivots
        .len()
}

/// Exact determinant of a square matrix.
pub fn determinant(a: &Matrix) -> Result<GaussRat> {
    if !a.is_square() {
        return Err(Error::invalid(format!(
            "determinant of a non-square {}x{} matrix",
            a.rows, a.cols
        )));
    }
    if a.rows == 0 {
        return Ok(GaussRat::one());
    }
    let ech = Echelon::reduce(a, None, Pivoting::SmallestSize);
    if ech.pivots.len() < a.rows {
        return Ok(GaussRat::zero());
    }
    let n = a.rows;
    let mut det = ech.m[n - 1][n - 1].to_rat();
    if ech.swaps % 2 == 1 {
        det = -det;
    }
    let scale: BigInt = ech.row_scales.iter().product();
    Ok(&det / &GaussRat::real(BigRational::from_integer(scale)))
}

/// Gaussian integer used inside the fraction-free elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> Self {
        Self {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn one() -> Self {
        Self {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn bits(&self) -> u64 {
        self.re.bits() + self.im.bits()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt {
                re: &self.re * &o.re,
                im: BigInt::zero(),
            };
        }
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    /// Division known to be exact in `ℤ[i]`.
    fn div_exact(&self, d: &GaussInt) -> GaussInt {
        if d.im.is_zero() {
            debug_assert!((&self.re % &d.re).is_zero() && (&self.im % &d.re).is_zero());
            return GaussInt {
                re: &self.re / &d.re,
                im: &self.im / &d.re,
            };
        }
        let norm = &d.re * &d.re + &d.im * &d.im;
        let num_re = &self.re * &d.re + &self.im * &d.im;
        let num_im = &self.im * &d.re - &self.re * &d.im;
        debug_assert!((&num_re % &norm).is_zero() && (&num_im % &norm).is_zero());
        GaussInt {
            re: num_re / &norm,
            im: num_im / &norm,
        }
    }

    fn to_rat(&self) -> GaussRat {
        GaussRat::new(
            BigRational::from_integer(self.re.clone()),
            BigRational::from_integer(self.im.clone()),
        )
    }
}

struct Echelon {
    m: Vec<Vec<GaussInt>>,
    pivots: Vec<usize>,
    row_scales: Vec<BigInt>,
    swaps: usize,
}

impl Echelon {
    fn reduce(a: &Matrix, b: Option<&Matrix>, pivoting: Pivoting) -> Self {
        let bcols = b.map_or(0, |b| b.cols);
        let mut row_scales = Vec::with_capacity(a.rows);
        let mut m: Vec<Vec<GaussInt>> = (0..a.rows)
            .map(|i| {
                let entries: Vec<&GaussRat> = a
                    .row(i)
                    .iter()
                    .chain(b.map(|b| b.row(i)).unwrap_or(&[]))
                    .collect();
                let lcm = entries
                    .iter()
                    .fold(BigInt::one(), |acc, e| acc.lcm(&e.denom_lcm()));
                let row = entries
                    .iter()
                    .map(|e| GaussInt {
                        re: e.re.numer() * (&lcm / e.re.denom()),
                        im: e.im.numer() * (&lcm / e.im.denom()),
                    })
                    .collect();
                row_scales.push(lcm.abs());
                row
            })
            .collect();

        let total = a.cols + bcols;
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut prev = GaussInt::one();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let candidates = (r..a.rows).filter(|&i| !m[i][c].is_zero());
            let chosen = match pivoting {
                Pivoting::SmallestSize => candidates.min_by_key(|&i| m[i][c].bits()),
                Pivoting::FirstNonzero => candidates.into_iter().next(),
            };
            let Some(p) = chosen else { continue };
            if p != r {
                m.swap(p, r);
                row_scales.swap(p, r);
                swaps += 1;
            }
            let (head, tail) = m.split_at_mut(r + 1);
            let prow = &head[r];
            let pivot = &prow[c];
            for row in tail.iter_mut() {
                let factor = std::mem::replace(&mut row[c], GaussInt::zero());
                for j in c + 1..total {
                    let lhs = pivot.mul(&row[j]);
                    let updated = if factor.is_zero() || prow[j].is_zero() {
                        lhs
                    } else {
                        lhs.sub(&factor.mul(&prow[j]))
                    };
                    row[j] = if updated.is_zero() {
                        updated
                    } else {
                        updated.div_exact(&prev)
                    };
                }
            }
            prev = prow[c].clone();
            pivots.push(c);
            r += 1;
        }
        Echelon {
            m,
            pivots,
            row_scales,
            swaps,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn solves_small_system() {
        let a = mat(&[&[2, 1], &[1, 3]]);
        let b = mat(&[&[3], &[5]]);
        let x = solve(&a, &b, Pivoting::SmallestSize)
            .into_solution()
            .unwrap();
        assert_eq!(x.get(0, 0), &GaussRat::ratio(4, 5));
        assert_eq!(x.get(1, 0), &GaussRat::ratio(7, 5));
    }

    #[test]
    fn detects_inconsistency() {
        let a = mat(&[&[1, 1], &[2, 2]]);
        let b = mat(&[&[1], &[3]]);
        assert!(matches!(
            solve(&a, &b, Pivoting::FirstNonzero),
            SolveOutcome::Inconsistent { rank: 1 }
        ));
    }

    #[test]
    fn underdetermined_sets_free_to_zero() {
        let a = mat(&[&[1, 0, 1], &[0, 1, 1]]);
        let b = mat(&[&[2], &[3]]);
        let x = solve(&a, &b, Pivoting::SmallestSize)
            .into_solution()
            .unwrap();
        assert_eq!(x.column(0).collect::<Vec<_>>(), vec![q(2), q(3), q(0)]);
    }

    #[test]
    fn complex_entries() {
        let i = GaussRat::i();
        let a = Matrix::from_rows(vec![
            vec![i.clone(), q(1)],
            vec![q(1), GaussRat::complex(1, 2, 1, 3)],
        ]);
        let x_true = [
            GaussRat::complex(2, 7, -1, 5),
            GaussRat::complex(-3, 1, 4, 9),
        ];
        let b = Matrix::from_rows(
            (0..2)
                .map(|r| vec![a.row(r).iter().zip(&x_true).map(|(u, v)| u * v).sum()])
                .collect(),
        );
        for piv in [Pivoting::SmallestSize, Pivoting::FirstNonzero] {
            let x = solve(&a, &b, piv).into_solution().unwrap();
            assert_eq!(x.column(0).collect::<Vec<_>>(), x_true.to_vec());
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&mat(&[&[4]])).unwrap(), q(4));
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])).unwrap(), q(-1));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])).unwrap(), q(0));
        let h = Matrix::from_rows(
            (1..=3)
                .map(|i| (1..=3).map(|j| GaussRat::ratio(1, i + j - 1)).collect())
                .collect(),
        );
        assert_eq!(determinant(&h).unwrap(), GaussRat::ratio(1, 2160));
        assert!(determinant(&mat(&[&[1, 2]])).is_err());
    }

    #[test]
    fn rank_with_skipped_columns() {
        let a = mat(&[&[0, 1, 2], &[0, 2, 5], &[0, 0, 0]]);
        assert_eq!(rank(&a), 2);
    }
}
