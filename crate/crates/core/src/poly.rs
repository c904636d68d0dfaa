//! Sparse polynomials with exact Gaussian-rational coefficients.
//!
//! One container, [`SparsePoly`], serves both variable systems: the conjugate
//! pair `z, z̄` in the plane ([`PolyZZbar`]) and `n` real variables
//! ([`PolyRealN`]). Terms are kept in a `BTreeMap` keyed by [`Monomial`],
//! whose order is graded-lexicographic, so iteration and serialization are
//! deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gauss::GaussRat;

/// Exponent vector. Ordered by total degree first, then lexicographically,
/// so `x² > xy > y² > x > y > 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `dim` variables of total degree `<= degree`, ascending.
pub fn monomials_up_to(dim: usize, degree: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if degree < 0 {
        return out;
    }
    for d in 0..=degree as u32 {
        let mut level = Vec::new();
        let mut cur = vec![0u32; dim];
        compositions(d, 0, &mut cur, &mut level);
        level.sort();
        out.extend(level);
    }
    out
}

fn compositions(rem: u32, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i + 1 == cur.len() {
        cur[i] = rem;
        out.push(Monomial(cur.clone()));
        return;
    }
    for e in 0..=rem {
        cur[i] = e;
        compositions(rem - e, i + 1, cur, out);
    }
    cur[i] = 0;
}

/// Variable system attached to a [`SparsePoly`]. Supplies the Laplacian and
/// the variable names used in text output.
pub trait Variables: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    fn var_name(dim: usize, i: usize) -> String;
    fn laplacian(p: &SparsePoly<Self>) -> SparsePoly<Self>;
}

/// The conjugate pair `(z, z̄)`; exponent vector `[a, b]` means `z^a z̄^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZZbar;

/// Real variables `x1..xn` (`x, y` when `n = 2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealN;

impl Variables for ZZbar {
    fn var_name(_dim: usize, i: usize) -> String {
        ["z", "zbar"][i].to_string()
    }

    fn laplacian(p: &PolyZZbar) -> PolyZZbar {
        p.d_dzbar().d_dz().scale(&GaussRat::from_int(4))
    }
}

impl Variables for RealN {
    fn var_name(dim: usize, i: usize) -> String {
        if dim == 2 {
            ["x", "y"][i].to_string()
        } else {
            format!("x{}", i + 1)
        }
    }

    fn laplacian(p: &PolyRealN) -> PolyRealN {
        (0..p.dim()).fold(PolyRealN::zero(p.dim()), |acc, i| {
            acc + p.partial(i).partial(i)
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly<V: Variables> {
    dim: usize,
    terms: BTreeMap<Monomial, GaussRat>,
    _vars: PhantomData<V>,
}

pub type PolyZZbar = SparsePoly<ZZbar>;
pub type PolyRealN = SparsePoly<RealN>;

impl<V: Variables> SparsePoly<V> {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
            _vars: PhantomData,
        }
    }

    pub fn constant(dim: usize, c: GaussRat) -> Self {
        Self::term(Monomial::one(dim), c)
    }

    pub fn term(m: Monomial, c: GaussRat) -> Self {
        let mut p = Self::zero(m.dim());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Collects `(monomial, coefficient)` pairs, summing repeats and dropping
    /// zeros.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, GaussRat)>,
    {
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.dim(),
                });
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .next_back()
            .map_or(-1, |m| m.degree() as i64)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn coeff_of(&self, exps: &[u32]) -> GaussRat {
        self.coeff(&Monomial(exps.to_vec()))
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
            _vars: PhantomData,
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = Self::zero(self.dim);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.try_mul(m2)?, &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn try_pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::constant(self.dim, GaussRat::one());
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        Ok(())
    }

    pub fn map_coeffs(&self, f: impl Fn(&GaussRat) -> GaussRat) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] = e - 1;
            out.add_term(Monomial(exps), &(c * &GaussRat::from_int(i64::from(e))));
        }
        out
    }

    pub fn laplacian(&self) -> Self {
        V::laplacian(self)
    }

    pub fn is_harmonic(&self) -> bool {
        self.laplacian().is_zero()
    }

    /// Exact evaluation with Gaussian-rational values for each variable.
    pub fn evaluate_exact(&self, point: &[GaussRat]) -> Result<GaussRat> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: point.len(),
            });
        }
        let mut total = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= v;
                }
            }
            total += &t;
        }
        Ok(total)
    }

    /// Float evaluation with one complex value per variable.
    pub fn evaluate_vars(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(
            point.len(),
            self.dim,
            "evaluation point has wrong dimension"
        );
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(c.to_complex64(), |acc, (&e, v)| acc * v.powu(e))
            })
            .sum()
    }

    /// Exact division: `Some(q)` with `self = divisor·q`, or `None` when
    /// `divisor` does not divide `self`. Long division in the graded order.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Option<Self>> {
        self.check_dim(divisor)?;
        if divisor.is_zero() {
            return Err(Error::invalid("division by the zero polynomial"));
        }
        if self.is_zero() {
            return Ok(Some(Self::zero(self.dim)));
        }
        // Long division in the graded order: if the divisor divides the
        // remainder, its leading monomial divides the remainder's.
        let (lead_m, lead_c) = divisor.terms.last_key_value().expect("nonzero divisor");
        let lead_inv = lead_c.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quotient = Self::zero(self.dim);
        while let Some((m, c)) = rem.terms.last_key_value() {
            let Some(shift) = m.checked_div(lead_m) else {
                return Ok(None);
            };
            let t = Self::term(shift, c * &lead_inv);
            rem = &rem - &divisor.try_mul(&t)?;
            quotient = &quotient + &t;
        }
        Ok(Some(quotient))
    }

    /// Polynomial with the given coefficients on `basis`.
    pub fn from_coeffs(
        basis: &[Monomial],
        coeffs: impl IntoIterator<Item = GaussRat>,
    ) -> Result<Self> {
        let dim = basis.first().map_or(0, Monomial::dim);
        Self::from_terms(dim, basis.iter().cloned().zip(coeffs))
    }

    /// Coefficient vector of `self` on `basis`. Terms outside `basis` are
    /// ignored.
    pub fn coeffs_on(&self, basis: &[Monomial]) -> Vec<GaussRat> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }
}

impl PolyZZbar {
    pub fn z() -> Self {
        Self::term(Monomial(vec![1, 0]), GaussRat::one())
    }

    pub fn zbar() -> Self {
        Self::term(Monomial(vec![0, 1]), GaussRat::one())
    }

    /// `c·z^a z̄^b`.
    pub fn zz(a: u32, b: u32, c: GaussRat) -> Self {
        Self::term(Monomial(vec![a, b]), c)
    }

    pub fn zero2() -> Self {
        Self::zero(2)
    }

    pub fn from_const(c: GaussRat) -> Self {
        Self::constant(2, c)
    }

    /// Holomorphic polynomial `Σ coeffs[k]·z^k`.
    pub fn holomorphic(coeffs: &[GaussRat]) -> Self {
        let mut p = Self::zero(2);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial(vec![k as u32, 0]), c);
        }
        p
    }

    pub fn d_dz(&self) -> Self {
        self.partial(0)
    }

    pub fn d_dzbar(&self) -> Self {
        self.partial(1)
    }

    /// Complex conjugate as a function: `c·z^a z̄^b ↦ c̄·z^b z̄^a`.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(2);
        for (m, c) in &self.terms {
            out.add_term(Monomial(vec![m.0[1], m.0[0]]), &c.conj());
        }
        out
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.0[1] == 0)
    }

    /// Coefficients of `z^0..=z^degree`; holomorphic part only.
    pub fn holomorphic_coeffs(&self, degree: usize) -> Vec<GaussRat> {
        (0..=degree as u32)
            .map(|k| self.coeff_of(&[k, 0]))
            .collect()
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.evaluate_vars(&[z, z.conj()])
    }

    pub fn evaluate_at(&self, z: &GaussRat) -> GaussRat {
        self.evaluate_exact(&[z.clone(), z.conj()])
            .expect("dimension is 2")
    }

    /// Rewrites `self` in `x, y` using `z = x + iy`, `z̄ = x − iy`.
    pub fn to_xy(&self) -> PolyRealN {
        let z = PolyRealN::var(2, 0) + PolyRealN::var(2, 1).scale(&GaussRat::i());
        let zbar = PolyRealN::var(2, 0) - PolyRealN::var(2, 1).scale(&GaussRat::i());
        substitute(self, &z, &zbar)
    }
}

impl PolyRealN {
    pub fn var(dim: usize, i: usize) -> Self {
        Self::term(Monomial::var(dim, i), GaussRat::one())
    }

    pub fn x() -> Self {
        Self::var(2, 0)
    }

    pub fn y() -> Self {
        Self::var(2, 1)
    }

    pub fn evaluate(&self, point: &[f64]) -> Complex64 {
        let pt: Vec<Complex64> = point.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.evaluate_vars(&pt)
    }

    /// Rewrites a two-variable polynomial in `z, z̄` using `x = (z + z̄)/2`,
    /// `y = (z − z̄)/(2i)`.
    pub fn to_zzbar(&self) -> Result<PolyZZbar> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.dim,
            });
        }
        let half = GaussRat::ratio(1, 2);
        let x = (PolyZZbar::z() + PolyZZbar::zbar()).scale(&half);
        let y = (PolyZZbar::z() - PolyZZbar::zbar()).scale(&GaussRat::complex(0, 1, -1, 2));
        Ok(substitute(self, &x, &y))
    }
}

pub fn xy_to_zzbar(p: &PolyRealN) -> Result<PolyZZbar> {
    p.to_zzbar()
}

pub fn zzbar_to_xy(p: &PolyZZbar) -> PolyRealN {
    p.to_xy()
}

/// Substitutes two-variable images for the two variables of `p`.
fn substitute<A: Variables, B: Variables>(
    p: &SparsePoly<A>,
    first: &SparsePoly<B>,
    second: &SparsePoly<B>,
) -> SparsePoly<B> {
    let deg = p.degree().max(0) as usize;
    let powers = |base: &SparsePoly<B>| {
        let mut v = vec![SparsePoly::<B>::constant(2, GaussRat::one())];
        for k in 1..=deg {
            v.push(&v[k - 1] * base);
        }
        v
    };
    let (pf, ps) = (powers(first), powers(second));
    let mut out = SparsePoly::<B>::zero(2);
    for (m, c) in &p.terms {
        let t = (&pf[m.0[0] as usize] * &ps[m.0[1] as usize]).scale(c);
        out = out + t;
    }
    out
}

impl<V: Variables> Add for &SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn add(self, rhs: &SparsePoly<V>) -> SparsePoly<V> {
        assert_eq!(
            self.dim, rhs.dim,
            "adding polynomials of different dimension"
        );
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<V: Variables> Sub for &SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn sub(self, rhs: &SparsePoly<V>) -> SparsePoly<V> {
        assert_eq!(
            self.dim, rhs.dim,
            "subtracting polynomials of different dimension"
        );
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<V: Variables> Mul for &SparsePoly<V> {
    type Output = SparsePoly<V>;
    /// Panics on dimension mismatch or exponent overflow; use
    /// [`SparsePoly::try_mul`] to get those as errors.
    fn mul(self, rhs: &SparsePoly<V>) -> SparsePoly<V> {
        self.try_mul(rhs).expect("polynomial multiplication failed")
    }
}

impl<V: Variables> Neg for &SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn neg(self) -> SparsePoly<V> {
        self.map_coeffs(|c| -c)
    }
}

impl<V: Variables> Neg for SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn neg(self) -> SparsePoly<V> {
        -&self
    }
}

macro_rules! forward_poly_ops {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<V: Variables> $tr<SparsePoly<V>> for SparsePoly<V> {
            type Output = SparsePoly<V>;
            fn $m(self, rhs: SparsePoly<V>) -> SparsePoly<V> { (&self).$m(&rhs) }
        }
        impl<V: Variables> $tr<&SparsePoly<V>> for SparsePoly<V> {
            type Output = SparsePoly<V>;
            fn $m(self, rhs: &SparsePoly<V>) -> SparsePoly<V> { (&self).$m(rhs) }
        }
        impl<V: Variables> $tr<SparsePoly<V>> for &SparsePoly<V> {
            type Output = SparsePoly<V>;
            fn $m(self, rhs: SparsePoly<V>) -> SparsePoly<V> { self.$m(&rhs) }
        }
    )*};
}
forward_poly_ops!(Add::add, Sub::sub, Mul::mul);

impl<V: Variables> fmt::Debug for SparsePoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::to_canonical(self))
    }
}

impl<V: Variables> fmt::Display for SparsePoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::to_pretty(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussRat {
        GaussRat::ratio(n, d)
    }

    #[test]
    fn graded_lex_order() {
        let ms = monomials_up_to(2, 2);
        let exps: Vec<_> = ms.iter().map(|m| m.exps().to_vec()).collect();
        assert_eq!(
            exps,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![0, 2],
                vec![1, 1],
                vec![2, 0]
            ]
        );
        assert_eq!(monomials_up_to(3, 4).len(), 35);
        assert!(monomials_up_to(2, -1).is_empty());
    }

    #[test]
    fn zero_has_degree_minus_one() {
        assert_eq!(PolyZZbar::zero2().degree(), -1);
        assert_eq!(PolyZZbar::from_const(q(3, 1)).degree(), 0);
    }

    #[test]
    fn x_to_zzbar() {
        let half = q(1, 2);
        let expected = PolyZZbar::z().scale(&half) + PolyZZbar::zbar().scale(&half);
        assert_eq!(xy_to_zzbar(&PolyRealN::x()).unwrap(), expected);
    }

    #[test]
    fn modulus_squared_to_zzbar() {
        let p = &PolyRealN::x() * &PolyRealN::x() + &PolyRealN::y() * &PolyRealN::y();
        assert_eq!(p.to_zzbar().unwrap(), PolyZZbar::zz(1, 1, q(1, 1)));
    }

    #[test]
    fn x_squared_to_zzbar() {
        let p = &PolyRealN::x() * &PolyRealN::x();
        let expected = PolyZZbar::zz(2, 0, q(1, 4))
            + PolyZZbar::zz(1, 1, q(1, 2))
            + PolyZZbar::zz(0, 2, q(1, 4));
        assert_eq!(p.to_zzbar().unwrap(), expected);
    }

    #[test]
    fn to_zzbar_rejects_wrong_dim() {
        let p = PolyRealN::var(3, 0);
        assert_eq!(
            p.to_zzbar().unwrap_err(),
            Error::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn zzbar_to_xy_examples() {
        let i = GaussRat::i();
        assert_eq!(
            PolyZZbar::z().to_xy(),
            PolyRealN::x() + PolyRealN::y().scale(&i)
        );
        let (x, y) = (PolyRealN::x(), PolyRealN::y());
        assert_eq!(PolyZZbar::zz(1, 1, q(1, 1)).to_xy(), &x * &x + &y * &y);
        let z2 = &x * &x - &y * &y + (&x * &y).scale(&GaussRat::from_int(2)).scale(&i);
        assert_eq!(PolyZZbar::zz(2, 0, q(1, 1)).to_xy(), z2);
    }

    #[test]
    fn wirtinger_examples() {
        assert!(PolyZZbar::zz(3, 0, q(1, 1)).d_dzbar().is_zero());
        assert_eq!(PolyZZbar::zz(1, 1, q(1, 1)).d_dz(), PolyZZbar::zbar());
        assert_eq!(
            PolyZZbar::zz(2, 2, q(1, 1)).d_dzbar(),
            PolyZZbar::zz(2, 1, q(2, 1))
        );
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(
            PolyZZbar::zz(1, 1, q(1, 1)).laplacian(),
            PolyZZbar::from_const(q(4, 1))
        );
        let (x, y) = (PolyRealN::x(), PolyRealN::y());
        assert_eq!(
            (&x * &x + &y * &y).laplacian(),
            PolyRealN::constant(2, q(4, 1))
        );
        assert!((&x * &x - &y * &y).laplacian().is_zero());
    }

    #[test]
    fn arithmetic_examples() {
        let iz = PolyZZbar::z().scale(&GaussRat::i());
        assert_eq!(iz.conjugate(), PolyZZbar::zbar().scale(&-GaussRat::i()));

        let (z, zb) = (PolyZZbar::z(), PolyZZbar::zbar());
        let lhs = (&z + &zb) * (&z - &zb);
        assert_eq!(
            lhs,
            PolyZZbar::zz(2, 0, q(1, 1)) - PolyZZbar::zz(0, 2, q(1, 1))
        );

        let modsq = PolyZZbar::zz(1, 1, q(1, 1));
        assert_eq!(
            modsq.evaluate_at(&GaussRat::complex(3, 1, 4, 1)),
            GaussRat::from_int(25)
        );
        let v = modsq.evaluate(Complex64::new(3.0, 4.0));
        assert!((v - Complex64::new(25.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn divide_exact_examples() {
        let r = PolyZZbar::zz(1, 1, q(1, 1)) - PolyZZbar::from_const(q(1, 1));
        let r2 = &r * &r;
        assert_eq!(r2.divide_exact(&r).unwrap(), Some(r.clone()));
        assert_eq!(PolyZZbar::z().divide_exact(&r).unwrap(), None);
        let p = PolyZZbar::zz(2, 1, q(1, 1)) - PolyZZbar::z();
        assert_eq!(p.divide_exact(&r).unwrap(), Some(PolyZZbar::z()));
        assert!(p.divide_exact(&PolyZZbar::zero2()).is_err());
    }

    #[test]
    fn divide_exact_same_degree_not_divisible() {
        let r = PolyZZbar::zz(1, 1, q(1, 1)) - PolyZZbar::from_const(q(1, 1));
        let p = PolyZZbar::zz(1, 1, q(1, 1));
        assert_eq!(p.divide_exact(&r).unwrap(), None);
    }

    #[test]
    fn exponent_overflow_is_reported() {
        let big = PolyZZbar::zz(u32::MAX, 0, q(1, 1));
        assert_eq!(
            big.try_mul(&PolyZZbar::z()).unwrap_err(),
            Error::ExponentOverflow
        );
    }

    #[test]
    fn real_partials() {
        let p = PolyRealN::from_terms(3, [(Monomial::new(vec![2, 1, 0]), q(3, 1))]).unwrap();
        assert_eq!(
            p.partial(0),
            PolyRealN::from_terms(3, [(Monomial::new(vec![1, 1, 0]), q(6, 1))]).unwrap()
        );
        assert!(p.partial(2).is_zero());
    }
}
