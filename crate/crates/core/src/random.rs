//! Seeded generators for random test data: small-rational polynomials,
//! positive-definite ellipsoids, harmonic polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dirichlet::Ellipsoid;
use crate::gauss::GaussRat;
use crate::poly::{monomials_up_to, Monomial, PolyRealN, PolyZZbar, SparsePoly, Variables};

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n/d` with `|n| ≤ 5`, `1 ≤ d ≤ 4`.
pub fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(
        BigInt::from(rng.random_range(-5i64..=5)),
        BigInt::from(rng.random_range(1i64..=4)),
    )
}

pub fn small_gauss<R: Rng>(rng: &mut R, complex: bool) -> GaussRat {
    let re = small_rational(rng);
    let im = if complex && rng.random_bool(0.5) {
        small_rational(rng)
    } else {
        BigRational::from_integer(0.into())
    };
    GaussRat::new(re, im)
}

fn nonzero_gauss<R: Rng>(rng: &mut R, complex: bool) -> GaussRat {
    loop {
        let c = small_gauss(rng, complex);
        if !num_traits::Zero::is_zero(&c) {
            return c;
        }
    }
}

/// Sparse random polynomial of exact degree `degree`: every monomial of
/// degree `≤ degree` is kept with probability `density`, and one monomial of
/// top degree is always present.
pub fn poly_of_degree<V: Variables, R: Rng>(
    rng: &mut R,
    dim: usize,
    degree: u32,
    density: f64,
    complex: bool,
) -> SparsePoly<V> {
    let basis = monomials_up_to(dim, degree as i64);
    let top: Vec<&Monomial> = basis
        .iter()
        .filter(|m| m.degree() == degree as u64)
        .collect();
    let lead = (*top.choose(rng).expect("nonempty top degree")).clone();
    let mut terms = vec![(lead.clone(), nonzero_gauss(rng, complex))];
    for m in &basis {
        if *m != lead && rng.random_bool(density) {
            terms.push((m.clone(), small_gauss(rng, complex)));
        }
    }
    SparsePoly::from_terms(dim, terms).expect("dimensions agree")
}

/// Random `f(z, z̄)` with degree uniform in `0..=max_degree`.
pub fn zzbar_poly<R: Rng>(rng: &mut R, max_degree: u32) -> PolyZZbar {
    let d = rng.random_range(0..=max_degree);
    poly_of_degree(rng, 2, d, 0.4, true)
}

/// Random holomorphic polynomial of degree `≤ max_degree`.
pub fn holomorphic_poly<R: Rng>(rng: &mut R, max_degree: u32) -> PolyZZbar {
    let d = rng.random_range(0..=max_degree) as usize;
    let coeffs: Vec<GaussRat> = (0..=d).map(|_| small_gauss(rng, true)).collect();
    PolyZZbar::holomorphic(&coeffs)
}

/// Random real-coefficient data in `n` variables with degree in
/// `0..=max_degree`.
pub fn real_poly<R: Rng>(rng: &mut R, dim: usize, max_degree: u32) -> PolyRealN {
    let d = rng.random_range(0..=max_degree);
    poly_of_degree(rng, dim, d, 0.3, false)
}

/// `g(z) + h(z̄)` with independent complex coefficients, which is harmonic.
pub fn harmonic_poly<R: Rng>(rng: &mut R, max_degree: u32) -> PolyZZbar {
    let d = rng.random_range(1..=max_degree);
    let mut terms = Vec::new();
    for k in 0..=d {
        terms.push((Monomial::new(vec![k, 0]), small_gauss(rng, true)));
        if k > 0 {
            terms.push((Monomial::new(vec![0, k]), small_gauss(rng, true)));
        }
    }
    PolyZZbar::from_terms(2, terms).expect("dimensions agree")
}

/// Ellipsoid with `Q = LᵀL + I` for a random integer matrix `L` (entries in
/// `-2..=2`) and a random small-rational center.
pub fn ellipsoid<R: Rng>(rng: &mut R, dim: usize) -> Ellipsoid {
    let l: Vec<Vec<i64>> = (0..dim)
        .map(|_| (0..dim).map(|_| rng.random_range(-2i64..=2)).collect())
        .collect();
    let q = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let dot: i64 = (0..dim).map(|k| l[k][i] * l[k][j]).sum();
                    BigRational::from_integer(BigInt::from(dot + i64::from(i == j)))
                })
                .collect()
        })
        .collect();
    let center = (0..dim).map(|_| small_rational(rng)).collect();
    Ellipsoid::new(q, center).expect("LᵀL + I is positive definite")
}
