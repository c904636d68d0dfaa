#![allow(dead_code)]

use num_rational::BigRational;
use polyszego_core::{Ellipsoid, GaussRat, Monomial, PolyRealN, PolyZZbar, SparsePoly};
use proptest::prelude::*;

pub fn small_gauss() -> impl Strategy<Value = GaussRat> {
    (-5i64..=5, 1i64..=4, -5i64..=5, 1i64..=4)
        .prop_map(|(a, b, c, d)| GaussRat::complex(a, b, c, d))
}

pub fn nonzero_gauss() -> impl Strategy<Value = GaussRat> {
    small_gauss().prop_filter("nonzero", |c| !num_traits::Zero::is_zero(c))
}

pub fn small_real() -> impl Strategy<Value = GaussRat> {
    (-5i64..=5, 1i64..=4).prop_map(|(a, b)| GaussRat::ratio(a, b))
}

fn exps(dim: usize, max_degree: u32) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..=max_degree, dim)
        .prop_filter("total degree", move |e| e.iter().sum::<u32>() <= max_degree)
}

/// Sparse polynomial with at most `max_terms` terms of total degree
/// `≤ max_degree`.
pub fn poly<V: polyszego_core::poly::Variables>(
    dim: usize,
    max_degree: u32,
    max_terms: usize,
    coeff: impl Strategy<Value = GaussRat> + 'static,
) -> impl Strategy<Value = SparsePoly<V>> {
    proptest::collection::vec((exps(dim, max_degree), coeff), 0..=max_terms).prop_map(
        move |terms| {
            SparsePoly::from_terms(dim, terms.into_iter().map(|(e, c)| (Monomial::new(e), c)))
                .unwrap()
        },
    )
}

pub fn zzbar(max_degree: u32) -> impl Strategy<Value = PolyZZbar> {
    poly(2, max_degree, 8, small_gauss())
}

pub fn nonzero_zzbar(max_degree: u32) -> impl Strategy<Value = PolyZZbar> {
    zzbar(max_degree).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn real(dim: usize, max_degree: u32) -> impl Strategy<Value = PolyRealN> {
    poly(dim, max_degree, 10, small_real())
}

pub fn holomorphic(max_degree: usize) -> impl Strategy<Value = PolyZZbar> {
    proptest::collection::vec(small_gauss(), 0..=max_degree + 1)
        .prop_map(|c| PolyZZbar::holomorphic(&c))
}

/// Ellipsoid with `Q = LᵀL + I`, `L` an integer matrix with entries in
/// `-2..=2`, and a small rational center.
pub fn ellipsoid(dim: usize) -> impl Strategy<Value = Ellipsoid> {
    (
        proptest::collection::vec(-2i64..=2, dim * dim),
        proptest::collection::vec((-3i64..=3, 1i64..=3), dim),
    )
        .prop_map(move |(l, c)| {
            let q = (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| {
                            let dot: i64 = (0..dim).map(|k| l[k * dim + i] * l[k * dim + j]).sum();
                            BigRational::from_integer((dot + i64::from(i == j)).into())
                        })
                        .collect()
                })
                .collect();
            let center = c
                .into_iter()
                .map(|(n, d)| BigRational::new(n.into(), d.into()))
                .collect();
            Ellipsoid::new(q, center).unwrap()
        })
}

/// Axis-parallel ellipse with small rational axes and center.
pub fn ellipse() -> impl Strategy<Value = polyszego_core::Ellipse> {
    (
        1i64..=5,
        1i64..=3,
        1i64..=5,
        1i64..=3,
        -3i64..=3,
        1i64..=3,
        -3i64..=3,
        1i64..=3,
    )
        .prop_map(|(an, ad, bn, bd, hn, hd, kn, kd)| {
            let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
            polyszego_core::Ellipse::new(r(an, ad), r(bn, bd), r(hn, hd), r(kn, kd)).unwrap()
        })
}
