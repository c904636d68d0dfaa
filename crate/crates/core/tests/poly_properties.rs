mod common;

use common::*;
use polyszego_core::format::{parse_real, parse_zzbar, to_canonical, to_pretty};
use polyszego_core::{xy_to_zzbar, zzbar_to_xy, PolyZZbar};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(p in zzbar(6), q in zzbar(6), r in zzbar(6)) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn laplacian_commutes_with_change_of_variables(p in real(2, 6)) {
        prop_assert_eq!(xy_to_zzbar(&p.laplacian()).unwrap(), xy_to_zzbar(&p).unwrap().laplacian());
    }

    #[test]
    fn xy_round_trip(p in zzbar(6)) {
        prop_assert_eq!(xy_to_zzbar(&zzbar_to_xy(&p)).unwrap(), p);
    }

    #[test]
    fn conjugate_swaps_wirtinger_derivatives(p in zzbar(6)) {
        prop_assert_eq!(p.conjugate().d_dz(), p.d_dzbar().conjugate());
    }

    #[test]
    fn exact_division_recovers_factor(p in zzbar(4), q in nonzero_zzbar(4)) {
        prop_assert_eq!((&p * &q).divide_exact(&q).unwrap(), Some(p));
    }

    #[test]
    fn degree_is_additive(p in nonzero_zzbar(6), q in nonzero_zzbar(6)) {
        prop_assert_eq!((&p * &q).degree(), p.degree() + q.degree());
    }

    #[test]
    fn text_round_trip(p in zzbar(6)) {
        prop_assert_eq!(&parse_zzbar(&to_canonical(&p)).unwrap(), &p);
        prop_assert_eq!(&parse_zzbar(&to_pretty(&p)).unwrap(), &p);
    }

    #[test]
    fn real_text_round_trip(p in real(3, 5)) {
        prop_assert_eq!(&parse_real(&to_pretty(&p), 3).unwrap(), &p);
        prop_assert_eq!(&parse_real(&to_canonical(&p), 3).unwrap(), &p);
    }

    #[test]
    fn exact_and_float_evaluation_agree(p in zzbar(5), re in -3i64..=3, im in -3i64..=3) {
        let z = polyszego_core::GaussRat::complex(re, 2, im, 3);
        let exact = p.evaluate_at(&z).to_complex64();
        let float = p.evaluate(z.to_complex64());
        prop_assert!((exact - float).norm() <= 1e-9 * (1.0 + exact.norm()));
    }
}

#[test]
fn monomial_product_overflow_is_an_error() {
    let big = PolyZZbar::zz(u32::MAX, 0, polyszego_core::GaussRat::from_int(1));
    assert!(big.try_mul(&PolyZZbar::z()).is_err());
}
