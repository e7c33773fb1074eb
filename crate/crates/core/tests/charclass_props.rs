use num_traits::Zero;
use proptest::prelude::*;
use tqrf_core::charclass::{
    chern_character, index_bundle, index_line, pontryagin_from_complexification, trace_invariance_check,
    BettiVector, FormalClass, GaussMatrix, GaussQ, IndexData,
};
use tqrf_core::rational::{q, qi, Q};

fn rat() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn class() -> impl Strategy<Value = FormalClass> {
    (rat(), rat(), rat()).prop_map(|(a, b, c)| FormalClass::new(a, b, c))
}

fn binom2(r: &Q) -> Q {
    r * (r - qi(1)) / qi(2)
}

fn gauss_matrix(n: usize) -> impl Strategy<Value = GaussMatrix> {
    proptest::collection::vec((-3i64..=3, -3i64..=3), n * n)
        .prop_map(move |xs| GaussMatrix::new(n, xs.into_iter().map(|(a, b)| GaussQ::new(qi(a), qi(b))).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn truncated_algebra_is_commutative_and_associative(a in class(), b in class(), c in class()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &FormalClass::scalar(qi(1)), a.clone());
    }

    #[test]
    fn character_is_multiplicative(re in 1i64..5, rf in 1i64..5, c1e in rat(), c2e in rat(), c1f in rat(), c2f in rat()) {
        let (e, f) = (chern_character(re, &c1e, &c2e), chern_character(rf, &c1f, &c2f));
        let (r, c1, c2) = (&e * &f).chern_numbers();
        let (qre, qrf) = (qi(re), qi(rf));
        prop_assert_eq!(r, qi(re * rf));
        prop_assert_eq!(c1, &qrf * &c1e + &qre * &c1f);
        let tensor_c2 = binom2(&qrf) * &c1e * &c1e
            + (&qre * &qrf - qi(1)) * &c1e * &c1f
            + binom2(&qre) * &c1f * &c1f
            + &qrf * &c2e
            + &qre * &c2f;
        prop_assert_eq!(c2, tensor_c2);
        // Whitney sum
        let (r, c1, c2) = (&e + &f).chern_numbers();
        prop_assert_eq!(r, qi(re + rf));
        prop_assert_eq!(c1, &c1e + &c1f);
        prop_assert_eq!(c2, &c2e + &c2f + &c1e * &c1f);
    }

    #[test]
    fn pontryagin_from_the_spinor_bundles(a in rat(), b in rat()) {
        let (wp, wm) = (chern_character(2, &Q::zero(), &a), chern_character(2, &Q::zero(), &b));
        let p1 = pontryagin_from_complexification(&(&wp * &wm));
        prop_assert_eq!(&p1, &(qi(-2) * &a - qi(2) * &b));
        prop_assert_eq!(p1, qi(-2) * (&wp + &wm).chern_numbers().2);
    }

    #[test]
    fn betti_identities(b0 in 0u64..3, b1 in 0u64..4, bp in 0u64..6, bm in 0u64..6) {
        let v = BettiVector::new([b0, b1, bp + bm, b1, b0], bp, bm).unwrap();
        // with Poincare duality, (euler + signature)/2 = b0 - b1 + b+
        prop_assert_eq!(v.euler() + v.signature(), 2 * (b0 as i64 - b1 as i64 + bp as i64));
        // the d + delta reading: euler characteristic from the alternating sum
        let d = IndexData { tau: qi(v.signature()), ..IndexData::default() };
        let line = index_line(&d);
        prop_assert_eq!(line.exact, qi(-v.signature()) / qi(8));
        prop_assert!(BettiVector::new([b0, b1, bp + bm + 1, b1, b0], bp, bm).is_err());
    }

    #[test]
    fn integrality_flag_tracks_the_value(tau in -40i64..40, c1sq in -10i64..10, p1 in -30i64..30, c2 in -5i64..5) {
        let d = IndexData { tau: qi(tau), c1sq_line: qi(c1sq), dim_e: qi(2), p1: qi(p1), c1sq_e: Q::zero(), c2_e: qi(c2) };
        for v in [index_line(&d), index_bundle(&d)] {
            prop_assert_eq!(v.integral, v.exact.is_integer());
            prop_assert_eq!(v.warning.is_some(), !v.integral);
        }
    }

    #[test]
    fn traces_are_conjugation_invariant(f in gauss_matrix(3), g in gauss_matrix(3), k in 1u32..4) {
        match g.inverse() {
            Ok(inv) => {
                prop_assert_eq!(g.mul(&inv), GaussMatrix::identity(3));
                prop_assert!(trace_invariance_check(&f, &g, k).unwrap());
            }
            Err(_) => {
                // singular: some row combination vanishes, so a brute-force
                // determinant is zero
                let m = |i: usize, j: usize| g.get(i, j).clone();
                let mul = |a: &GaussQ, b: &GaussQ| GaussQ::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re);
                let mut det = GaussQ::zero();
                for (p, sign) in [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([1, 0, 2], -1), ([2, 1, 0], -1)] {
                    let t = mul(&mul(&m(0, p[0]), &m(1, p[1])), &m(2, p[2]));
                    det = GaussQ::new(&det.re + qi(sign) * &t.re, &det.im + qi(sign) * &t.im);
                }
                prop_assert!(det.is_zero());
                prop_assert!(trace_invariance_check(&f, &g, k).is_err());
            }
        }
    }
}
