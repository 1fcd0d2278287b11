use motzeta_core::algebra::{integer, IntLaurent, MultiPoly};
use motzeta_core::hodge::{hd_zeta, realize_polynomial, HodgeZeta};
use motzeta_core::power::{lambda_factorize, power, reconstruct, KapranovZeta};
use motzeta_core::zeta::{zeta_base, zeta_class};
use motzeta_core::{DenomForm, MotivicClass, Ring, TruncatedSeries};
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = IntLaurent> {
    prop::collection::vec((-2i64..=3, -3i64..=3), 0..4).prop_map(IntLaurent::from_terms)
}

fn class() -> impl Strategy<Value = MotivicClass> {
    (laurent(), 0u32..=2, prop::collection::vec(1u32..=3, 0..3))
        .prop_map(|(p, e, fs)| MotivicClass::new(p, DenomForm::new(e, fs).unwrap()))
}

/// Classes cheap enough for zeta computations to order 5.
fn small_class() -> impl Strategy<Value = MotivicClass> {
    (laurent(), prop::option::of(1u32..=2)).prop_map(|(p, f)| {
        let den = DenomForm::new(0, f.into_iter().collect()).unwrap();
        MotivicClass::new(p, den)
    })
}

fn hd_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((0u32..=2, 0u32..=2, -2i64..=2), 0..4)
        .prop_map(|ts| MultiPoly::from_terms(MultiPoly::hd_vars(), ts.into_iter().map(|(a, b, c)| (vec![a, b], c))))
}

fn poly_series(order: usize) -> impl Strategy<Value = TruncatedSeries<MotivicClass>> {
    prop::collection::vec(laurent(), order).prop_map(|cs| {
        let mut coeffs = vec![MotivicClass::one()];
        coeffs.extend(cs.into_iter().map(MotivicClass::from_laurent));
        TruncatedSeries::new(coeffs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_ring_axioms(a in class(), b in class(), c in class()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn normalization_is_canonical(a in class(), n in 1u32..=4, e in 0u32..=2) {
        // multiply numerator and denominator by L^e (L^n - 1)
        let num = a.num().mul_l_pow_minus_one(n).shift(e as i64);
        let mut factors = a.den().factors().to_vec();
        factors.push(n);
        let den = DenomForm::new(a.den().l_exp() + e, factors).unwrap();
        let b = MotivicClass::unnormalized(num.clone(), den.clone());
        prop_assert!(a.class_eq(&b));
        prop_assert!(a.same_representation(&MotivicClass::new(num, den)));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in class(), b in class(), t in 2i64..=7) {
        let t = integer(t);
        prop_assert_eq!(a.add(&b).eval(&t).unwrap(), a.eval(&t).unwrap() + b.eval(&t).unwrap());
        prop_assert_eq!(a.mul(&b).eval(&t).unwrap(), a.eval(&t).unwrap() * b.eval(&t).unwrap());
    }

    #[test]
    fn units_invert(e in -3i64..=3, sign in prop::bool::ANY, fs in prop::collection::vec(1u32..=4, 0..3)) {
        let mut u = MotivicClass::l_pow(e);
        for n in &fs {
            u = u.mul(&MotivicClass::from_laurent(IntLaurent::l_pow_minus_one(*n)));
        }
        if sign { u = u.neg(); }
        prop_assert!(u.mul(&u.try_inv().unwrap()).is_one());
    }

    #[test]
    fn laurent_division_round_trip(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).divexact(&b).unwrap(), Some(a));
    }

    #[test]
    fn json_round_trips(a in class()) {
        let back = MotivicClass::from_json(&a.to_json()).unwrap();
        prop_assert!(a.same_representation(&back));
    }

    #[test]
    fn series_inverse(s in poly_series(5)) {
        let prod = s.mul(&s.inv().unwrap()).unwrap();
        prop_assert_eq!(prod, TruncatedSeries::one(&MotivicClass::one(), 5));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn zeta_is_additive(a in small_class(), b in small_class()) {
        let lhs = zeta_class(&a.add(&b), 5).unwrap();
        let rhs = zeta_class(&a, 5).unwrap().mul(&zeta_class(&b, 5).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn zeta_starts_with_one_plus_a_t(a in class()) {
        let z = zeta_class(&a, 1).unwrap();
        prop_assert!(z.coeff(0).is_one());
        prop_assert_eq!(z.coeff(1), &a);
    }

    #[test]
    fn zeta_scales_with_lefschetz_powers(a in small_class(), s in -2i64..=2) {
        let ls = MotivicClass::l_pow(s);
        let lhs = zeta_class(&ls.mul(&a), 5).unwrap();
        let rhs = zeta_class(&a, 5).unwrap().scale_t(&ls);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn negation_inverts_zeta(a in small_class()) {
        let z = zeta_class(&a, 5).unwrap();
        let zn = zeta_class(&a.neg(), 5).unwrap();
        prop_assert_eq!(z.mul(&zn).unwrap(), TruncatedSeries::one(&MotivicClass::one(), 5));
    }

    #[test]
    fn factorization_reconstructs(s in poly_series(6)) {
        let zeta = KapranovZeta::default();
        let bs = lambda_factorize(&s, &zeta).unwrap();
        prop_assert_eq!(reconstruct(&bs, &MotivicClass::one(), 6, &zeta).unwrap(), s);
    }

    #[test]
    fn power_laws(s in poly_series(5), m in small_class(), n in laurent()) {
        let zeta = KapranovZeta::default();
        let one = MotivicClass::one();
        prop_assert_eq!(power(&s, &one, &zeta).unwrap(), s.clone());
        prop_assert_eq!(power(&s, &one.zero_like(), &zeta).unwrap(), TruncatedSeries::one(&one, 5));
        let n = MotivicClass::from_laurent(n);
        let nested = power(&power(&s, &n, &zeta).unwrap(), &m, &zeta).unwrap();
        prop_assert_eq!(nested, power(&s, &m.mul(&n), &zeta).unwrap());
    }

    #[test]
    fn zeta_of_own_series_factors_trivially(a in small_class()) {
        let z = zeta_class(&a, 4).unwrap();
        let bs = lambda_factorize(&z, &KapranovZeta::default()).unwrap();
        prop_assert_eq!(&bs[0], &a);
        prop_assert!(bs[1..].iter().all(MotivicClass::is_zero));
    }

    #[test]
    fn hd_zeta_is_multiplicative(p in hd_poly(), q in hd_poly()) {
        let lhs = hd_zeta(&p.add(&q), 5);
        let rhs = hd_zeta(&p, 5).mul(&hd_zeta(&q, 5)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn realization_commutes_with_zeta(b in prop::collection::vec((0i64..=3, -3i64..=3), 0..4)) {
        let b = IntLaurent::from_terms(b);
        let via_classes = zeta_base(&b, 5).map(|c| realize_polynomial(c).unwrap());
        let direct = hd_zeta(&realize_polynomial(&MotivicClass::from_laurent(b)).unwrap(), 5);
        prop_assert_eq!(via_classes, direct);
    }

    #[test]
    fn hd_power_laws(p in hd_poly(), m in hd_poly(), n in hd_poly()) {
        let one = MultiPoly::one(MultiPoly::hd_vars());
        let s = hd_zeta(&p, 4).alternate().inv().unwrap();
        prop_assert_eq!(power(&s, &one, &HodgeZeta).unwrap(), s.clone());
        let lhs = power(&s, &m.add(&n), &HodgeZeta).unwrap();
        let rhs = power(&s, &m, &HodgeZeta).unwrap().mul(&power(&s, &n, &HodgeZeta).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn opposite_power_structure_differs_on_the_elliptic_curve() {
    use motzeta_core::hodge::elliptic_curve;
    use motzeta_core::power::{binomial_series, Opposite};
    let e = elliptic_curve();
    let direct = binomial_series(&e, 2, &HodgeZeta).unwrap();
    let opposite = binomial_series(&e, 2, &Opposite(HodgeZeta)).unwrap();
    assert_eq!(direct.coeff(1), opposite.coeff(1));
    assert_ne!(direct.coeff(2), opposite.coeff(2));
}
