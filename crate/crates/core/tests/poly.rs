use lsk_core::poly::quantum_factor;
use lsk_core::{HalfInt, LaurentPoly1, LaurentPoly2};
use num_integer::Integer;
use proptest::prelude::*;

fn poly1() -> impl Strategy<Value = LaurentPoly1> {
    prop::collection::vec((-8i64..9, -5i64..6), 0..6).prop_map(|t| {
        LaurentPoly1::from_terms(t.into_iter().map(|(e, c)| (HalfInt::from_doubled(e), c)))
    })
}

fn poly2() -> impl Strategy<Value = LaurentPoly2> {
    prop::collection::vec((-6i64..7, -6i64..7, -4i64..5), 0..5).prop_map(|t| {
        LaurentPoly2::from_terms(
            t.into_iter()
                .map(|(a, b, c)| ((HalfInt::from_doubled(a), HalfInt::from_doubled(b)), c)),
        )
    })
}

proptest! {
    #[test]
    fn ring_axioms_one_variable(f in poly1(), g in poly1(), h in poly1()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f - &f, LaurentPoly1::zero());
        prop_assert_eq!(&f * &LaurentPoly1::one(), f.clone());
    }

    #[test]
    fn ring_axioms_two_variables(f in poly2(), g in poly2(), h in poly2()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
    }

    #[test]
    fn quantum_identity(p in 1i64..13, q in 1i64..13) {
        prop_assume!(p.gcd(&q) == 1);
        let lhs = &quantum_factor(p, q).unwrap() * &LaurentPoly1::binomial(HalfInt::from_doubled(q));
        prop_assert_eq!(lhs, LaurentPoly1::binomial(HalfInt::from_doubled(p * q)));
    }

    #[test]
    fn substitution_composes(f in poly1(), a in 1i64..5, b in 1i64..5) {
        prop_assert_eq!(f.substitute_power(a).substitute_power(b), f.substitute_power(a * b));
    }

    #[test]
    fn substitution_is_a_ring_map(f in poly1(), g in poly1(), a in 1i64..4) {
        prop_assert_eq!((&f * &g).substitute_power(a), &f.substitute_power(a) * &g.substitute_power(a));
    }

    #[test]
    fn binomial_division_inverts_multiplication(f in poly1(), a in 1i64..6) {
        let a = HalfInt::from_doubled(a);
        let prod = &f * &LaurentPoly1::binomial(a);
        prop_assert_eq!(prod.div_binomial(a), Some(f));
    }
}
