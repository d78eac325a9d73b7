//! Property tests for the exact algebra layers.

mod common;

use proptest::prelude::*;
use refsusy::poly::Polynomial;
use refsusy::{Coeff, RationalFunction, Rational, RefOp, SplitFunction};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rational(), 0..3).prop_map(Polynomial::new)
}

fn small_ratfun() -> impl Strategy<Value = RationalFunction> {
    (small_poly(), small_poly()).prop_map(|(num, mut den)| {
        if den.is_zero() {
            den = Polynomial::one();
        }
        RationalFunction::new(num, den).unwrap()
    })
}

fn small_split() -> impl Strategy<Value = SplitFunction> {
    (small_ratfun(), small_ratfun()).prop_map(|(e, o)| SplitFunction::new(e, o))
}

fn small_op() -> impl Strategy<Value = RefOp<SplitFunction>> {
    prop::collection::vec(((0u32..=2, 0u8..=1), small_split()), 0..3)
        .prop_map(RefOp::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn ratfun_field_axioms(a in small_ratfun(), b in small_ratfun(), c in small_ratfun()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
        }
    }

    #[test]
    fn ratfun_calculus_rules(a in small_ratfun(), b in small_ratfun()) {
        // Leibniz rule and the derivative/reflection anticommutation.
        prop_assert_eq!(
            a.mul(&b).derive(),
            a.derive().mul(&b).add(&a.mul(&b.derive()))
        );
        prop_assert_eq!(a.reflect().reflect(), a.clone());
        prop_assert_eq!(a.reflect().derive(), a.derive().reflect().neg());
    }

    #[test]
    fn split_ring_axioms(a in small_split(), b in small_split(), c in small_split()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.reflect().reflect(), a.clone());
        // Reflection is a ring automorphism.
        prop_assert_eq!(a.mul(&b).reflect(), a.reflect().mul(&b.reflect()));
        // Leibniz rule in the pair ring.
        prop_assert_eq!(
            a.mul(&b).derive().unwrap(),
            a.derive().unwrap().mul(&b).add(&a.mul(&b.derive().unwrap()))
        );
        // d/dq anticommutes with reflection.
        prop_assert_eq!(
            a.reflect().derive().unwrap(),
            a.derive().unwrap().reflect().neg()
        );
    }

    #[test]
    fn operator_composition_is_associative(x in small_op(), y in small_op(), z in small_op()) {
        let lhs = x.compose(&y).unwrap().compose(&z).unwrap();
        let rhs = x.compose(&y.compose(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transpose_is_an_antihomomorphic_involution(x in small_op(), y in small_op()) {
        prop_assert_eq!(x.transpose().unwrap().transpose().unwrap(), x.clone());
        prop_assert_eq!(
            x.compose(&y).unwrap().transpose().unwrap(),
            y.transpose().unwrap().compose(&x.transpose().unwrap()).unwrap()
        );
    }

    #[test]
    fn composition_agrees_with_application(x in small_op(), y in small_op(), f in small_split()) {
        let lhs = x.compose(&y).unwrap().apply_split(&f);
        let rhs = x.apply_split(&y.apply_split(&f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn polynomial_division_roundtrip(a in small_poly(), b in small_poly()) {
        if !b.is_zero() {
            let (q, r) = a.divrem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a.clone());
            if !r.is_zero() {
                prop_assert!(r.degree() < b.degree());
            }
        }
    }

    #[test]
    fn ratfun_square_roots_roundtrip(a in small_ratfun()) {
        let sq = a.mul(&a);
        let root = sq.sqrt_exact().unwrap();
        prop_assert_eq!(root.mul(&root), sq);
    }
}
