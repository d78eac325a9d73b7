//! Exact symbolic verification of the closed-form families: the
//! intertwining and superalgebra relations hold identically, the named
//! closure conditions vanish, and deliberately broken inputs produce the
//! predicted nonzero residuals.

mod common;

use common::*;
use refsusy::builders::{self, Sign};
use refsusy::conditions::{self, ConditionId};
use refsusy::model::PseudoOddConstant;
use refsusy::{Coeff, RefOp, SplitFunction, SusyModel};

fn assert_closed(model: &SusyModel, label: &str) {
    let iw = conditions::check_intertwining(model).unwrap();
    assert!(
        iw.is_zero(),
        "{label}: intertwining residual {:?}",
        iw.primary
    );
    let (upper, lower) = conditions::check_superalgebra(model).unwrap();
    assert!(upper.is_zero(), "{label}: superalgebra upper {upper:?}");
    assert!(lower.is_zero(), "{label}: superalgebra lower {lower:?}");
    if model.order_n == 2 {
        let named = conditions::check_named_conditions(model).unwrap();
        assert!(
            named.all_zero(),
            "{label}: nonzero conditions {:?}",
            named.nonzero()
        );
    }
}

// ---------------------------------------------------------------- 1-fold

#[test]
fn one_fold_harmonic() {
    let model = builders::build_one_fold(&rf(&[0, 1]), &rf(&[0]), &no_constants()).unwrap();
    assert_closed(&model, "one-fold harmonic");
    assert_eq!(model.v0_plus.total(), rfq(&[1, 0, 1], &[2]));
    assert_eq!(model.v0_minus.total(), rfq(&[-1, 0, 1], &[2]));
    assert!(model.v1_plus.total().is_zero());
    assert!(model.v1_minus.total().is_zero());
}

#[test]
fn one_fold_with_reflection_term() {
    let model = builders::build_one_fold(&rf(&[0, 1]), &rf(&[0, 1]), &no_constants()).unwrap();
    assert_closed(&model, "one-fold with reflection");
    assert_eq!(model.v0_plus.total(), rfq(&[1, 0, 2], &[2]));
    assert_eq!(model.v1_plus.total(), rfq(&[-1, 0, -2], &[2]));
    assert_eq!(model.v0_minus.total(), rfq(&[-1, 0, 2], &[2]));
    assert_eq!(model.v1_minus.total(), rfq(&[-1, 0, 2], &[2]));
}

#[test]
fn one_fold_nonzero_c01_breaks_intertwining_only() {
    // w0 = q + q^2, v0- = q^3, C00 = 1, C01 = 2: the superalgebra still
    // closes, but the intertwining residual is exactly
    // C01 * (P P1- - P1- P).
    let c = consts(rat(1, 1), rat(2, 1), rat(0, 1), rat(0, 1));
    let model = builders::build_one_fold(&rf(&[0, 1, 1]), &rf(&[0, 0, 0, 1]), &c).unwrap();

    let (upper, lower) = conditions::check_superalgebra(&model).unwrap();
    assert!(upper.is_zero() && lower.is_zero());

    let iw = conditions::check_intertwining(&model).unwrap();
    assert_eq!(iw.primary.coeff(1, 1), even(rf(&[-4])));
    assert_eq!(iw.primary.coeff(0, 0), odd(rf(&[0, 0, 0, -4])));
    assert_eq!(iw.primary.coeff(0, 1), odd(rf(&[0, -4])));
    assert_eq!(iw.primary.terms().count(), 3);

    // The residual is C01 times the commutator of P with P1-.
    let p: RefOp<SplitFunction> = RefOp::p();
    let comm = p
        .compose(&model.p_minus)
        .unwrap()
        .sub(&model.p_minus.compose(&p).unwrap());
    assert_eq!(iw.primary, comm.scale(&rat(2, 1)));
}

// ------------------------------------------------------ general 2-fold

#[test]
fn two_fold_assembly_potentials() {
    // w1 = q^2 alone: 4 V0+ = 6q + q^4, 4 V0- = -2q + q^4.
    let zero = rf(&[0]);
    let model = builders::build_two_fold(
        &rf(&[0, 0, 1]),
        &zero,
        &zero,
        &zero,
        &zero,
        &zero,
        &zero,
        &no_constants(),
    )
    .unwrap();
    assert_eq!(model.v0_plus.total(), rfq(&[0, 6, 0, 0, 1], &[4]));
    assert_eq!(model.v0_minus.total(), rfq(&[0, -2, 0, 0, 1], &[4]));
    assert!(model.v1_plus.total().is_zero());
}

#[test]
fn two_fold_all_zero_inputs() {
    let zero = rf(&[0]);
    let c = consts(rat(1, 3), rat(1, 5), rat(0, 1), rat(0, 1));
    let model = builders::build_two_fold(
        &zero, &zero, &zero, &zero, &zero, &zero, &zero, &c,
    )
    .unwrap();
    // H± = -1/2 d^2 - C00 - C01 P, P2± = d^2.
    assert_eq!(model.h_plus.coeff(0, 0), even(rfq(&[-1], &[3])));
    assert_eq!(model.h_plus.coeff(0, 1), even(rfq(&[-1], &[5])));
    assert_eq!(model.h_plus, model.h_minus);
    let d2: RefOp<SplitFunction> = RefOp::d(2);
    assert_eq!(model.p_minus, d2);
    assert_eq!(model.p_plus, d2);
    assert_closed(&model, "two-fold all-zero");
}

// ----------------------------------------------------------- the cases

#[test]
fn case1_basic() {
    let model = builders::solve_case1(&rf(&[0]), &rf(&[0, 1]), &rf(&[0]), &no_constants()).unwrap();
    assert_eq!(model.w_coeffs[0].even, rfq(&[1, 0, 2, 0, 1], &[0, 0, 4]));
    assert!(model.w_coeffs[0].odd.is_zero());
    assert!(model.v_coeffs[0].even.is_zero() && model.v_coeffs[0].odd.is_zero());
    assert_closed(&model, "case 1 basic");
}

#[test]
fn case1_with_c10() {
    let c = consts(rat(0, 1), rat(0, 1), rat(1, 16), rat(0, 1));
    let model = builders::solve_case1(&rf(&[0]), &rf(&[0, 1]), &rf(&[0]), &c).unwrap();
    assert_eq!(model.w_coeffs[0].even, rfq(&[2, 0, 2, 0, 1], &[0, 0, 4]));
    assert_closed(&model, "case 1 with C10");
}

#[test]
fn case1_reflection_free_reduction() {
    // With v1 = v0 = 0 the pair is reflection-free and w0 satisfies
    // 4 w1^2 w0 = -2 w1 w1'' + (w1')^2 + 2 w1^2 w1' + w1^4 + 16 C10,
    // with C11 = 0.
    for c10 in [rat(0, 1), rat(1, 16)] {
        let c = consts(rat(0, 1), rat(0, 1), c10.clone(), rat(0, 1));
        let model =
            builders::solve_case1(&rf(&[0]), &rf(&[0, 1]), &rf(&[0]), &c).unwrap();
        assert!(model.constants.c11.is_zero());
        let w1 = model.w_coeffs[1].total();
        let w0 = model.w_coeffs[0].total();
        let w1sq = w1.mul(&w1);
        let lhs = w1sq.mul(&w0).scale(&rat(4, 1));
        let rhs = w1
            .mul(&w1.derive().derive())
            .scale(&rat(-2, 1))
            .add(&w1.derive().mul(&w1.derive()))
            .add(&w1sq.mul(&w1.derive()).scale(&rat(2, 1)))
            .add(&w1sq.mul(&w1sq))
            .add(&refsusy::RationalFunction::from_rational(
                &(&c10 * &rat(16, 1)),
            ));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn case2_example() {
    // w1+ = 1, w1- = (4q^2+1)/(4q), v1- = (4q^2-1)/(4q), w0+ = q^2.
    let model = builders::solve_case2(
        &rf(&[1]),
        &rfq(&[1, 0, 4], &[0, 4]),
        &rfq(&[-1, 0, 4], &[0, 4]),
        &rf(&[0, 0, 1]),
        &no_constants(),
    )
    .unwrap();
    assert_eq!(model.w_coeffs[0].odd, rfq(&[-5, 0, 16], &[0, 4, 0, 16]));
    assert_eq!(
        model.v_coeffs[0].even,
        rfq(&[-15, 0, -12, 0, -96], &[0, 0, 16, 0, 64])
    );
    // v0- is an exact square root, fixed up to sign by the first-order
    // compatibility relation.
    let v0m = &model.v_coeffs[0].odd;
    assert_eq!(v0m.mul(v0m), rfq(&[1], &[0, 0, 4]));
    assert_closed(&model, "case 2 example");
}

#[test]
fn case3_1_examples() {
    let model =
        builders::solve_case3_1(&rf(&[0, 0, 1]), &rf(&[0]), &no_constants()).unwrap();
    assert_eq!(model.w_coeffs[0].even, rfq(&[0, 0, 0, 0, 1], &[4]));
    assert_eq!(model.w_coeffs[0].odd, rf(&[0, 1]));
    assert!(model.v_coeffs[0].even.is_zero());
    assert_closed(&model, "case 3-1 basic");

    let c = consts(rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1));
    let model = builders::solve_case3_1(&rf(&[0, 0, 1]), &rf(&[0, 0, 0, 1]), &c).unwrap();
    assert_closed(&model, "case 3-1 with v0- and C10");
}

#[test]
fn case3_2_basic() {
    let model =
        builders::solve_case3_2(&rf(&[0, 1]), &rf(&[0]), &no_constants()).unwrap();
    assert_eq!(model.w_coeffs[0].even, rfq(&[1, 0, 0, 0, 1], &[0, 0, 4]));
    assert!(model.w_coeffs[0].odd.is_zero());
    assert_eq!(model.v_coeffs[0].even, rfq(&[-1], &[2]));
    assert_closed(&model, "case 3-2 basic");
}

#[test]
fn case3_2_with_nonzero_c11_and_v0_minus_fails_closure() {
    // v1- = q, v0- = q^3, C10 = 1, C11 = 2: the family's construction
    // formulas apply but closure needs C11 * v0- = 0, which fails here.
    // The residuals are pinned exactly.
    let c = consts(rat(0, 1), rat(0, 1), rat(1, 1), rat(2, 1));
    let model = builders::solve_case3_2(&rf(&[0, 1]), &rf(&[0, 0, 0, 1]), &c).unwrap();
    let iw = conditions::check_intertwining(&model).unwrap();
    assert_eq!(iw.primary.coeff(0, 0), odd(rf(&[0, -8])));
    assert_eq!(iw.primary.terms().count(), 1);
    let (upper, lower) = conditions::check_superalgebra(&model).unwrap();
    assert_eq!(upper.coeff(0, 0), odd(rf(&[0, 16])));
    assert_eq!(upper.terms().count(), 1);
    assert_eq!(lower, upper.neg());
}

#[test]
fn case3_3_restricted_family_closes() {
    // w0+ = q^2, w0- = 0, v0+ = 0, formal odd constant 2 (so C10 = 1).
    let model = builders::solve_case3_3(
        &rf(&[0, 0, 1]),
        &rf(&[0]),
        &rf(&[0]),
        PseudoOddConstant(2),
        &no_constants(),
        false,
    )
    .unwrap();
    assert_eq!(model.constants.c10, rat(1, 1));
    assert!(model.constants.c11.is_zero());
    assert_closed(&model, "case 3-3 restricted");
}

#[test]
fn case3_3_general_inputs_fail_closure() {
    // w0+ = q^2, w0- = q^3, v0+ = 1, formal odd constant 2. The closure
    // additionally needs v0+ * v0- = 0 and w0- * v0- = 0; both fail, and
    // the residuals are pinned exactly.
    let c = consts(rat(1, 3), rat(0, 1), rat(1, 1), rat(0, 1));
    let model = builders::solve_case3_3(
        &rf(&[0, 0, 1]),
        &rf(&[0, 0, 0, 1]),
        &rf(&[1]),
        PseudoOddConstant(2),
        &c,
        false,
    )
    .unwrap();
    let iw = conditions::check_intertwining(&model).unwrap();
    assert_eq!(iw.primary.coeff(0, 0), odd(rf(&[-2])));
    assert_eq!(iw.primary.coeff(0, 1), even(rf(&[0, 0, 0, 2])));
    assert_eq!(iw.primary.terms().count(), 2);
    let (upper, lower) = conditions::check_superalgebra(&model).unwrap();
    assert_eq!(upper.coeff(0, 0), odd(rf(&[4])));
    assert_eq!(upper.coeff(0, 1), even(rf(&[0, 0, 0, -4])));
    assert_eq!(upper.terms().count(), 2);
    assert_eq!(lower, upper.neg());
}

#[test]
fn case3_3_strict_mode_rejects_formal_constant() {
    let err = builders::solve_case3_3(
        &rf(&[0, 0, 1]),
        &rf(&[0]),
        &rf(&[0]),
        PseudoOddConstant(2),
        &no_constants(),
        true,
    )
    .unwrap_err();
    assert!(matches!(err, refsusy::Error::ConstraintViolation(_)));
}

#[test]
fn case4_examples() {
    let c = consts(rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1));
    let model = builders::solve_case4(&rf(&[0, 1]), &rf(&[0]), &c).unwrap();
    assert_eq!(model.w_coeffs[0].even, rfq(&[1, 0, 2, 0, 1], &[0, 0, 4]));
    assert!(model.v_coeffs[0].even.is_zero());
    assert_closed(&model, "case 4 basic");

    let model = builders::solve_case4(&rf(&[0, 1]), &rf(&[0, 2]), &c).unwrap();
    assert_eq!(model.w_coeffs[0].even, rfq(&[1, 0, 2, 0, 5], &[0, 0, 4]));
    assert_eq!(model.v_coeffs[0].even, rf(&[-1, 0, -1]));
    assert_closed(&model, "case 4 with v1-");
}

#[test]
fn case5_examples() {
    let c01 = consts(rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1));
    let model = builders::solve_case5(&rf(&[0, 1]), Sign::Plus, &rf(&[0]), &c01).unwrap();
    assert_eq!(model.w_coeffs[0].even, rfq(&[1, 0, 4, 0, 4], &[0, 0, 4]));
    assert!(model.constants.c11.is_zero());
    assert_closed(&model, "case 5 basic");

    let c = consts(rat(0, 1), rat(1, 1), rat(3, 1), rat(0, 1));
    let model = builders::solve_case5(&rf(&[0, 1]), Sign::Plus, &rf(&[0, 0, 1]), &c).unwrap();
    assert_eq!(model.constants.c11, rat(-3, 1));
    assert_closed(&model, "case 5 plus branch");

    let c = consts(rat(0, 1), rat(1, 2), rat(3, 1), rat(0, 1));
    let model = builders::solve_case5(&rf(&[0, 1]), Sign::Minus, &rf(&[0, 0, 1]), &c).unwrap();
    assert_eq!(model.constants.c11, rat(3, 1));
    assert_closed(&model, "case 5 minus branch");
}

// ----------------------------------------------------- negative controls

#[test]
fn control_even_reflection_coefficient_breaks_superalgebra() {
    // 1-fold with w0 = 0 and the (wrong-parity) v0 = 1: the superalgebra
    // residual is exactly 2 dP (equivalently -2 P d).
    let model =
        builders::build_one_fold_unchecked(&rf(&[0]), &rf(&[1]), &no_constants()).unwrap();
    let (upper, lower) = conditions::check_superalgebra(&model).unwrap();
    let expected: RefOp<SplitFunction> = RefOp::term(1, 1, even(rf(&[2])));
    assert_eq!(upper, expected);
    assert_eq!(lower, expected.neg());
}

#[test]
fn control_shifted_potential_breaks_intertwining() {
    let mut model =
        builders::solve_case1(&rf(&[0]), &rf(&[0, 1]), &rf(&[0]), &no_constants()).unwrap();
    model.v0_plus = model.v0_plus.add(&even(rf(&[1])));
    let model = model.finish().unwrap();
    let iw = conditions::check_intertwining(&model).unwrap();
    // P2- H- - (H+ + 1) P2- = -P2-.
    assert_eq!(iw.primary, model.p_minus.neg());
}

#[test]
fn control_shifted_w0_shows_in_one_condition() {
    let mut model =
        builders::solve_case1(&rf(&[0]), &rf(&[0, 1]), &rf(&[0]), &no_constants()).unwrap();
    model.w_coeffs[0].even = model.w_coeffs[0].even.add(&rf(&[1]));
    let named = conditions::check_named_conditions(&model).unwrap();
    assert_eq!(
        named.residual(ConditionId::Co8E).unwrap(),
        &even(rf(&[0, 0, 4]))
    );
}

#[test]
fn control_shifted_c11_breaks_superalgebra_by_constant() {
    let mut model =
        builders::solve_case3_1(&rf(&[0, 0, 1]), &rf(&[0]), &no_constants()).unwrap();
    model.constants.c11 = rat(1, 1);
    let (upper, lower) = conditions::check_superalgebra(&model).unwrap();
    let expected: RefOp<SplitFunction> = RefOp::term(0, 1, even(rf(&[-4])));
    assert_eq!(upper, expected);
    assert_eq!(lower, expected);
}

#[test]
fn sum_condition_is_strictly_weaker_than_signed_ones() {
    // w1+ = 1, v0+ = -2, C01 = 1: the summed first-order relation CO4P
    // vanishes while the signed CP4P does not.
    let zero = rf(&[0]);
    let c = consts(rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1));
    let model = builders::build_two_fold(
        &rf(&[1]),
        &zero,
        &zero,
        &zero,
        &zero,
        &rf(&[-2]),
        &zero,
        &c,
    )
    .unwrap();
    let named = conditions::check_named_conditions(&model).unwrap();
    assert!(named.residual(ConditionId::Co4P).unwrap().is_zero());
    assert_eq!(
        named.residual(ConditionId::Cp4P).unwrap(),
        &even(rf(&[2]))
    );
}

// --------------------------------------------------- degenerate guards

#[test]
fn builders_reject_degenerate_or_inconsistent_inputs() {
    use refsusy::Error;
    // Case 1 with w1- = 0 is a different case.
    assert!(matches!(
        builders::solve_case1(&rf(&[0, 0, 1]), &rf(&[0]), &rf(&[0, 1]), &no_constants()),
        Err(Error::DegenerateCase(_))
    ));
    // Case 1 on the degenerate branch (w1-)^2 = (w1+)^2 + (v1-)^2.
    assert!(matches!(
        builders::solve_case1(&rf(&[0]), &rf(&[0, 5]), &rf(&[0, 5]), &no_constants()),
        Err(Error::DegenerateCase(_))
    ));
    // Case 4 needs C01 != 0.
    assert!(matches!(
        builders::solve_case4(&rf(&[0, 1]), &rf(&[0]), &no_constants()),
        Err(Error::ConstraintViolation(_))
    ));
    // Case 4 with v1- = ±w1- is Case 5.
    let c01 = consts(rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1));
    assert!(matches!(
        builders::solve_case4(&rf(&[0, 1]), &rf(&[0, 1]), &c01),
        Err(Error::DegenerateCase(_))
    ));
    // Parity violations are rejected.
    assert!(matches!(
        builders::build_one_fold(&rf(&[0, 1]), &rf(&[1]), &no_constants()),
        Err(Error::ParityViolation { .. })
    ));
}
