#![allow(dead_code)]

use refsusy::poly::Polynomial;
use refsusy::{RationalFunction, Rational, SplitFunction, SusyConstants};

/// Polynomial rational function from integer coefficients, lowest first.
pub fn rf(num: &[i64]) -> RationalFunction {
    RationalFunction::from_poly(Polynomial::from_ints(num))
}

/// num/den from integer coefficient lists, lowest first.
pub fn rfq(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::new(Polynomial::from_ints(num), Polynomial::from_ints(den)).unwrap()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn consts(c00: Rational, c01: Rational, c10: Rational, c11: Rational) -> SusyConstants {
    SusyConstants { c00, c01, c10, c11 }
}

pub fn no_constants() -> SusyConstants {
    SusyConstants::zero()
}

pub fn even(f: RationalFunction) -> SplitFunction {
    SplitFunction::from_even(f)
}

pub fn odd(f: RationalFunction) -> SplitFunction {
    SplitFunction::from_odd(f)
}
