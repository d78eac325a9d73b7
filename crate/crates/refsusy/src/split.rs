//! Parity-split functions: a pair (even part, odd part) forming a
//! commutative ring under the twisted product
//! `(a+ + a-)(b+ + b-) = (a+b+ + a-b-) + (a+b- + a-b+)`.
//!
//! The odd slot is odd *by convention*: the ring semantics (reflection
//! negates it, derivation swaps slots) apply regardless of the stored
//! function's literal parity. This uniformly accommodates the
//! "odd-by-convention" constants that appear in one degenerate 2-fold
//! family (see `PseudoOddConstant`).

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::Result;
use crate::ratfun::RationalFunction;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SplitFunction {
    pub even: RationalFunction,
    pub odd: RationalFunction,
}

impl SplitFunction {
    pub fn new(even: RationalFunction, odd: RationalFunction) -> Self {
        SplitFunction { even, odd }
    }

    pub fn from_even(even: RationalFunction) -> Self {
        SplitFunction::new(even, RationalFunction::zero())
    }

    pub fn from_odd(odd: RationalFunction) -> Self {
        SplitFunction::new(RationalFunction::zero(), odd)
    }

    /// Parity decomposition of an arbitrary rational function.
    pub fn from_total(f: &RationalFunction) -> Self {
        let (even, odd) = f.parity_parts();
        SplitFunction::new(even, odd)
    }

    /// The plain function this pair represents.
    pub fn total(&self) -> RationalFunction {
        self.even.add(&self.odd)
    }

    /// True when the stored parts have the literal parities the slots
    /// promise (fails for pseudo-odd constants).
    pub fn is_literal(&self) -> bool {
        self.even.is_even() && self.odd.is_odd()
    }
}

impl Coeff for SplitFunction {
    fn zero() -> Self {
        SplitFunction::new(RationalFunction::zero(), RationalFunction::zero())
    }

    fn one() -> Self {
        SplitFunction::from_even(RationalFunction::one())
    }

    fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        SplitFunction::new(self.even.add(&other.even), self.odd.add(&other.odd))
    }

    fn mul(&self, other: &Self) -> Self {
        SplitFunction::new(
            self.even.mul(&other.even).add(&self.odd.mul(&other.odd)),
            self.even.mul(&other.odd).add(&self.odd.mul(&other.even)),
        )
    }

    fn neg(&self) -> Self {
        SplitFunction::new(self.even.neg(), self.odd.neg())
    }

    fn derive(&self) -> Result<Self> {
        // (f')_+ = (f_-)' and (f')_- = (f_+)'.
        Ok(SplitFunction::new(self.odd.derive(), self.even.derive()))
    }

    fn reflect(&self) -> Self {
        SplitFunction::new(self.even.clone(), self.odd.neg())
    }

    fn from_rational(r: &Rational) -> Self {
        SplitFunction::from_even(RationalFunction::from_rational(r))
    }
}

impl std::fmt::Display for SplitFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) + ({})", self.even, self.odd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RationalFunction {
        RationalFunction::var()
    }

    #[test]
    fn matches_plain_function_algebra() {
        // (1 + q)(2 - q) in the pair ring equals the plain product split.
        let a = SplitFunction::from_total(&RationalFunction::one().add(&q()));
        let b = SplitFunction::from_total(&RationalFunction::from_int(2).sub(&q()));
        let prod = a.mul(&b);
        let plain = SplitFunction::from_total(
            &RationalFunction::one()
                .add(&q())
                .mul(&RationalFunction::from_int(2).sub(&q())),
        );
        assert_eq!(prod, plain);
    }

    #[test]
    fn derive_swaps_slots() {
        let f = SplitFunction::from_total(&q().mul(&q()).add(&q())); // q^2 + q
        let df = f.derive().unwrap();
        assert_eq!(df.even, RationalFunction::one());
        assert_eq!(df.odd, q().scale(&Rational::from_int(2)));
    }

    #[test]
    fn pseudo_odd_constant_semantics() {
        // A constant in the odd slot: reflection negates it, derivative
        // moves nothing (constant), square lands in the even slot.
        let k = SplitFunction::from_odd(RationalFunction::from_int(2));
        assert_eq!(k.reflect(), k.neg());
        assert!(k.derive().unwrap().is_zero());
        let sq = k.mul(&k);
        assert_eq!(sq, SplitFunction::from_even(RationalFunction::from_int(4)));
    }
}
