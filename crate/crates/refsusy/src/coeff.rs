//! The coefficient-ring interface shared by reflection-differential
//! operators: exact commutative rings carrying a derivation `D` and a
//! reflection involution `sigma` with `D∘sigma = -sigma∘D`.

use std::fmt;

use crate::error::Result;
use crate::rational::Rational;

pub trait Coeff: Clone + PartialEq + fmt::Debug + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Formal/analytic derivative. Fails only in the free ring when the
    /// configured derivative-order bound would be exceeded.
    fn derive(&self) -> Result<Self>;
    /// The reflection involution (`q -> -q` in function rings).
    fn reflect(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn scale(&self, r: &Rational) -> Self {
        self.mul(&Self::from_rational(r))
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_int(n))
    }
}

impl Coeff for crate::ratfun::RationalFunction {
    fn zero() -> Self {
        crate::ratfun::RationalFunction::zero()
    }
    fn one() -> Self {
        crate::ratfun::RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg(&self) -> Self {
        self.neg()
    }
    fn derive(&self) -> Result<Self> {
        Ok(self.derive())
    }
    fn reflect(&self) -> Self {
        self.reflect()
    }
    fn from_rational(r: &Rational) -> Self {
        crate::ratfun::RationalFunction::from_rational(r)
    }
}
