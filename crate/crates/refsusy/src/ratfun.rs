//! Rational functions of `q` over exact rationals, kept in canonical form:
//! `gcd(num, den) = 1`, `den` monic, zero represented as `0/1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFunction {
                num: Polynomial::zero(),
                den: Polynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let lead = den.leading().expect("nonzero denominator").clone();
        let inv = lead.recip().expect("nonzero leading coefficient");
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Polynomial::one())
    }

    pub fn var() -> Self {
        RationalFunction::from_poly(Polynomial::var())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        RationalFunction::from_poly(Polynomial::constant(r.clone()))
    }

    pub fn from_int(n: i64) -> Self {
        RationalFunction::from_rational(&Rational::from_int(n))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().map_or(true, |d| d == 0) && self.den.degree() == Some(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::canonical(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::canonical(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::canonical(self.num.scale(c), self.den.clone())
    }

    /// Quotient rule.
    pub fn derive(&self) -> Self {
        Self::canonical(
            self.num
                .derive()
                .mul(&self.den)
                .sub(&self.num.mul(&self.den.derive())),
            self.den.mul(&self.den),
        )
    }

    /// Substitution `q -> -q`.
    pub fn reflect(&self) -> Self {
        Self::canonical(self.num.reflect(), self.den.reflect())
    }

    /// Even/odd decomposition `2 f_pm = f(q) +- f(-q)`.
    pub fn parity_parts(&self) -> (Self, Self) {
        let r = self.reflect();
        let half = Rational::new(1, 2);
        (self.add(&r).scale(&half), self.sub(&r).scale(&half))
    }

    pub fn is_even(&self) -> bool {
        self.reflect() == *self
    }

    pub fn is_odd(&self) -> bool {
        self.reflect() == self.neg()
    }

    /// Evaluate at a floating-point grid point. `None` when the
    /// denominator vanishes there numerically.
    pub fn eval_f64(&self, q: f64) -> Option<f64> {
        let d = self.den.eval_f64(q);
        // Relative scale for "the denominator vanished here".
        let scale = self
            .den
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| (c.to_f64() * q.abs().powi(k as i32)).abs())
            .fold(0.0_f64, f64::max)
            .max(1e-300);
        if d.abs() < 1e-14 * scale {
            None
        } else {
            Some(self.num.eval_f64(q) / d)
        }
    }

    /// Exact square root, if one exists as a rational function.
    /// The sign of the result is not specified; callers pick a branch.
    pub fn sqrt_exact(&self) -> Result<Self> {
        let fail = || Error::NotAPerfectSquare(format!("{self}"));
        let num = self.num.sqrt_exact().ok_or_else(fail)?;
        // A canonical denominator is monic, so if it is a square its root
        // can be taken monic as well.
        let den = self.den.sqrt_exact().ok_or_else(fail)?;
        let root = Self::canonical(num, den);
        if root.mul(&root) == *self {
            Ok(root)
        } else {
            Err(fail())
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
