//! The data of one candidate N-fold SUSY system with reflections.

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::Result;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::refop::RefOp;
use crate::split::SplitFunction;

#[derive(Clone, PartialEq, Debug, Default, Serialize, Deserialize)]
pub struct SusyConstants {
    #[serde(default = "Rational::zero", rename = "C00")]
    pub c00: Rational,
    #[serde(default = "Rational::zero", rename = "C01")]
    pub c01: Rational,
    #[serde(default = "Rational::zero", rename = "C10")]
    pub c10: Rational,
    #[serde(default = "Rational::zero", rename = "C11")]
    pub c11: Rational,
}

impl SusyConstants {
    pub fn zero() -> Self {
        SusyConstants::default()
    }
}

/// A constant admitted into the odd slot of `v0` "by convention":
/// the degenerate family with `w1 = v1 = 0` only ever uses `(v0-)'` (zero
/// for a constant) and `(v0-)^2` (even), so a formal odd constant is
/// consistent there even though no nonzero odd analytic constant exists.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PseudoOddConstant(pub i64);

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CaseTag {
    OneFold,
    General2,
    Case1,
    Case2,
    Case3_1,
    Case3_2,
    Case3_3,
    Case4,
    Case5,
    Manual,
}

#[derive(Clone, PartialEq, Debug)]
pub struct SusyModel {
    pub order_n: u8,
    /// `w_coeffs[k]`, `v_coeffs[k]` hold w_k, v_k in parity components;
    /// for N-fold models the lists have length N.
    pub w_coeffs: Vec<SplitFunction>,
    pub v_coeffs: Vec<SplitFunction>,
    pub constants: SusyConstants,
    pub v0_plus: SplitFunction,
    pub v0_minus: SplitFunction,
    pub v1_plus: SplitFunction,
    pub v1_minus: SplitFunction,
    pub p_minus: RefOp<SplitFunction>,
    pub p_plus: RefOp<SplitFunction>,
    pub h_plus: RefOp<SplitFunction>,
    pub h_minus: RefOp<SplitFunction>,
    pub case_tag: CaseTag,
    /// Denominators of all coefficient functions, for the numeric
    /// verifier's pole checks.
    pub pole_denominators: Vec<Polynomial>,
}

impl SusyModel {
    /// Assemble H± and pole bookkeeping from the stored potentials and
    /// supercharge. Call again after editing fields directly (e.g. to
    /// perturb a potential as a negative control).
    pub fn finish(mut self) -> Result<Self> {
        let minus_half = SplitFunction::from_rational(&Rational::new(-1, 2));
        self.h_plus = RefOp::term(2, 0, minus_half.clone())
            .add(&RefOp::mul_by(self.v0_plus.clone()))
            .add(&RefOp::term(0, 1, self.v1_plus.clone()));
        self.h_minus = RefOp::term(2, 0, minus_half)
            .add(&RefOp::mul_by(self.v0_minus.clone()))
            .add(&RefOp::term(0, 1, self.v1_minus.clone()));
        self.p_plus = self.p_minus.transpose()?;

        let mut dens: Vec<Polynomial> = Vec::new();
        let mut push = |s: &SplitFunction| {
            for f in [&s.even, &s.odd] {
                let d = f.den();
                if d.degree().unwrap_or(0) > 0 && !dens.contains(d) {
                    dens.push(d.clone());
                }
            }
        };
        for s in self
            .w_coeffs
            .iter()
            .chain(self.v_coeffs.iter())
            .chain([
                &self.v0_plus,
                &self.v0_minus,
                &self.v1_plus,
                &self.v1_minus,
            ])
        {
            push(s);
        }
        self.pole_denominators = dens;
        Ok(self)
    }

    pub(crate) fn empty(order_n: u8, case_tag: CaseTag) -> Self {
        SusyModel {
            order_n,
            w_coeffs: vec![],
            v_coeffs: vec![],
            constants: SusyConstants::zero(),
            v0_plus: SplitFunction::zero(),
            v0_minus: SplitFunction::zero(),
            v1_plus: SplitFunction::zero(),
            v1_minus: SplitFunction::zero(),
            p_minus: RefOp::zero(),
            p_plus: RefOp::zero(),
            h_plus: RefOp::zero(),
            h_minus: RefOp::zero(),
            case_tag,
            pole_denominators: vec![],
        }
    }

    /// The constant operator C_k = C_k0 + C_k1 P.
    pub fn c_op(&self, k: u8) -> RefOp<SplitFunction> {
        let (c0, c1) = match k {
            0 => (&self.constants.c00, &self.constants.c01),
            1 => (&self.constants.c10, &self.constants.c11),
            _ => panic!("only C_0 and C_1 exist for N <= 2"),
        };
        RefOp::mul_by(SplitFunction::from_rational(c0))
            .add(&RefOp::term(0, 1, SplitFunction::from_rational(c1)))
    }
}
