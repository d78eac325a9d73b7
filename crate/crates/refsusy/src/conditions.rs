//! Exact symbolic verification: the intertwining and superalgebra
//! relations, every named closure condition of the 2-fold classification,
//! the anticommutator-expansion identities, and the derivative-dependency
//! identities. Condition formulas are evaluated by direct substitution in
//! a coefficient ring, never re-derived from operator compositions, so
//! they are an independent cross-check of the compositions.

use std::fmt;

use crate::coeff::Coeff;
use crate::error::Result;
use crate::freering::{FreeDiffElement, SymbolParity};
use crate::model::{CaseTag, SusyModel};
use crate::rational::Rational;
use crate::refop::RefOp;
use crate::split::SplitFunction;

// ---------------------------------------------------------------------------
// Condition identifiers
// ---------------------------------------------------------------------------

macro_rules! condition_ids {
    ($($variant:ident => $name:literal, $anchor:literal;)+) => {
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
        pub enum ConditionId { $($variant,)+ }

        impl ConditionId {
            pub const ALL: &'static [ConditionId] = &[$(ConditionId::$variant,)+];

            pub fn name(self) -> &'static str {
                match self { $(ConditionId::$variant => $name,)+ }
            }

            /// Human-readable description of what the residual encodes.
            pub fn anchor(self) -> &'static str {
                match self { $(ConditionId::$variant => $anchor,)+ }
            }
        }
    };
}

condition_ids! {
    Co1 => "CO1", "difference of the upper and lower V0 assembly relations";
    Co2 => "CO2", "difference of the upper and lower V1 assembly relations";
    Co3 => "CO3", "sum-form first-order closure relation for w";
    Co4 => "CO4", "sum-form first-order closure relation for v";
    Co5 => "CO5", "sum-form second-order closure relation for w";
    Co6 => "CO6", "sum-form second-order closure relation for v";
    Cp1 => "CP1", "upper-sign V0 assembly relation";
    Cp2 => "CP2", "upper-sign V1 assembly relation";
    Cp3 => "CP3", "upper-sign first-order w relation";
    Cp4 => "CP4", "upper-sign first-order v relation";
    Cp5 => "CP5", "upper-sign second-order w relation";
    Cp6 => "CP6", "upper-sign second-order v relation";
    Cm1 => "CM1", "lower-sign V0 assembly relation";
    Cm2 => "CM2", "lower-sign V1 assembly relation";
    Cm3 => "CM3", "lower-sign first-order w relation";
    Cm4 => "CM4", "lower-sign first-order v relation";
    Cm5 => "CM5", "lower-sign second-order w relation";
    Cm6 => "CM6", "lower-sign second-order v relation";
    Co4P => "CO4P", "sum of the reduced first-order v relations";
    Cp4P => "CP4P", "reduced upper-sign first-order v relation";
    Cm4P => "CM4P", "reduced lower-sign first-order v relation";
    W1Plus => "W1PLUS", "C01 * w1+ (must vanish when C01 = 0 branch applies)";
    Co7 => "CO7", "first-order compatibility relation fixing v0-";
    Co8 => "CO8", "second-order w closure condition";
    Co8P => "CO8P", "derivative companion of the second-order w condition";
    V0Minus => "V0MINUS", "C01 * v0- (nonzero-C01 branch consequence)";
    Co9 => "CO9", "second-order v closure condition";
    Co9P => "CO9P", "derivative companion of the second-order v condition";
    W0Minus => "W0MINUS", "C01 * w0- (nonzero-C01 branch consequence)";
    Co8E => "CO8_E", "even part of the second-order w condition";
    Co8O => "CO8_O", "odd part of the second-order w condition";
    Co8PE => "CO8P_E", "even part of the derivative companion for w";
    Co8PO => "CO8P_O", "odd part of the derivative companion for w";
    Co9E => "CO9_E", "even part of the second-order v condition";
    Co9O => "CO9_O", "odd part of the second-order v condition";
    Co9PE => "CO9P_E", "even part of the derivative companion for v";
    Co9PO => "CO9P_O", "odd part of the derivative companion for v";
    C2F1 => "C2F1", "degenerate-branch constraint (w1-)^2 = (w1+)^2 + (v1-)^2";
    C2Cst => "C2CST", "degenerate-branch constant constraint forcing C10 = C11 = 0";
    C2F2 => "C2F2", "square relation 4(v0-)^2 in derivative terms";
    D2C1 => "D2C1", "w1- = 0 branch: first-order v0- relation";
    D2C2 => "D2C2", "w1- = 0 branch: linear dependence of w1+ and v1-";
    D2C3 => "D2C3", "w1- = 0 branch: second-order w0+ relation";
    D2C4 => "D2C4", "w1- = 0 branch: first mixed w0-/v0+ relation";
    D2C5 => "D2C5", "w1- = 0 branch: second mixed w0-/v0+ relation";
    Wvw => "WVW", "nonzero-C01 branch: w1+ = v0- = w0- = 0 (sum of squares)";
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl ConditionId {
    /// Which conditions carry content for a given model.
    pub fn applicable(self, model: &SusyModel) -> bool {
        use ConditionId::*;
        match self {
            C2F1 | C2Cst | C2F2 => model.case_tag == CaseTag::Case2,
            D2C1 | D2C2 | D2C3 | D2C4 | D2C5 => matches!(
                model.case_tag,
                CaseTag::Case3_1 | CaseTag::Case3_2 | CaseTag::Case3_3
            ),
            Wvw => !model.constants.c01.is_zero(),
            _ => true,
        }
    }
}

// ---------------------------------------------------------------------------
// Generic condition formulas
// ---------------------------------------------------------------------------

/// Every quantity a condition formula may reference, in an arbitrary
/// coefficient ring: parity-separated coefficient slots, assembled
/// potentials, and the four constants.
pub struct ConditionInputs<R: Coeff> {
    pub w1p: R,
    pub w1m: R,
    pub v1: R,
    pub w0p: R,
    pub w0m: R,
    pub v0p: R,
    pub v0m: R,
    pub vv0p: R,
    pub vv0m: R,
    pub vv1p: R,
    pub vv1m: R,
    pub c00: R,
    pub c01: R,
    pub c10: R,
    pub c11: R,
}

macro_rules! rsum {
    ($first:expr $(, $x:expr)* $(,)?) => {{
        let mut out = $first;
        $(out = out.add(&$x);)*
        out
    }};
}

macro_rules! rmul {
    ($first:expr $(, $x:expr)* $(,)?) => {{
        let mut out = $first.clone();
        $(out = out.mul(&$x);)*
        out
    }};
}

fn d<R: Coeff>(x: &R) -> Result<R> {
    x.derive()
}

fn d2<R: Coeff>(x: &R) -> Result<R> {
    x.derive()?.derive()
}

fn d3<R: Coeff>(x: &R) -> Result<R> {
    x.derive()?.derive()?.derive()
}

fn sc<R: Coeff>(x: &R, n: i64) -> R {
    x.scale(&Rational::from_int(n))
}

impl<R: Coeff> ConditionInputs<R> {
    /// Assemble the potentials from the slots by the standard 2-fold
    /// display formulas (exact in any coefficient ring).
    #[allow(clippy::too_many_arguments)]
    pub fn from_slots(
        w1p: R,
        w1m: R,
        v1: R,
        w0p: R,
        w0m: R,
        v0p: R,
        v0m: R,
        c00: R,
        c01: R,
        c10: R,
        c11: R,
    ) -> Result<Self> {
        let w1 = w1p.add(&w1m);
        let w0 = w0p.add(&w0m);
        let quarter = Rational::new(1, 4);
        let base = rsum!(
            sc(&w0, -2),
            rmul!(w1, w1),
            rmul!(v1, v1),
            sc(&c00, -4)
        );
        let vv0p = rsum!(sc(&d(&w1)?, 3), base.clone()).scale(&quarter);
        let vv0m = rsum!(d(&w1)?.neg(), base).scale(&quarter);
        let vbase = rsum!(sc(&v0p, -2), sc(&rmul!(w1m, v1), -2), sc(&c01, -4));
        let vv1p = rsum!(sc(&d(&v1)?, -3), vbase.clone()).scale(&quarter);
        let vv1m = rsum!(d(&v1)?, vbase).scale(&quarter);
        Ok(ConditionInputs {
            w1p,
            w1m,
            v1,
            w0p,
            w0m,
            v0p,
            v0m,
            vv0p,
            vv0m,
            vv1p,
            vv1m,
            c00,
            c01,
            c10,
            c11,
        })
    }

    fn w1(&self) -> R {
        self.w1p.add(&self.w1m)
    }

    fn w0(&self) -> R {
        self.w0p.add(&self.w0m)
    }

    fn v0(&self) -> R {
        self.v0p.add(&self.v0m)
    }

    fn e2(&self) -> R {
        rmul!(self.w1p, self.w1p).add(&rmul!(self.w1m, self.w1m))
    }

    /// Half of (x + reflect x): the even component in any of our rings.
    fn even_part(x: &R) -> R {
        x.add(&x.reflect()).scale(&Rational::new(1, 2))
    }

    /// The three quartic right-hand sides of the non-degenerate linear
    /// system.
    pub fn f_vec(&self) -> Result<(R, R, R)> {
        let Self {
            w1p, w1m, v1, v0m, ..
        } = self;
        let e2 = self.e2();
        let v1sq = rmul!(*v1, v1);
        let quart = rsum!(
            rmul!(*w1p, w1p, w1p, w1p),
            sc(&rmul!(*w1p, w1p, w1m, w1m), 6),
            rmul!(*w1m, w1m, w1m, w1m)
        );
        let f1 = rsum!(
            sc(&rmul!(*w1p, d2(w1p)?), -2),
            sc(&rmul!(*w1m, d2(w1m)?), -2),
            rmul!(d(w1p)?, d(w1p)?),
            rmul!(d(w1m)?, d(w1m)?),
            sc(&rmul!(*v1, d2(v1)?), -2),
            rmul!(d(v1)?, d(v1)?),
            sc(&rmul!(*v0m, v0m), -4),
            sc(&rmul!(e2, d(w1m)?), 2),
            sc(&rmul!(*w1p, w1m, d(w1p)?), 4),
            sc(&rmul!(d(w1m)?, v1sq), 2),
            sc(&rmul!(*w1m, v1, d(v1)?), 4),
            quart,
            sc(
                &rmul!(
                    rsum!(rmul!(*w1p, w1p), sc(&rmul!(*w1m, w1m), 3)),
                    v1sq
                ),
                2
            ),
            rmul!(v1sq, v1sq),
            sc(&self.c10, 16)
        );
        let f2 = rsum!(
            rmul!(d2(w1p)?, w1m).neg(),
            rmul!(d(w1p)?, d(w1m)?),
            rmul!(*w1p, d2(w1m)?).neg(),
            sc(&rmul!(*w1p, w1m, d(w1m)?), 2),
            rmul!(e2, d(w1p)?),
            rmul!(*w1p, v1, d(v1)?),
            sc(&rmul!(*w1p, w1p, w1p, w1m), 2),
            sc(&rmul!(*w1p, w1m, w1m, w1m), 2),
            sc(&rmul!(*w1p, w1m, v1sq), 2)
        );
        let f3 = rsum!(
            rmul!(d2(w1m)?, v1).neg(),
            rmul!(d(w1m)?, d(v1)?),
            rmul!(*w1m, d2(v1)?).neg(),
            rmul!(
                rsum!(rmul!(*w1p, d(w1p)?), sc(&rmul!(*w1m, d(w1m)?), 2)),
                v1
            ),
            rmul!(*w1m, w1m, d(v1)?),
            rmul!(v1sq, d(v1)?),
            sc(&rmul!(e2, w1m, v1), 2),
            sc(&rmul!(*w1m, v1sq, v1), 2),
            sc(&self.c11, -8)
        );
        Ok((f1, f2, f3))
    }

    /// Residual of one named condition; identically zero iff satisfied.
    pub fn residual(&self, id: ConditionId) -> Result<R> {
        use ConditionId::*;
        let Self {
            w1p,
            w1m,
            v1,
            w0p,
            w0m,
            v0p,
            v0m,
            vv0p: vp0,
            vv0m: vm0,
            vv1p: vp1,
            vv1m: vm1,
            c00,
            c01,
            c10,
            c11,
        } = self;
        let w1 = self.w1();
        let w0 = self.w0();
        let v0 = self.v0();
        let e2 = self.e2();
        let w1sq = rmul!(w1, w1);
        let v1sq = rmul!(*v1, v1);
        let r = match id {
            Co1 => rsum!(vp0.clone(), vm0.neg(), d(&w1)?.neg()),
            Co2 => rsum!(vp1.clone(), vm1.neg(), d(v1)?),
            Co3 => rsum!(
                d2(&w1)?,
                sc(&d(&w0)?, 2),
                sc(&d(vm0)?, 4),
                sc(&rmul!(w1, vp0.sub(vm0)), -2),
                sc(&rmul!(*v1, vp1.sub(&vm1.reflect())), 2)
            ),
            Co4 => rsum!(
                d2(v1)?,
                sc(&d(&v0)?, -2),
                sc(&d(vm1)?, -4),
                sc(&rmul!(*v1, vp0.sub(&vm0.reflect())), -2),
                sc(&rmul!(w1.reflect(), vp1), -2),
                sc(&rmul!(w1, vm1), -2)
            ),
            Co5 => rsum!(
                d2(&w0)?,
                sc(&d2(vm0)?, 2),
                sc(&rmul!(w1, d(vm0)?), 2),
                sc(&rmul!(*v1, d(&vm1.reflect())?), -2),
                sc(&rmul!(v0.reflect(), vp1), -2),
                sc(&rmul!(v0, vm1.reflect()), 2),
                sc(&rmul!(w0, vp0.sub(vm0)), -2)
            ),
            Co6 => rsum!(
                d2(&v0)?,
                sc(&d2(vm1)?, 2),
                sc(&rmul!(w1, d(vm1)?), 2),
                sc(&rmul!(*v1, d(&vm0.reflect())?), -2),
                sc(&rmul!(w0.reflect(), vp1), -2),
                sc(&rmul!(w0, vm1), 2),
                sc(&rmul!(v0, vp0.sub(&vm0.reflect())), -2)
            ),
            Cp1 => rsum!(
                sc(vp0, 4),
                sc(&d(&w1)?, -3),
                sc(&w0, 2),
                w1sq.neg(),
                v1sq.neg(),
                sc(c00, 4)
            ),
            Cp2 => rsum!(
                sc(vp1, 4),
                sc(&d(v1)?, 3),
                sc(v0p, 2),
                sc(&rmul!(*w1m, v1), 2),
                sc(c01, 4)
            ),
            Cp3 => rsum!(
                sc(&d(vp0)?, 4),
                sc(&d2(&w1)?, -3),
                sc(&d(&w0)?, 2),
                sc(&rmul!(w1, d(&w1)?), -2),
                sc(&rmul!(*v1, d(v1)?), -2)
            ),
            Cp4 => rsum!(
                sc(&d(vp1)?, 4),
                sc(&d2(v1)?, 3),
                sc(&d(&v0.reflect())?, 2),
                sc(&rmul!(d(&w1.reflect())?, v1), -2),
                sc(&rmul!(w1, d(v1)?), 2),
                sc(&rmul!(*w0m, v1), 2),
                rmul!(w1, v0.reflect()),
                rmul!(w1.reflect(), v0)
            ),
            Cp5 => {
                let vpc = vp0.add(c00);
                let vqc = vp1.add(c01);
                rsum!(
                    sc(&d2(vp0)?, 2),
                    sc(&rmul!(vpc, vpc), -4),
                    sc(&rmul!(vqc, vp1.reflect().add(c01)), -4),
                    sc(c10, -4),
                    rsum!(
                        d3(&w1)?,
                        d2(&w0)?.neg(),
                        rmul!(w1, d2(&w1)?),
                        rmul!(*v1, d2(v1)?),
                        rmul!(d(&w1)?, w0),
                        rmul!(w1, d(&w0)?).neg(),
                        rmul!(d(v1)?, v0).neg(),
                        rmul!(*v1, d(&v0)?),
                        rmul!(w0, w0).neg(),
                        rmul!(v0, v0).neg()
                    )
                    .neg()
                )
            }
            Cp6 => rsum!(
                sc(&d2(vp1)?, 2),
                sc(
                    &rmul!(Self::even_part(vp0).add(c00), vp1.add(c01)),
                    -8
                ),
                sc(c11, -4),
                rsum!(
                    d3(v1)?.neg(),
                    d2(&v0.reflect())?.neg(),
                    rmul!(d2(&w1.reflect())?, v1),
                    rmul!(w1, d2(v1)?).neg(),
                    rmul!(d(&w1.reflect())?, v0).neg(),
                    rmul!(w1, d(&v0.reflect())?).neg(),
                    rmul!(d(&w0.reflect())?, v1),
                    rmul!(w0, d(v1)?).neg(),
                    rmul!(w0, v0.reflect()).neg(),
                    rmul!(w0.reflect(), v0).neg()
                )
                .neg()
            ),
            Cm1 => rsum!(
                sc(vm0, 4),
                d(&w1)?,
                sc(&w0, 2),
                w1sq.neg(),
                v1sq.neg(),
                sc(c00, 4)
            ),
            Cm2 => rsum!(
                sc(vm1, 4),
                d(v1)?.neg(),
                sc(v0p, 2),
                sc(&rmul!(*w1m, v1), 2),
                sc(c01, 4)
            ),
            Cm3 => rsum!(
                sc(&d(vm0)?, 4),
                d2(&w1)?,
                sc(&d(&w0)?, 2),
                sc(&rmul!(w1, d(&w1)?), -2),
                sc(&rmul!(*v1, d(v1)?), -2)
            ),
            Cm4 => rsum!(
                sc(&d(vm1)?, 4),
                d2(v1)?.neg(),
                sc(&d(&v0)?, 2),
                sc(&rmul!(d(w1m)?, v1), 2),
                sc(&rmul!(*w1m, d(v1)?), 2),
                rmul!(w1, v0).neg(),
                rmul!(w1.reflect(), v0.reflect()).neg(),
                sc(&rmul!(*w0m, v1), -2)
            ),
            Cm5 => {
                let vmc = vm0.add(c00);
                let vqc = vm1.add(c01);
                rsum!(
                    sc(&d2(vm0)?, 2),
                    sc(&rmul!(vmc, vmc), -4),
                    sc(&rmul!(vqc, vm1.reflect().add(c01)), -4),
                    sc(c10, -4),
                    rsum!(
                        d2(&w0)?.neg(),
                        rmul!(d(&w1)?, w0),
                        rmul!(w1, d(&w0)?),
                        rmul!(d(v1)?, v0.reflect()).neg(),
                        rmul!(*v1, d(&v0.reflect())?).neg(),
                        rmul!(w0, w0).neg(),
                        rmul!(v0.reflect(), v0.reflect()).neg()
                    )
                    .neg()
                )
            }
            Cm6 => rsum!(
                sc(&d2(vm1)?, 2),
                sc(
                    &rmul!(Self::even_part(vm0).add(c00), vm1.add(c01)),
                    -8
                ),
                sc(c11, -4),
                rsum!(
                    d2(&v0)?.neg(),
                    rmul!(d(&w1)?, v0),
                    rmul!(w1, d(&v0)?),
                    rmul!(d(&w0.reflect())?, v1).neg(),
                    rmul!(w0.reflect(), d(v1)?).neg(),
                    rmul!(w0, v0).neg(),
                    rmul!(w0.reflect(), v0.reflect()).neg()
                )
                .neg()
            ),
            Co4P => rsum!(
                sc(&d(v0m)?, 2),
                rmul!(d(w1p)?, v1),
                rmul!(*w1p, d(v1)?).neg(),
                sc(&rmul!(*w1p, v0p), -2),
                sc(&rmul!(*w0m, v1), -2),
                sc(&rmul!(*c01, w1p), -4)
            ),
            Cp4P => rsum!(
                d(v0m)?,
                rmul!(d(w1p)?, v1),
                rmul!(*w1p, d(v1)?).neg(),
                rmul!(*w1p, v0p).neg(),
                rmul!(*w1m, v0m),
                rmul!(*w0m, v1).neg()
            ),
            Cm4P => rsum!(
                d(v0m)?,
                rmul!(*w1p, v0p).neg(),
                rmul!(*w1m, v0m).neg(),
                rmul!(*w0m, v1).neg()
            ),
            W1Plus => rmul!(*c01, w1p),
            Co7 => rsum!(
                rmul!(d(w1p)?, v1),
                rmul!(*w1p, d(v1)?).neg(),
                sc(&rmul!(*w1m, v0m), 2)
            ),
            V0Minus => rmul!(*c01, v0m),
            W0Minus => rmul!(*c01, w0m),
            Co8 => rsum!(
                sc(&rmul!(w1, d2(&w1)?), 2),
                rmul!(d(&w1)?, d(&w1)?).neg(),
                sc(&rmul!(*v1, d2(v1)?), 2),
                rmul!(d(v1)?, d(v1)?).neg(),
                sc(&rmul!(*v1, d(v0m)?), -4),
                sc(&rmul!(*v0m, v0m), 4),
                sc(&rmul!(w1sq, d(&w1)?), -2),
                sc(&rmul!(w1sq, w0), 4),
                sc(&rmul!(d(&w1)?, v1sq), -2),
                sc(&rmul!(*w1m, v1, d(v1)?), -4),
                sc(&rmul!(*w1m, v1, v0p), -8),
                sc(&rmul!(w0, v1sq), 4),
                rmul!(w1sq, w1sq).neg(),
                sc(
                    &rmul!(rsum!(w1sq.clone(), sc(&rmul!(*w1m, w1m), 2)), v1sq),
                    -2
                ),
                rmul!(v1sq, v1sq).neg(),
                sc(c10, -16)
            ),
            Co8P => rsum!(
                d3(&w1)?,
                rmul!(w1, d2(&w1)?).neg(),
                sc(&rmul!(d(&w1)?, d(&w1)?), -2),
                sc(&rmul!(d(&w1)?, w0), 4),
                sc(&rmul!(w1, d(&w0)?), 2),
                rmul!(*v1, d2(v1)?).neg(),
                sc(&rmul!(d(v1)?, d(v1)?), -2),
                sc(&rmul!(d(v1)?, rsum!(sc(v0p, 2), v0m.neg())), -2),
                sc(&rmul!(*v1, d(v0p)?), -2),
                sc(&rmul!(*v0p, v0m), 4),
                sc(&rmul!(w1sq, d(&w1)?), -2),
                sc(&rmul!(d(&w1)?, v1sq), -2),
                sc(&rmul!(*w1m, v1, d(v1)?), -4)
            ),
            Co9 => rsum!(
                rmul!(d2(&w1)?, v1),
                rmul!(d(w1m)?, d(v1)?).neg(),
                rmul!(w1.reflect(), d2(v1)?).neg(),
                sc(&rmul!(d(w1m)?, v0m), 2),
                sc(&rmul!(w1, d(v0m)?), 2),
                sc(&rmul!(*w1m, d(w1m)?, v1), -2),
                rmul!(e2, d(v1)?).neg(),
                sc(&rmul!(e2, v0p), -2),
                sc(&rmul!(*w1m, w0p, v1), 4),
                rmul!(v1sq, d(v1)?).neg(),
                sc(&rmul!(v1sq, v0p), -2),
                sc(&rmul!(e2, w1m, v1), -2),
                sc(&rmul!(*w1m, v1sq, v1), -2),
                sc(c11, 8)
            ),
            Co9P => rsum!(
                d3(v1)?,
                sc(&d2(v0m)?, 2),
                rmul!(d2(&w1.reflect())?, v1),
                sc(&rmul!(d(w1m)?, d(v1)?), -4),
                rmul!(w1, d2(v1)?).neg(),
                sc(&rmul!(d(w1p)?, v0), -2),
                sc(&rmul!(d(w1m)?, v0p), -4),
                sc(&rmul!(w1, d(v0p)?), -2),
                sc(&rmul!(d(&w0.reflect())?, v1), 2),
                sc(&rmul!(rsum!(sc(w0p, 2), w0m.neg()), d(v1)?), 2),
                sc(&rmul!(*w0m, v0m), 4),
                sc(&rmul!(*w1m, d(w1m)?, v1), -4),
                sc(&rmul!(e2, d(v1)?), -2),
                sc(&rmul!(v1sq, d(v1)?), -2)
            ),
            Co8E => {
                let quart = rsum!(
                    rmul!(*w1p, w1p, w1p, w1p),
                    sc(&rmul!(*w1p, w1p, w1m, w1m), 6),
                    rmul!(*w1m, w1m, w1m, w1m)
                );
                rsum!(
                    sc(&rmul!(*w1p, d2(w1p)?), 2),
                    sc(&rmul!(*w1m, d2(w1m)?), 2),
                    rmul!(d(w1p)?, d(w1p)?).neg(),
                    rmul!(d(w1m)?, d(w1m)?).neg(),
                    sc(&rmul!(*v1, d2(v1)?), 2),
                    rmul!(d(v1)?, d(v1)?).neg(),
                    sc(&rmul!(*v0m, v0m), 4),
                    sc(&rmul!(e2, d(w1m)?), -2),
                    sc(&rmul!(*w1p, w1m, d(w1p)?), -4),
                    sc(&rmul!(e2, w0p), 4),
                    sc(&rmul!(*w1p, w1m, w0m), 8),
                    sc(&rmul!(d(w1m)?, v1sq), -2),
                    sc(&rmul!(*w1m, v1, d(v1)?), -4),
                    sc(&rmul!(*w1m, v1, v0p), -8),
                    sc(&rmul!(*w0p, v1sq), 4),
                    quart.neg(),
                    sc(
                        &rmul!(
                            rsum!(rmul!(*w1p, w1p), sc(&rmul!(*w1m, w1m), 3)),
                            v1sq
                        ),
                        -2
                    ),
                    rmul!(v1sq, v1sq).neg(),
                    sc(c10, -16)
                )
            }
            Co8O => rsum!(
                rmul!(d2(w1p)?, w1m),
                rmul!(d(w1p)?, d(w1m)?).neg(),
                rmul!(*w1p, d2(w1m)?),
                sc(&rmul!(*w1p, w1m, d(w1m)?), -2),
                rmul!(e2, d(w1p)?).neg(),
                sc(&rmul!(e2, w0m), 2),
                sc(&rmul!(*w1p, w1m, w0p), 4),
                rmul!(*w1p, v1, d(v1)?).neg(),
                sc(&rmul!(*w1p, v1, v0p), -2),
                sc(&rmul!(*w1p, w1p, w1p, w1m), -2),
                sc(&rmul!(*w1p, w1m, w1m, w1m), -2),
                sc(&rmul!(*w1p, w1m, v1sq), -2)
            ),
            Co8PE => rsum!(
                d3(w1m)?,
                rmul!(*w1p, d2(w1p)?).neg(),
                rmul!(*w1m, d2(w1m)?).neg(),
                sc(&rmul!(d(w1p)?, d(w1p)?), -2),
                sc(&rmul!(d(w1m)?, d(w1m)?), -2),
                sc(&rmul!(d(w1p)?, w0m), 4),
                sc(&rmul!(*w1p, d(w0m)?), 2),
                sc(&rmul!(d(w1m)?, w0p), 4),
                sc(&rmul!(*w1m, d(w0p)?), 2),
                rmul!(*v1, d2(v1)?).neg(),
                sc(&rmul!(d(v1)?, d(v1)?), -2),
                sc(&rmul!(d(v1)?, v0p), -4),
                sc(&rmul!(*v1, d(v0p)?), -2),
                sc(&rmul!(e2, d(w1m)?), -2),
                sc(&rmul!(*w1p, w1m, d(w1p)?), -4),
                sc(&rmul!(d(w1m)?, v1sq), -2),
                sc(&rmul!(*w1m, v1, d(v1)?), -4)
            ),
            Co8PO => rsum!(
                d3(w1p)?,
                rmul!(d2(w1p)?, w1m).neg(),
                sc(&rmul!(d(w1p)?, d(w1m)?), -4),
                rmul!(*w1p, d2(w1m)?).neg(),
                sc(&rmul!(d(w1p)?, w0p), 4),
                sc(&rmul!(d(w1m)?, w0m), 4),
                sc(&rmul!(*w1p, d(w0p)?), 2),
                sc(&rmul!(*w1m, d(w0m)?), 2),
                sc(&rmul!(d(v1)?, v0m), 2),
                sc(&rmul!(*v0p, v0m), 4),
                sc(&rmul!(e2, d(w1p)?), -2),
                sc(&rmul!(*w1p, w1m, d(w1m)?), -4),
                sc(&rmul!(d(w1p)?, v1sq), -2)
            ),
            Co9E => rsum!(
                rmul!(d2(w1m)?, v1),
                rmul!(d(w1m)?, d(v1)?).neg(),
                rmul!(*w1m, d2(v1)?),
                rmul!(
                    rsum!(rmul!(*w1p, d(w1p)?), sc(&rmul!(*w1m, d(w1m)?), 2)),
                    v1
                )
                .neg(),
                rmul!(*w1m, w1m, d(v1)?).neg(),
                sc(&rmul!(*w1m, w1m, v0p), -2),
                sc(&rmul!(*w1p, w0m, v1), 2),
                sc(&rmul!(*w1m, w0p, v1), 4),
                rmul!(v1sq, d(v1)?).neg(),
                sc(&rmul!(v1sq, v0p), -2),
                sc(&rmul!(e2, w1m, v1), -2),
                sc(&rmul!(*w1m, v1sq, v1), -2),
                sc(c11, 8)
            ),
            Co9O => rsum!(
                rmul!(d2(w1p)?, v1),
                rmul!(*w1p, d2(v1)?).neg(),
                sc(&rmul!(d(w1m)?, v0m), 2),
                sc(&rmul!(*w1m, d(v0m)?), 2)
            ),
            Co9PE => rsum!(
                d3(v1)?,
                rmul!(d2(w1m)?, v1).neg(),
                sc(&rmul!(d(w1m)?, d(v1)?), -4),
                rmul!(*w1m, d2(v1)?).neg(),
                sc(&rmul!(d(w1p)?, v0m), -2),
                sc(&rmul!(d(w1m)?, v0p), -4),
                sc(&rmul!(*w1m, d(v0p)?), -2),
                sc(&rmul!(d(w0p)?, v1), 2),
                sc(&rmul!(*w0p, d(v1)?), 4),
                sc(&rmul!(*w0m, v0m), 4),
                sc(&rmul!(*w1m, d(w1m)?, v1), -4),
                sc(&rmul!(e2, d(v1)?), -2),
                sc(&rmul!(v1sq, d(v1)?), -2)
            ),
            Co9PO => rsum!(
                sc(&d2(v0m)?, 2),
                rmul!(d2(w1p)?, v1),
                rmul!(*w1p, d2(v1)?).neg(),
                sc(&rmul!(d(w1p)?, v0p), -2),
                sc(&rmul!(*w1p, d(v0p)?), -2),
                sc(&rmul!(d(w0m)?, v1), -2),
                sc(&rmul!(*w0m, d(v1)?), -2)
            ),
            C2F1 => rsum!(
                rmul!(*w1m, w1m),
                rmul!(*w1p, w1p).neg(),
                v1sq.neg()
            ),
            C2Cst => {
                let (f1, f2, f3) = self.f_vec()?;
                rsum!(
                    rmul!(*w1m, f1),
                    sc(&rmul!(*w1p, f2), -2),
                    sc(&rmul!(*v1, f3), -2)
                )
            }
            C2F2 => rsum!(
                sc(&rmul!(*v0m, v0m), 4),
                rmul!(d(w1p)?, d(w1p)?).neg(),
                rmul!(d(w1m)?, d(w1m)?),
                rmul!(d(v1)?, d(v1)?).neg()
            ),
            D2C1 => rsum!(
                d(v0m)?,
                rmul!(*w1p, v0p).neg(),
                rmul!(*w0m, v1).neg()
            ),
            D2C2 => rsum!(rmul!(d(w1p)?, v1), rmul!(*w1p, d(v1)?).neg()),
            D2C3 => rsum!(
                sc(
                    &rmul!(rsum!(rmul!(*w1p, w1p), v1sq.clone()), w0p),
                    4
                ),
                sc(&rmul!(*w1p, d2(w1p)?), 2),
                rmul!(d(w1p)?, d(w1p)?).neg(),
                sc(&rmul!(*v1, d2(v1)?), 2),
                rmul!(d(v1)?, d(v1)?).neg(),
                sc(&rmul!(*v0m, v0m), 4),
                rmul!(*w1p, w1p, w1p, w1p).neg(),
                sc(&rmul!(*w1p, w1p, v1, v1), -2),
                rmul!(v1sq, v1sq).neg(),
                sc(c10, -16)
            ),
            D2C4 => rsum!(
                sc(&rmul!(*w1p, w1p, w0m), 2),
                sc(&rmul!(*w1p, v1, v0p), -2),
                rmul!(*w1p, w1p, d(w1p)?).neg(),
                rmul!(*w1p, v1, d(v1)?).neg()
            ),
            D2C5 => rsum!(
                sc(&rmul!(*w1p, v1, w0m), 2),
                sc(&rmul!(v1sq, v0p), -2),
                rmul!(*w1p, d(w1p)?, v1).neg(),
                rmul!(v1sq, d(v1)?).neg(),
                sc(c11, 8)
            ),
            Wvw => rsum!(
                rmul!(*w1p, w1p),
                rmul!(*v0m, v0m),
                rmul!(*w0m, w0m)
            ),
        };
        Ok(r)
    }
}

// ---------------------------------------------------------------------------
// Model-level checks
// ---------------------------------------------------------------------------

impl ConditionInputs<SplitFunction> {
    pub fn from_model(model: &SusyModel) -> Self {
        assert_eq!(model.order_n, 2, "named conditions apply to 2-fold models");
        let w0 = &model.w_coeffs[0];
        let w1 = &model.w_coeffs[1];
        let v0 = &model.v_coeffs[0];
        let v1 = &model.v_coeffs[1];
        let k = |r: &Rational| SplitFunction::from_rational(r);
        ConditionInputs {
            w1p: SplitFunction::from_even(w1.even.clone()),
            w1m: SplitFunction::from_odd(w1.odd.clone()),
            v1: v1.clone(),
            w0p: SplitFunction::from_even(w0.even.clone()),
            w0m: SplitFunction::from_odd(w0.odd.clone()),
            v0p: SplitFunction::from_even(v0.even.clone()),
            v0m: SplitFunction::from_odd(v0.odd.clone()),
            vv0p: model.v0_plus.clone(),
            vv0m: model.v0_minus.clone(),
            vv1p: model.v1_plus.clone(),
            vv1m: model.v1_minus.clone(),
            c00: k(&model.constants.c00),
            c01: k(&model.constants.c01),
            c10: k(&model.constants.c10),
            c11: k(&model.constants.c11),
        }
    }
}

pub struct NamedConditionReport {
    pub residuals: Vec<(ConditionId, SplitFunction)>,
}

impl NamedConditionReport {
    pub fn residual(&self, id: ConditionId) -> Option<&SplitFunction> {
        self.residuals
            .iter()
            .find(|(i, _)| *i == id)
            .map(|(_, r)| r)
    }

    pub fn nonzero(&self) -> Vec<ConditionId> {
        self.residuals
            .iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|(i, _)| *i)
            .collect()
    }

    pub fn all_zero(&self) -> bool {
        self.nonzero().is_empty()
    }
}

/// Evaluate every applicable named condition on a 2-fold model by direct
/// substitution.
pub fn check_named_conditions(model: &SusyModel) -> Result<NamedConditionReport> {
    let inputs = ConditionInputs::from_model(model);
    let mut residuals = Vec::new();
    for &id in ConditionId::ALL {
        if id.applicable(model) {
            residuals.push((id, inputs.residual(id)?));
        }
    }
    Ok(NamedConditionReport { residuals })
}

/// The intertwining residual `P_N^- H^- - H^+ P_N^-` (zero iff the pair is
/// intertwined), plus the transposed relation whenever the reflection
/// potentials are not both even (the two relations are then independent).
pub struct IntertwiningResidual {
    pub primary: RefOp<SplitFunction>,
    pub transposed: Option<RefOp<SplitFunction>>,
}

impl IntertwiningResidual {
    pub fn is_zero(&self) -> bool {
        self.primary.is_zero() && self.transposed.as_ref().map_or(true, RefOp::is_zero)
    }
}

pub fn check_intertwining(model: &SusyModel) -> Result<IntertwiningResidual> {
    let primary = model
        .p_minus
        .compose(&model.h_minus)?
        .sub(&model.h_plus.compose(&model.p_minus)?);
    let both_even = model.v1_plus.odd.is_zero() && model.v1_minus.odd.is_zero();
    let transposed = if both_even {
        None
    } else {
        Some(
            model
                .p_plus
                .compose(&model.h_plus)?
                .sub(&model.h_minus.compose(&model.p_plus)?),
        )
    };
    Ok(IntertwiningResidual {
        primary,
        transposed,
    })
}

/// Residuals of the polynomial superalgebra closure
/// `P_N^∓ P_N^± = 2^N [ (H^± + C_0)^N + Σ_k C_k (H^± + C_0)^(N-k-1) ]`,
/// upper sign first.
pub fn check_superalgebra(
    model: &SusyModel,
) -> Result<(RefOp<SplitFunction>, RefOp<SplitFunction>)> {
    let n = model.order_n as u32;
    let c0 = model.c_op(0);
    let rhs = |h: &RefOp<SplitFunction>| -> Result<RefOp<SplitFunction>> {
        let hc = h.add(&c0);
        let mut out = hc.pow(n)?;
        for k in 1..n {
            out = out.add(&model.c_op(k as u8).compose(&hc.pow(n - k - 1)?)?);
        }
        Ok(out.scale(&Rational::from_int(1 << n)))
    };
    let upper = model
        .p_minus
        .compose(&model.p_plus)?
        .sub(&rhs(&model.h_plus)?);
    let lower = model
        .p_plus
        .compose(&model.p_minus)?
        .sub(&rhs(&model.h_minus)?);
    Ok((upper, lower))
}

// ---------------------------------------------------------------------------
// Free-ring identity suites
// ---------------------------------------------------------------------------

pub struct IdentityEntry {
    pub name: &'static str,
    pub anchor: &'static str,
    pub zero: bool,
    pub detail: String,
}

pub struct IdentityReport {
    pub entries: Vec<IdentityEntry>,
}

impl IdentityReport {
    pub fn all_zero(&self) -> bool {
        self.entries.iter().all(|e| e.zero)
    }
}

type F = FreeDiffElement;

fn fsym(name: &'static str, parity: SymbolParity) -> F {
    F::symbol(name, parity)
}

/// Anticommutator expansions of the generic 2-fold supercharges: compose
/// `P2^- P2^+` and `P2^+ P2^-` with fully generic coefficients and
/// subtract the stored closed-form expansions slot by slot.
pub fn check_appendix_identities() -> Result<IdentityReport> {
    let w1 = fsym("w1", SymbolParity::Free);
    let v1 = fsym("v1", SymbolParity::Free);
    let w0 = fsym("w0", SymbolParity::Free);
    let v0 = fsym("v0", SymbolParity::Free);
    let w1s = w1.reflect();
    let v1s = v1.reflect();
    let w0s = w0.reflect();
    let v0s = v0.reflect();
    let half = Rational::new(1, 2);
    let v1p = v1.add(&v1s).scale(&half);
    let v0p = v0.add(&v0s).scale(&half);

    let p2m: RefOp<F> = RefOp::from_terms([
        ((2, 0), F::one()),
        ((1, 0), w1.clone()),
        ((1, 1), v1.neg()),
        ((0, 0), w0.clone()),
        ((0, 1), v0.clone()),
    ]);
    let p2p = p2m.transpose()?;

    let prod_mp = p2m.compose(&p2p)?;
    let prod_pm = p2p.compose(&p2m)?;

    // Stored expansion of P2^- P2^+ (coefficients of [A + B P] d^n,
    // normal-ordered: B picks up (-1)^n when P moves past d^n).
    let a2 = rsum!(
        sc(&d(&w1)?, -3),
        sc(&w0, 2),
        rmul!(w1, w1).neg(),
        rmul!(v1, v1).neg()
    );
    let b2 = rsum!(
        sc(&d(&v1s)?, -3),
        sc(&v0p, 2),
        rmul!(w1, v1s).neg(),
        rmul!(w1s, v1).neg()
    );
    let a1 = rsum!(
        sc(&d2(&w1)?, -3),
        sc(&d(&w0)?, 2),
        sc(&rmul!(w1, d(&w1)?), -2),
        sc(&rmul!(v1, d(&v1)?), -2)
    );
    let b1 = rsum!(
        sc(&d2(&v1s)?, 3),
        sc(&d(&v0s)?, -2),
        sc(&rmul!(d(&w1s)?, v1), 2),
        sc(&rmul!(w1, d(&v1s)?), 2),
        rmul!(w1, v0s).neg(),
        rmul!(w1s, v0).neg(),
        rmul!(w0, v1s),
        rmul!(w0s, v1)
    );
    let a0 = rsum!(
        d3(&w1)?.neg(),
        d2(&w0)?,
        rmul!(w1, d2(&w1)?).neg(),
        rmul!(v1, d2(&v1)?).neg(),
        rmul!(d(&w1)?, w0).neg(),
        rmul!(w1, d(&w0)?),
        rmul!(d(&v1)?, v0),
        rmul!(v1, d(&v0)?).neg(),
        rmul!(w0, w0),
        rmul!(v0, v0)
    );
    let b0 = rsum!(
        d3(&v1s)?.neg(),
        d2(&v0s)?,
        rmul!(d2(&w1s)?, v1).neg(),
        rmul!(w1, d2(&v1s)?).neg(),
        rmul!(d(&w1s)?, v0),
        rmul!(w1, d(&v0s)?),
        rmul!(d(&w0s)?, v1).neg(),
        rmul!(w0, d(&v1s)?).neg(),
        rmul!(w0, v0s),
        rmul!(w0s, v0)
    );
    let rhs_mp: RefOp<F> = RefOp::from_terms([
        ((4, 0), F::one()),
        ((3, 1), sc(&v1p, -2)),
        ((2, 0), a2),
        ((2, 1), b2),
        ((1, 0), a1),
        ((1, 1), b1.neg()),
        ((0, 0), a0),
        ((0, 1), b0),
    ]);
    let res_mp = prod_mp.sub(&rhs_mp);

    // Stored expansion of P2^+ P2^-.
    let a2 = rsum!(
        d(&w1)?,
        sc(&w0, 2),
        rmul!(w1, w1).neg(),
        rmul!(v1s, v1s).neg()
    );
    let b2 = rsum!(
        sc(&d(&v1)?, -2),
        d(&v1s)?.neg(),
        sc(&v0p, 2),
        rmul!(w1, v1),
        rmul!(w1s, v1s)
    );
    let a1 = rsum!(
        d2(&w1)?,
        sc(&d(&w0)?, 2),
        sc(&rmul!(w1, d(&w1)?), -2),
        sc(&rmul!(v1s, d(&v1s)?), -2)
    );
    let b1 = rsum!(
        d2(&v1)?,
        sc(&d(&v0)?, -2),
        rmul!(d(&w1)?, v1).neg(),
        rmul!(d(&w1s)?, v1s).neg(),
        rmul!(w1, d(&v1)?).neg(),
        rmul!(w1s, d(&v1s)?).neg(),
        rmul!(w1, v0),
        rmul!(w1s, v0s),
        rmul!(w0, v1),
        rmul!(w0s, v1s)
    );
    let a0 = rsum!(
        d2(&w0)?,
        rmul!(d(&w1)?, w0).neg(),
        rmul!(w1, d(&w0)?).neg(),
        rmul!(d(&v1s)?, v0s).neg(),
        rmul!(v1s, d(&v0s)?).neg(),
        rmul!(w0, w0),
        rmul!(v0s, v0s)
    );
    let b0 = rsum!(
        d2(&v0)?,
        rmul!(d(&w1)?, v0).neg(),
        rmul!(w1, d(&v0)?).neg(),
        rmul!(d(&w0s)?, v1s).neg(),
        rmul!(w0s, d(&v1s)?).neg(),
        rmul!(w0, v0),
        rmul!(w0s, v0s)
    );
    let rhs_pm: RefOp<F> = RefOp::from_terms([
        ((4, 0), F::one()),
        ((3, 1), sc(&v1p, -2)),
        ((2, 0), a2),
        ((2, 1), b2),
        ((1, 0), a1),
        ((1, 1), b1.neg()),
        ((0, 0), a0),
        ((0, 1), b0),
    ]);
    let res_pm = prod_pm.sub(&rhs_pm);

    // Leading-term check: both products begin d^4 - 2 v1+ d^3 P.
    let leading_ok = |prod: &RefOp<F>| {
        prod.coeff(4, 0) == F::one() && prod.coeff(3, 1) == sc(&v1p, -2)
    };
    let lead_zero = leading_ok(&prod_mp) && leading_ok(&prod_pm);

    let entry = |name, anchor, op: &RefOp<F>| IdentityEntry {
        name,
        anchor,
        zero: op.is_zero(),
        detail: format!("{op:?}"),
    };
    Ok(IdentityReport {
        entries: vec![
            entry(
                "anticommutator-expansion-upper",
                "product of the 2-fold supercharge with its transpose",
                &res_mp,
            ),
            entry(
                "anticommutator-expansion-lower",
                "product of the transposed 2-fold supercharge with the original",
                &res_pm,
            ),
            IdentityEntry {
                name: "leading-terms",
                anchor: "fourth-order leading part shared by both products",
                zero: lead_zero,
                detail: String::new(),
            },
        ],
    })
}

/// The three derivative-dependency identities: specific combinations of
/// the derivative-companion conditions equal d/dq of the second-order
/// conditions, exactly, for fully generic parity-definite coefficients.
pub fn check_dependency_identities() -> Result<IdentityReport> {
    let inputs = ConditionInputs::from_slots(
        fsym("w1p", SymbolParity::Even),
        fsym("w1m", SymbolParity::Odd),
        fsym("v1m", SymbolParity::Odd),
        fsym("w0p", SymbolParity::Even),
        fsym("w0m", SymbolParity::Odd),
        fsym("v0p", SymbolParity::Even),
        fsym("v0m", SymbolParity::Odd),
        fsym("C00", SymbolParity::Constant),
        fsym("C01", SymbolParity::Constant),
        fsym("C10", SymbolParity::Constant),
        fsym("C11", SymbolParity::Constant),
    )?;

    let co8pe = inputs.residual(ConditionId::Co8PE)?;
    let co8po = inputs.residual(ConditionId::Co8PO)?;
    let co9pe = inputs.residual(ConditionId::Co9PE)?;
    let cm4p = inputs.residual(ConditionId::Cm4P)?;
    let co7 = inputs.residual(ConditionId::Co7)?;
    let co8e = inputs.residual(ConditionId::Co8E)?;
    let co8o = inputs.residual(ConditionId::Co8O)?;
    let co9e = inputs.residual(ConditionId::Co9E)?;

    let w1p = &inputs.w1p;
    let w1m = &inputs.w1m;
    let v1 = &inputs.v1;
    let w0m = &inputs.w0m;
    let v0p = &inputs.v0p;
    let v0m = &inputs.v0m;

    // Combination 1: the cofactor on [2(reduced lower-sign first-order
    // relation) + (first-order compatibility relation)] is the odd part
    // v0- (the combination is odd overall).
    let comb1 = rsum!(
        sc(&rmul!(*w1m, co8pe), 2),
        sc(&rmul!(*w1p, co8po), 2),
        sc(&rmul!(*v1, co9pe), 2),
        sc(&rmul!(*v0m, rsum!(sc(&cm4p, 2), co7.clone())), 4)
    );
    let r1 = comb1.sub(&d(&co8e)?);

    let comb2 = rsum!(
        rmul!(*w1p, co8pe),
        rmul!(*w1m, co8po),
        rmul!(rsum!(d(v1)?, sc(v0p, 2)), co7).neg()
    );
    let r2 = comb2.sub(&d(&co8o)?);

    let comb3 = rsum!(
        rmul!(*v1, co8pe),
        rmul!(*w1m, co9pe),
        rmul!(rsum!(d(w1p)?, sc(w0m, -2)), co7)
    );
    let r3 = comb3.sub(&d(&co9e)?);

    let entry = |name, anchor, r: &F| IdentityEntry {
        name,
        anchor,
        zero: r.is_zero(),
        detail: format!("{r:?}"),
    };
    Ok(IdentityReport {
        entries: vec![
            entry(
                "dependency-1",
                "combination equal to d/dq of the even second-order w condition",
                &r1,
            ),
            entry(
                "dependency-2",
                "combination equal to d/dq of the odd second-order w condition",
                &r2,
            ),
            entry(
                "dependency-3",
                "combination equal to d/dq of the even second-order v condition",
                &r3,
            ),
        ],
    })
}
