//! Constructors for the closed-form N-fold SUSY families with
//! reflections: the 1-fold family and the seven 2-fold cases, plus the
//! two-component matrix representation.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::model::{CaseTag, PseudoOddConstant, SusyConstants, SusyModel};
use crate::ratfun::RationalFunction;
use crate::rational::Rational;
use crate::refop::RefOp;
use crate::split::SplitFunction;

type Rf = RationalFunction;
type S = SplitFunction;

// ---- small helpers (rational coefficient ring only) --------------------

fn d(a: &S) -> S {
    Coeff::derive(a).expect("rational ring derivation is total")
}

fn dr(a: &Rf) -> Rf {
    a.derive()
}

fn k(r: &Rational) -> S {
    S::from_rational(r)
}

fn ki(n: i64) -> S {
    S::from_rational(&Rational::from_int(n))
}

fn sum(xs: &[S]) -> S {
    let mut out = S::zero();
    for x in xs {
        out = out.add(x);
    }
    out
}

fn sc(a: &S, n: i64) -> S {
    a.mul(&ki(n))
}

fn require_parity(f: &Rf, field: &str, even: bool) -> Result<()> {
    let ok = if even { f.is_even() } else { f.is_odd() };
    if ok {
        Ok(())
    } else {
        Err(Error::ParityViolation {
            field: field.to_string(),
            detail: format!(
                "expected an {} function, got {f}",
                if even { "even" } else { "odd" }
            ),
        })
    }
}

// ---- 1-fold -------------------------------------------------------------

/// 1-fold system: P1- = d/dq + w0 + v0- P with
/// 2 V0± = ±w0' + w0^2 + (v0-)^2 - 2 C00,
/// 2 V1± = -(v0-)' ∓ 2 w0- v0- - 2 C01.
pub fn build_one_fold(w0: &Rf, v0_minus: &Rf, consts: &SusyConstants) -> Result<SusyModel> {
    require_parity(v0_minus, "v0_minus", false)?;
    build_one_fold_unchecked(w0, v0_minus, consts)
}

/// Same construction with the parity requirement on the reflection
/// coefficient deliberately skipped. Useful as a negative control: the
/// resulting pair is generally *not* a valid 1-fold system and the
/// superalgebra check reports a nonzero residual.
pub fn build_one_fold_unchecked(
    w0: &Rf,
    v0_minus: &Rf,
    consts: &SusyConstants,
) -> Result<SusyModel> {
    let w0s = S::from_total(w0);
    let v0 = S::from_total(v0_minus);
    let half = Rational::new(1, 2);

    let base = sum(&[w0s.mul(&w0s), v0.mul(&v0), k(&consts.c00).mul(&ki(-2))]);
    let v0p_pot = sum(&[d(&w0s), base.clone()]).mul(&k(&half));
    let v0m_pot = sum(&[d(&w0s).neg(), base]).mul(&k(&half));

    let w0m = S::from_odd(w0s.odd.clone());
    let vbase = sum(&[d(&v0).neg(), k(&consts.c01).mul(&ki(-2))]);
    let v1p_pot = sum(&[vbase.clone(), sc(&w0m.mul(&v0), -2)]).mul(&k(&half));
    let v1m_pot = sum(&[vbase, sc(&w0m.mul(&v0), 2)]).mul(&k(&half));

    let mut model = SusyModel::empty(1, CaseTag::OneFold);
    model.w_coeffs = vec![w0s.clone()];
    model.v_coeffs = vec![v0.clone()];
    model.constants = consts.clone();
    model.v0_plus = v0p_pot;
    model.v0_minus = v0m_pot;
    model.v1_plus = v1p_pot;
    model.v1_minus = v1m_pot;
    model.p_minus = RefOp::d(1)
        .add(&RefOp::mul_by(w0s))
        .add(&RefOp::term(0, 1, v0));
    model.finish()
}

// ---- generic 2-fold assembly ---------------------------------------------

struct TwoFoldSlots {
    w1: S,
    v1: S,
    w0: S,
    v0: S,
}

/// Potentials and supercharge of the general 2-fold form:
/// 4 V0+ = 3 w1' - 2 w0 + w1^2 + v1^2 - 4 C00,
/// 4 V0- = - w1' - 2 w0 + w1^2 + v1^2 - 4 C00,
/// 4 V1+ = -3 v1' - 2 v0+ - 2 w1- v1 - 4 C01,
/// 4 V1- =    v1' - 2 v0+ - 2 w1- v1 - 4 C01,
/// P2-  = d^2 + (w1 + v1 P) d + w0 + v0 P.
fn assemble_two_fold(slots: TwoFoldSlots, consts: &SusyConstants, tag: CaseTag) -> Result<SusyModel> {
    let TwoFoldSlots { w1, v1, w0, v0 } = slots;
    let quarter = Rational::new(1, 4);

    let base = sum(&[
        sc(&w0, -2),
        w1.mul(&w1),
        v1.mul(&v1),
        k(&consts.c00).mul(&ki(-4)),
    ]);
    let v0p_pot = sum(&[sc(&d(&w1), 3), base.clone()]).mul(&k(&quarter));
    let v0m_pot = sum(&[d(&w1).neg(), base]).mul(&k(&quarter));

    let w1m = S::from_odd(w1.odd.clone());
    let v0_even_slot = S::from_even(v0.even.clone());
    let vbase = sum(&[
        sc(&v0_even_slot, -2),
        sc(&w1m.mul(&v1), -2),
        k(&consts.c01).mul(&ki(-4)),
    ]);
    let v1p_pot = sum(&[sc(&d(&v1), -3), vbase.clone()]).mul(&k(&quarter));
    let v1m_pot = sum(&[d(&v1), vbase]).mul(&k(&quarter));

    let mut model = SusyModel::empty(2, tag);
    model.w_coeffs = vec![w0.clone(), w1.clone()];
    model.v_coeffs = vec![v0.clone(), v1.clone()];
    model.constants = consts.clone();
    model.v0_plus = v0p_pot;
    model.v0_minus = v0m_pot;
    model.v1_plus = v1p_pot;
    model.v1_minus = v1m_pot;
    model.p_minus = RefOp::from_terms([
        ((2, 0), S::one()),
        ((1, 0), w1),
        ((1, 1), v1.neg()), // v1 P d = -v1 d P in normal order
        ((0, 0), w0),
        ((0, 1), v0),
    ]);
    model.finish()
}

/// General 2-fold assembly from parity-separated inputs. Makes no
/// validity claim: run the condition checker on the result.
#[allow(clippy::too_many_arguments)]
pub fn build_two_fold(
    w1_even: &Rf,
    w1_odd: &Rf,
    v1_odd: &Rf,
    w0_even: &Rf,
    w0_odd: &Rf,
    v0_even: &Rf,
    v0_odd: &Rf,
    consts: &SusyConstants,
) -> Result<SusyModel> {
    require_parity(w1_even, "w1_even", true)?;
    require_parity(w1_odd, "w1_odd", false)?;
    require_parity(v1_odd, "v1_odd", false)?;
    require_parity(w0_even, "w0_even", true)?;
    require_parity(w0_odd, "w0_odd", false)?;
    require_parity(v0_even, "v0_even", true)?;
    require_parity(v0_odd, "v0_odd", false)?;
    assemble_two_fold(
        TwoFoldSlots {
            w1: S::new(w1_even.clone(), w1_odd.clone()),
            v1: S::from_odd(v1_odd.clone()),
            w0: S::new(w0_even.clone(), w0_odd.clone()),
            v0: S::new(v0_even.clone(), v0_odd.clone()),
        },
        consts,
        CaseTag::Manual,
    )
}

// ---- the f1, f2, f3 right-hand sides -------------------------------------

pub(crate) struct FVec {
    pub f1: Rf,
    pub f2: Rf,
    pub f3: Rf,
}

pub(crate) fn f_vec(
    w1p: &Rf,
    w1m: &Rf,
    v1m: &Rf,
    v0m: &Rf,
    c10: &Rational,
    c11: &Rational,
) -> FVec {
    let two = |f: &Rf| f.scale(&Rational::from_int(2));
    let sq = |f: &Rf| f.mul(f);
    let w1p1 = dr(w1p);
    let w1p2 = dr(&w1p1);
    let w1m1 = dr(w1m);
    let w1m2 = dr(&w1m1);
    let v1m1 = dr(v1m);
    let v1m2 = dr(&v1m1);
    let e2 = sq(w1p).add(&sq(w1m));

    let f1 = two(&w1p.mul(&w1p2))
        .neg()
        .sub(&two(&w1m.mul(&w1m2)))
        .add(&sq(&w1p1))
        .add(&sq(&w1m1))
        .sub(&two(&v1m.mul(&v1m2)))
        .add(&sq(&v1m1))
        .sub(&sq(v0m).scale(&Rational::from_int(4)))
        .add(&two(&e2.mul(&w1m1)))
        .add(&w1p.mul(&w1m).mul(&w1p1).scale(&Rational::from_int(4)))
        .add(&two(&w1m1.mul(&sq(v1m))))
        .add(&w1m.mul(v1m).mul(&v1m1).scale(&Rational::from_int(4)))
        .add(&sq(&sq(w1p)))
        .add(&sq(w1p).mul(&sq(w1m)).scale(&Rational::from_int(6)))
        .add(&sq(&sq(w1m)))
        .add(&two(
            &sq(w1p)
                .add(&sq(w1m).scale(&Rational::from_int(3)))
                .mul(&sq(v1m)),
        ))
        .add(&sq(&sq(v1m)))
        .add(&Rf::from_rational(&(&Rational::from_int(16) * c10)));

    let f2 = w1p2
        .mul(w1m)
        .neg()
        .add(&w1p1.mul(&w1m1))
        .sub(&w1p.mul(&w1m2))
        .add(&two(&w1p.mul(w1m).mul(&w1m1)))
        .add(&e2.mul(&w1p1))
        .add(&w1p.mul(v1m).mul(&v1m1))
        .add(&two(&sq(w1p).mul(w1p).mul(w1m)))
        .add(&two(&w1p.mul(&sq(w1m)).mul(w1m)))
        .add(&two(&w1p.mul(w1m).mul(&sq(v1m))));

    let f3 = w1m2
        .mul(v1m)
        .neg()
        .add(&w1m1.mul(&v1m1))
        .sub(&w1m.mul(&v1m2))
        .add(&w1p.mul(&w1p1).add(&two(&w1m.mul(&w1m1))).mul(v1m))
        .add(&sq(w1m).mul(&v1m1))
        .add(&sq(v1m).mul(&v1m1))
        .add(&two(&e2.mul(w1m).mul(v1m)))
        .add(&two(&w1m.mul(&sq(v1m)).mul(v1m)))
        .sub(&Rf::from_rational(&(&Rational::from_int(8) * c11)));

    FVec { f1, f2, f3 }
}

// ---- exact linear solve ---------------------------------------------------

/// Gaussian elimination over the rational-function field.
fn solve_linear(mut a: Vec<Vec<Rf>>, mut b: Vec<Rf>) -> Result<Vec<Rf>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::DegenerateCase("singular linear system".into()))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Rf::one().div(&a[col][col])?;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].mul(&inv);
            for c in col..n {
                let t = factor.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&t);
            }
            let t = factor.mul(&b[col]);
            b[r] = b[r].sub(&t);
        }
    }
    (0..n).map(|i| b[i].div(&a[i][i])).collect()
}

// ---- Case 1 ---------------------------------------------------------------

/// Non-degenerate 2-fold case: w1- != 0 and (w1-)^2 != (w1+)^2 + (v1-)^2,
/// C01 = 0. The lower coefficients are fixed by an exact 3x3 linear solve
/// plus the first-order compatibility relation for v0-.
pub fn solve_case1(
    w1_even: &Rf,
    w1_odd: &Rf,
    v1_odd: &Rf,
    consts: &SusyConstants,
) -> Result<SusyModel> {
    require_parity(w1_even, "w1_even", true)?;
    require_parity(w1_odd, "w1_odd", false)?;
    require_parity(v1_odd, "v1_odd", false)?;
    if !consts.c01.is_zero() {
        return Err(Error::ConstraintViolation(
            "Case 1 requires C01 = 0 (use Case 4 or 5 for C01 != 0)".into(),
        ));
    }
    if w1_odd.is_zero() {
        return Err(Error::DegenerateCase(
            "w1_odd = 0: this is Case 3".into(),
        ));
    }
    let sq = |f: &Rf| f.mul(f);
    let c2f1 = sq(w1_odd).sub(&sq(w1_even)).sub(&sq(v1_odd));
    if c2f1.is_zero() {
        return Err(Error::DegenerateCase(
            "(w1-)^2 = (w1+)^2 + (v1-)^2: this is Case 2".into(),
        ));
    }

    // v0- from the first-order compatibility relation.
    let v0m = w1_even
        .mul(&dr(v1_odd))
        .sub(&dr(w1_even).mul(v1_odd))
        .div(&w1_odd.scale(&Rational::from_int(2)))?;

    let f = f_vec(w1_even, w1_odd, v1_odd, &v0m, &consts.c10, &consts.c11);
    let two = Rational::from_int(2);
    let a = |n: i64| Rational::from_int(n);
    // 2A x = f with the 3x3 matrix of the three second-order conditions.
    let row = |cols: [Rf; 3]| cols.to_vec();
    let m = vec![
        row([
            sq(w1_even)
                .add(&sq(w1_odd))
                .add(&sq(v1_odd))
                .scale(&(&two * &two)),
            w1_even.mul(w1_odd).scale(&a(8)),
            w1_odd.mul(v1_odd).scale(&a(-8)),
        ]),
        row([
            w1_even.mul(w1_odd).scale(&a(4)),
            sq(w1_even).add(&sq(w1_odd)).scale(&two),
            w1_even.mul(v1_odd).scale(&a(-2)),
        ]),
        row([
            w1_odd.mul(v1_odd).scale(&a(4)),
            w1_even.mul(v1_odd).scale(&two),
            sq(w1_odd).add(&sq(v1_odd)).scale(&a(-2)),
        ]),
    ];
    let sol = solve_linear(m, vec![f.f1, f.f2, f.f3])?;
    let (w0p, w0m, v0p) = (sol[0].clone(), sol[1].clone(), sol[2].clone());

    assemble_two_fold(
        TwoFoldSlots {
            w1: S::new(w1_even.clone(), w1_odd.clone()),
            v1: S::from_odd(v1_odd.clone()),
            w0: S::new(w0p, w0m),
            v0: S::new(v0p, v0m),
        },
        consts,
        CaseTag::Case1,
    )
}

// ---- Case 2 ---------------------------------------------------------------

/// Degenerate 2-fold case (w1-)^2 = (w1+)^2 + (v1-)^2 != 0, C01 = 0.
/// Requires C10 = C11 = 0; v0- is an exact rational-function square root.
pub fn solve_case2(
    w1_even: &Rf,
    w1_odd: &Rf,
    v1_odd: &Rf,
    w0_even: &Rf,
    consts: &SusyConstants,
) -> Result<SusyModel> {
    require_parity(w1_even, "w1_even", true)?;
    require_parity(w1_odd, "w1_odd", false)?;
    require_parity(v1_odd, "v1_odd", false)?;
    require_parity(w0_even, "w0_even", true)?;
    if !consts.c01.is_zero() {
        return Err(Error::ConstraintViolation("Case 2 requires C01 = 0".into()));
    }
    if !consts.c10.is_zero() || !consts.c11.is_zero() {
        return Err(Error::ConstraintViolation(
            "Case 2 forces C10 = C11 = 0".into(),
        ));
    }
    let sq = |f: &Rf| f.mul(f);
    let c2f1 = sq(w1_odd).sub(&sq(w1_even)).sub(&sq(v1_odd));
    if !c2f1.is_zero() || w1_odd.is_zero() {
        return Err(Error::ConstraintViolation(
            "Case 2 requires (w1-)^2 = (w1+)^2 + (v1-)^2 != 0".into(),
        ));
    }

    // 4 (v0-)^2 = ((w1+)')^2 - ((w1-)')^2 + ((v1-)')^2
    let rhs = sq(&dr(w1_even))
        .sub(&sq(&dr(w1_odd)))
        .add(&sq(&dr(v1_odd)))
        .scale(&Rational::new(1, 4));
    let root = rhs.sqrt_exact()?;
    // Pick the branch consistent with the first-order relation
    // (w1+)' v1- - w1+ (v1-)' + 2 w1- v0- = 0.
    let co7 = |v0m: &Rf| {
        dr(w1_even)
            .mul(v1_odd)
            .sub(&w1_even.mul(&dr(v1_odd)))
            .add(&w1_odd.mul(v0m).scale(&Rational::from_int(2)))
    };
    let v0m = if co7(&root).is_zero() {
        root
    } else if co7(&root.neg()).is_zero() {
        root.neg()
    } else {
        return Err(Error::ConstraintViolation(
            "no square-root branch of v0- satisfies the first-order relation".into(),
        ));
    };

    let f = f_vec(w1_even, w1_odd, v1_odd, &v0m, &consts.c10, &consts.c11);
    let w1m3 = w1_odd.mul(w1_odd).mul(w1_odd).scale(&Rational::from_int(8));
    let w0m = w1_even
        .mul(&f.f1)
        .neg()
        .add(&w1_odd.mul(&f.f2).scale(&Rational::from_int(4)))
        .sub(
            &sq(w1_odd)
                .mul(w1_even)
                .mul(w0_even)
                .scale(&Rational::from_int(8)),
        )
        .div(&w1m3)?;
    let v0p = v1_odd
        .mul(&f.f1)
        .sub(&w1_odd.mul(&f.f3).scale(&Rational::from_int(4)))
        .add(
            &sq(w1_odd)
                .mul(v1_odd)
                .mul(w0_even)
                .scale(&Rational::from_int(8)),
        )
        .div(&w1m3)?;

    assemble_two_fold(
        TwoFoldSlots {
            w1: S::new(w1_even.clone(), w1_odd.clone()),
            v1: S::from_odd(v1_odd.clone()),
            w0: S::new(w0_even.clone(), w0m),
            v0: S::new(v0p, v0m),
        },
        consts,
        CaseTag::Case2,
    )
}

// ---- Case 3 ---------------------------------------------------------------

/// Case 3-1: w1- = 0, w1+ != 0, v1 = 0. Free data: w1+ and v0-.
pub fn solve_case3_1(w1_even: &Rf, v0_minus: &Rf, consts: &SusyConstants) -> Result<SusyModel> {
    require_parity(w1_even, "w1_even", true)?;
    require_parity(v0_minus, "v0_minus", false)?;
    if w1_even.is_zero() {
        return Err(Error::DegenerateCase(
            "w1_even = 0: this is Case 3-2 or 3-3".into(),
        ));
    }
    if !consts.c11.is_zero() {
        return Err(Error::ConstraintViolation("Case 3-1 forces C11 = 0".into()));
    }
    let sq = |f: &Rf| f.mul(f);
    let w1p1 = dr(w1_even);
    let w1p2 = dr(&w1p1);
    let w0p = w1p2
        .div(&w1_even.scale(&Rational::from_int(2)))?
        .neg()
        .add(&sq(&w1p1).div(&sq(w1_even).scale(&Rational::from_int(4)))?)
        .sub(&sq(v0_minus).div(&sq(w1_even))?)
        .add(&sq(w1_even).scale(&Rational::new(1, 4)))
        .add(&Rf::from_rational(&(&Rational::from_int(4) * &consts.c10)).div(&sq(w1_even))?);
    let w0m = w1p1.scale(&Rational::new(1, 2));
    let v0p = dr(v0_minus).div(w1_even)?;

    assemble_two_fold(
        TwoFoldSlots {
            w1: S::from_even(w1_even.clone()),
            v1: S::zero(),
            w0: S::new(w0p, w0m),
            v0: S::new(v0p, v0_minus.clone()),
        },
        consts,
        CaseTag::Case3_1,
    )
}

/// Case 3-2: w1 = 0, v1- != 0. Free data: v1- and v0-.
pub fn solve_case3_2(v1_odd: &Rf, v0_minus: &Rf, consts: &SusyConstants) -> Result<SusyModel> {
    require_parity(v1_odd, "v1_odd", false)?;
    require_parity(v0_minus, "v0_minus", false)?;
    if v1_odd.is_zero() {
        return Err(Error::DegenerateCase("v1_odd = 0: this is Case 3-3".into()));
    }
    let sq = |f: &Rf| f.mul(f);
    let v1m1 = dr(v1_odd);
    let v1m2 = dr(&v1m1);
    let w0p = v1m2
        .div(&v1_odd.scale(&Rational::from_int(2)))?
        .neg()
        .add(&sq(&v1m1).div(&sq(v1_odd).scale(&Rational::from_int(4)))?)
        .sub(&sq(v0_minus).div(&sq(v1_odd))?)
        .add(&sq(v1_odd).scale(&Rational::new(1, 4)))
        .add(&Rf::from_rational(&(&Rational::from_int(4) * &consts.c10)).div(&sq(v1_odd))?);
    let w0m = dr(v0_minus).div(v1_odd)?;
    let v0p = v1m1
        .scale(&Rational::new(-1, 2))
        .add(&Rf::from_rational(&(&Rational::from_int(4) * &consts.c11)).div(&sq(v1_odd))?);

    assemble_two_fold(
        TwoFoldSlots {
            w1: S::zero(),
            v1: S::from_odd(v1_odd.clone()),
            w0: S::new(w0p, w0m),
            v0: S::new(v0p, v0_minus.clone()),
        },
        consts,
        CaseTag::Case3_2,
    )
}

/// Case 3-3: w1 = v1 = 0. Free data: w0+, w0-, v0+ and an optional
/// odd-by-convention constant v0-. Derives C10 = (v0-)^2/4 and C11 = 0.
/// Strict mode rejects a nonzero v0-.
pub fn solve_case3_3(
    w0_even: &Rf,
    w0_odd: &Rf,
    v0_even: &Rf,
    v0_minus: PseudoOddConstant,
    consts: &SusyConstants,
    strict: bool,
) -> Result<SusyModel> {
    require_parity(w0_even, "w0_even", true)?;
    require_parity(w0_odd, "w0_odd", false)?;
    require_parity(v0_even, "v0_even", true)?;
    if strict && v0_minus.0 != 0 {
        return Err(Error::ConstraintViolation(
            "strict mode: no nonzero odd analytic constant exists, so v0- = 0 and C10 = 0".into(),
        ));
    }
    let v0m = Rational::from_int(v0_minus.0);
    let mut consts = consts.clone();
    consts.c10 = &(&v0m * &v0m) * &Rational::new(1, 4);
    consts.c11 = Rational::zero();

    assemble_two_fold(
        TwoFoldSlots {
            w1: S::zero(),
            v1: S::zero(),
            w0: S::new(w0_even.clone(), w0_odd.clone()),
            v0: S::new(v0_even.clone(), Rf::from_rational(&v0m)),
        },
        &consts,
        CaseTag::Case3_3,
    )
}

// ---- Case 4 ---------------------------------------------------------------

/// C01 != 0, (v1-)^2 != (w1-)^2; then w1+ = v0- = w0- = 0 and (w0+, v0+)
/// come from a unique 2x2 linear solve.
pub fn solve_case4(w1_odd: &Rf, v1_odd: &Rf, consts: &SusyConstants) -> Result<SusyModel> {
    require_parity(w1_odd, "w1_odd", false)?;
    require_parity(v1_odd, "v1_odd", false)?;
    if consts.c01.is_zero() {
        return Err(Error::ConstraintViolation(
            "Case 4 requires C01 != 0 (use Cases 1-3 otherwise)".into(),
        ));
    }
    let sq = |f: &Rf| f.mul(f);
    if sq(w1_odd) == sq(v1_odd) {
        return Err(Error::DegenerateCase(
            "(v1-)^2 = (w1-)^2: this is Case 5".into(),
        ));
    }
    let f = f_vec(
        &Rf::zero(),
        w1_odd,
        v1_odd,
        &Rf::zero(),
        &consts.c10,
        &consts.c11,
    );
    // det B = -2 [(w1-)^2 - (v1-)^2]^2
    let det_b = sq(&sq(w1_odd).sub(&sq(v1_odd))).scale(&Rational::from_int(-2));
    let w0p = sq(w1_odd)
        .add(&sq(v1_odd))
        .mul(&f.f1)
        .sub(&w1_odd.mul(v1_odd).mul(&f.f3).scale(&Rational::from_int(4)))
        .div(&det_b.scale(&Rational::from_int(-2)))?;
    let v0p = w1_odd
        .mul(v1_odd)
        .mul(&f.f1)
        .sub(&sq(w1_odd).add(&sq(v1_odd)).mul(&f.f3))
        .div(&det_b.neg())?;

    assemble_two_fold(
        TwoFoldSlots {
            w1: S::from_odd(w1_odd.clone()),
            v1: S::from_odd(v1_odd.clone()),
            w0: S::from_even(w0p),
            v0: S::from_even(v0p),
        },
        consts,
        CaseTag::Case4,
    )
}

// ---- Case 5 ---------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

/// C01 != 0 with v1- = ±w1- != 0; single equation for w0+ ∓ v0+ and
/// C11 = ∓C10.
pub fn solve_case5(
    w1_odd: &Rf,
    sign: Sign,
    v0_even: &Rf,
    consts: &SusyConstants,
) -> Result<SusyModel> {
    require_parity(w1_odd, "w1_odd", false)?;
    require_parity(v0_even, "v0_even", true)?;
    if consts.c01.is_zero() {
        return Err(Error::ConstraintViolation("Case 5 requires C01 != 0".into()));
    }
    if w1_odd.is_zero() {
        return Err(Error::ConstraintViolation(
            "Case 5 requires v1- = ±w1- != 0".into(),
        ));
    }
    let s = match sign {
        Sign::Plus => Rational::from_int(1),
        Sign::Minus => Rational::from_int(-1),
    };
    let sq = |f: &Rf| f.mul(f);
    let w1m1 = dr(w1_odd);
    let w1m2 = dr(&w1m1);
    // 4 (w1-)^2 (w0+ ∓ v0+) = -2 w1- (w1-)'' + ((w1-)')^2
    //                        + 4 (w1-)^2 (w1-)' + 4 (w1-)^4 + 8 C10
    let rhs = w1_odd
        .mul(&w1m2)
        .scale(&Rational::from_int(-2))
        .add(&sq(&w1m1))
        .add(&sq(w1_odd).mul(&w1m1).scale(&Rational::from_int(4)))
        .add(&sq(&sq(w1_odd)).scale(&Rational::from_int(4)))
        .add(&Rf::from_rational(&(&Rational::from_int(8) * &consts.c10)));
    let w0p = v0_even
        .scale(&s)
        .add(&rhs.div(&sq(w1_odd).scale(&Rational::from_int(4)))?);

    let mut consts = consts.clone();
    consts.c11 = -&(&s * &consts.c10);

    assemble_two_fold(
        TwoFoldSlots {
            w1: S::from_odd(w1_odd.clone()),
            v1: S::from_odd(w1_odd.scale(&s)),
            w0: S::from_even(w0p),
            v0: S::from_even(v0_even.clone()),
        },
        &consts,
        CaseTag::Case5,
    )
}

// ---- two-component representation ------------------------------------------

/// A 2x2 matrix of scalar differential operators (no reflection) acting on
/// the parity components (psi+, psi-).
pub type Mat2Op = [[RefOp<Rf>; 2]; 2];

pub struct TwoComponentRep {
    pub h_plus: Mat2Op,
    pub h_minus: Mat2Op,
    pub p_minus: Mat2Op,
}

fn mat_zero() -> Mat2Op {
    [
        [RefOp::zero(), RefOp::zero()],
        [RefOp::zero(), RefOp::zero()],
    ]
}

fn mat_add(a: &Mat2Op, b: &Mat2Op) -> Mat2Op {
    let mut out = mat_zero();
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][j].add(&b[i][j]);
        }
    }
    out
}

fn mat_mul(a: &Mat2Op, b: &Mat2Op) -> Result<Mat2Op> {
    let mut out = mat_zero();
    for i in 0..2 {
        for j in 0..2 {
            for (l, row) in b.iter().enumerate() {
                out[i][j] = out[i][j].add(&a[i][l].compose(&row[j])?);
            }
        }
    }
    Ok(out)
}

/// Matrix form of a single reflection operator: even multipliers are
/// diagonal, odd multipliers and d/dq are off-diagonal, P is diag(1,-1).
pub fn rep_of(op: &RefOp<S>) -> Result<Mat2Op> {
    let mut out = mat_zero();
    for ((n, e), c) in op.terms() {
        let mc: Mat2Op = [
            [
                RefOp::mul_by(c.even.clone()),
                RefOp::mul_by(c.odd.clone()),
            ],
            [
                RefOp::mul_by(c.odd.clone()),
                RefOp::mul_by(c.even.clone()),
            ],
        ];
        let md: Mat2Op = [
            [RefOp::zero(), RefOp::d(1)],
            [RefOp::d(1), RefOp::zero()],
        ];
        let mut term = mc;
        for _ in 0..*n {
            term = mat_mul(&term, &md)?;
        }
        if *e == 1 {
            let mp: Mat2Op = [
                [RefOp::identity(), RefOp::zero()],
                [RefOp::zero(), RefOp::identity().neg()],
            ];
            term = mat_mul(&term, &mp)?;
        }
        out = mat_add(&out, &term);
    }
    Ok(out)
}

pub fn two_component_rep(model: &SusyModel) -> Result<TwoComponentRep> {
    Ok(TwoComponentRep {
        h_plus: rep_of(&model.h_plus)?,
        h_minus: rep_of(&model.h_minus)?,
        p_minus: rep_of(&model.p_minus)?,
    })
}

/// Apply a scalar differential operator (pflag must be 0 throughout) to a
/// plain function.
pub fn apply_scalar(op: &RefOp<Rf>, f: &Rf) -> Rf {
    let mut out = Rf::zero();
    for ((n, e), c) in op.terms() {
        assert_eq!(*e, 0, "scalar operator must be reflection-free");
        let mut cur = f.clone();
        for _ in 0..*n {
            cur = cur.derive();
        }
        out = out.add(&c.mul(&cur));
    }
    out
}

/// Matrix action on parity components.
pub fn rep_apply(mat: &Mat2Op, psi: &SplitFunction) -> SplitFunction {
    SplitFunction::new(
        apply_scalar(&mat[0][0], &psi.even).add(&apply_scalar(&mat[0][1], &psi.odd)),
        apply_scalar(&mat[1][0], &psi.even).add(&apply_scalar(&mat[1][1], &psi.odd)),
    )
}
