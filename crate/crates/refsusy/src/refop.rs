//! Normal-ordered linear differential operators with reflection:
//! finite sums of `c(q) * d^n/dq^n * P^eps` with the reflection `P`
//! rightmost. Normal ordering uses the rewrites
//! `d∘f = f d + f'`, `P∘f = sigma(f) P`, `P∘d = -d P`, `P^2 = 1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::coeff::Coeff;
use crate::error::Result;
use crate::ratfun::RationalFunction;
use crate::rational::Rational;
use crate::split::SplitFunction;

/// Key = (derivative order, reflection flag).
pub type Slot = (u32, u8);

#[derive(Clone, PartialEq)]
pub struct RefOp<C: Coeff> {
    terms: BTreeMap<Slot, C>,
}

impl<C: Coeff> Default for RefOp<C> {
    fn default() -> Self {
        RefOp {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coeff> RefOp<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::term(0, 0, C::one())
    }

    /// The reflection operator P.
    pub fn p() -> Self {
        Self::term(0, 1, C::one())
    }

    /// d^n/dq^n.
    pub fn d(n: u32) -> Self {
        Self::term(n, 0, C::one())
    }

    /// Multiplication by a coefficient.
    pub fn mul_by(c: C) -> Self {
        Self::term(0, 0, c)
    }

    pub fn term(dorder: u32, pflag: u8, coeff: C) -> Self {
        let mut op = Self::zero();
        op.insert((dorder, pflag & 1), coeff);
        op
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Slot, C)>) -> Self {
        let mut op = Self::zero();
        for ((n, e), c) in terms {
            op.insert((n, e & 1), c);
        }
        op
    }

    fn insert(&mut self, slot: Slot, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(slot) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Slot, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, dorder: u32, pflag: u8) -> C {
        self.terms
            .get(&(dorder, pflag))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (slot, c) in &other.terms {
            out.insert(*slot, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RefOp {
            terms: self.terms.iter().map(|(s, c)| (*s, c.neg())).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero();
        for (slot, c) in &self.terms {
            out.insert(*slot, c.scale(r));
        }
        out
    }

    /// Normal-ordered composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for ((n1, e1), c1) in &self.terms {
            for ((n2, e2), c2) in &other.terms {
                // Push P across the coefficient and the derivatives:
                // P c2 d^n2 = sigma(c2) (-1)^n2 d^n2 P.
                let mut c = if *e1 == 1 { c2.reflect() } else { c2.clone() };
                let negate = *e1 == 1 && n2 % 2 == 1;
                let e = e1 ^ e2;
                // d^n1 ∘ c = sum_j C(n1,j) c^(j) d^(n1-j)
                let mut binom = Rational::one();
                for j in 0..=*n1 {
                    let mut t = c1.mul(&c).scale(&binom);
                    if negate {
                        t = t.neg();
                    }
                    out.insert((n1 + n2 - j, e), t);
                    if j < *n1 {
                        c = c.derive()?;
                        // C(n1, j+1) = C(n1, j) * (n1-j)/(j+1)
                        binom = &(&binom * &Rational::from_int((n1 - j) as i64))
                            / &Rational::from_int((j + 1) as i64);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Formal transpose: `d^T = -d`, `P^T = P`, `f^T = f`,
    /// `(AB)^T = B^T A^T`.
    pub fn transpose(&self) -> Result<Self> {
        let mut out = Self::zero();
        for ((n, e), c) in &self.terms {
            // (c d^n P^e)^T = P^e (-d)^n c
            let sign = if n % 2 == 1 {
                Rational::from_int(-1)
            } else {
                Rational::one()
            };
            let t = Self::term(0, *e, C::one())
                .compose(&Self::d(*n).scale(&sign))?
                .compose(&Self::mul_by(c.clone()))?;
            out = out.add(&t);
        }
        Ok(out)
    }

    /// `self` composed with itself `k` times (`k = 0` gives the identity).
    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::identity();
        for _ in 0..k {
            out = out.compose(self)?;
        }
        Ok(out)
    }
}

impl RefOp<SplitFunction> {
    /// Apply to a function given in parity components.
    pub fn apply_split(&self, psi: &SplitFunction) -> SplitFunction {
        let mut out = SplitFunction::zero();
        for ((n, e), c) in &self.terms {
            let mut cur = psi.clone();
            if *e == 1 {
                cur = cur.reflect();
            }
            for _ in 0..*n {
                cur = cur.derive().expect("rational ring derivation is total");
            }
            out = out.add(&c.mul(&cur));
        }
        out
    }
}

impl RefOp<RationalFunction> {
    /// View a plain rational-function operator in the parity-split ring.
    pub fn split_coeffs(&self) -> RefOp<SplitFunction> {
        RefOp::from_terms(
            self.terms
                .iter()
                .map(|(slot, c)| (*slot, SplitFunction::from_total(c))),
        )
    }
}

impl RefOp<SplitFunction> {
    /// Collapse parity-split coefficients back to plain functions.
    pub fn total_coeffs(&self) -> RefOp<RationalFunction> {
        RefOp::from_terms(self.terms.iter().map(|(slot, c)| (*slot, c.total())))
    }
}

impl<C: Coeff> fmt::Debug for RefOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((n, e), c) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            write!(f, "[{c:?}]")?;
            if *n > 0 {
                write!(f, "*d^{n}")?;
            }
            if *e == 1 {
                write!(f, "*P")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermRepr<'a, C> {
    dorder: u32,
    pflag: u8,
    coeff: &'a C,
}

impl<C: Coeff + Serialize> Serialize for RefOp<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for ((dorder, pflag), coeff) in &self.terms {
            seq.serialize_element(&TermRepr {
                dorder: *dorder,
                pflag: *pflag,
                coeff,
            })?;
        }
        seq.end()
    }
}
