//! Free differential ring on formal function symbols with a parity
//! involution `sigma`.
//!
//! Generators are `D^n g` and `D^n sigma(g)` for declared symbols `g`.
//! The involution is pushed onto base symbols with the rewrite
//! `sigma(D^n x) = (-1)^n D^n sigma(x)`, so `sigma` never applies to a
//! derivative generator. Symbols may be declared with a fixed parity
//! (`sigma g = +-g`), fully free, or constant (`D g = 0`).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::rational::Rational;

pub const DEFAULT_MAX_DERIV: u32 = 5;

/// Bound on the derivative order of any generator, configurable through
/// the `REFSUSY_MAX_DERIV` environment variable (read once per process).
pub fn max_deriv() -> u32 {
    static BOUND: OnceLock<u32> = OnceLock::new();
    *BOUND.get_or_init(|| {
        std::env::var("REFSUSY_MAX_DERIV")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_MAX_DERIV)
    })
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SymbolParity {
    /// sigma g = g
    Even,
    /// sigma g = -g
    Odd,
    /// sigma g is an independent generator
    Free,
    /// Even and annihilated by D (a formal constant)
    Constant,
}

/// One generator `D^order( sigma^reflected (name) )`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Generator {
    pub name: &'static str,
    pub parity: SymbolParity,
    pub order: u32,
    /// Only ever true for `Free` symbols.
    pub reflected: bool,
}

/// A power product of generators, sorted, exponents >= 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(Generator, u32)>);

impl Monomial {
    fn unit() -> Self {
        Monomial(Vec::new())
    }

    fn single(g: Generator) -> Self {
        Monomial(vec![(g, 1)])
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<Generator, u32> = BTreeMap::new();
        for &(g, e) in self.0.iter().chain(other.0.iter()) {
            *map.entry(g).or_insert(0) += e;
        }
        Monomial(map.into_iter().collect())
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct FreeDiffElement {
    /// Monomial -> coefficient; no zero coefficients stored.
    terms: BTreeMap<Monomial, Rational>,
}

impl FreeDiffElement {
    pub fn symbol(name: &'static str, parity: SymbolParity) -> Self {
        let g = Generator {
            name,
            parity,
            order: 0,
            reflected: false,
        };
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::single(g), Rational::one());
        FreeDiffElement { terms }
    }

    fn insert(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

impl Coeff for FreeDiffElement {
    fn zero() -> Self {
        FreeDiffElement::default()
    }

    fn one() -> Self {
        Self::from_rational(&Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = FreeDiffElement::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    fn neg(&self) -> Self {
        FreeDiffElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn derive(&self) -> Result<Self> {
        let bound = max_deriv();
        let mut out = FreeDiffElement::default();
        for (m, c) in &self.terms {
            // Leibniz across the factors of m.
            for (i, &(g, e)) in m.0.iter().enumerate() {
                if g.parity == SymbolParity::Constant {
                    continue;
                }
                if g.order + 1 > bound {
                    return Err(Error::DerivativeBoundExceeded {
                        requested: g.order + 1,
                        bound,
                    });
                }
                let dg = Generator {
                    order: g.order + 1,
                    ..g
                };
                let mut factors: Vec<(Generator, u32)> = Vec::with_capacity(m.0.len() + 1);
                for (j, &(h, eh)) in m.0.iter().enumerate() {
                    if j == i {
                        if eh > 1 {
                            factors.push((h, eh - 1));
                        }
                    } else {
                        factors.push((h, eh));
                    }
                }
                let base = Monomial(factors);
                let term = base.mul(&Monomial::single(dg));
                out.insert(term, c * &Rational::from_int(e as i64));
            }
        }
        Ok(out)
    }

    fn reflect(&self) -> Self {
        let mut out = FreeDiffElement::default();
        for (m, c) in &self.terms {
            let mut sign_flips: u32 = 0;
            let mut factors: Vec<(Generator, u32)> = Vec::with_capacity(m.0.len());
            for &(g, e) in &m.0 {
                // sigma(D^n x) = (-1)^n D^n sigma(x)
                let (flip_per_power, new_g) = match g.parity {
                    SymbolParity::Even => (g.order % 2, g),
                    SymbolParity::Odd => ((g.order + 1) % 2, g),
                    SymbolParity::Constant => (0, g),
                    SymbolParity::Free => (
                        g.order % 2,
                        Generator {
                            reflected: !g.reflected,
                            ..g
                        },
                    ),
                };
                sign_flips += flip_per_power * e;
                factors.push((new_g, e));
            }
            factors.sort();
            let c = if sign_flips % 2 == 1 { -c } else { c.clone() };
            out.insert(Monomial(factors), c);
        }
        out
    }

    fn from_rational(r: &Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Monomial::unit(), r.clone());
        }
        FreeDiffElement { terms }
    }
}

impl fmt::Debug for FreeDiffElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for &(g, e) in &m.0 {
                write!(f, "*")?;
                if g.reflected {
                    write!(f, "s[")?;
                }
                write!(f, "{}", g.name)?;
                for _ in 0..g.order {
                    write!(f, "'")?;
                }
                if g.reflected {
                    write!(f, "]")?;
                }
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> FreeDiffElement {
        FreeDiffElement::symbol("w", SymbolParity::Free)
    }

    fn v() -> FreeDiffElement {
        FreeDiffElement::symbol("v", SymbolParity::Free)
    }

    #[test]
    fn leibniz() {
        let lhs = w().mul(&v()).derive().unwrap();
        let rhs = w()
            .derive()
            .unwrap()
            .mul(&v())
            .add(&w().mul(&v().derive().unwrap()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn derive_anticommutes_with_reflect() {
        for f in [
            w(),
            w().mul(&v()).add(&w().reflect()),
            FreeDiffElement::symbol("o", SymbolParity::Odd).mul(&w()),
        ] {
            let a = f.reflect().derive().unwrap();
            let b = f.derive().unwrap().reflect().neg();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn reflect_is_involution() {
        let f = w().mul(&v().derive().unwrap()).add(&w().reflect().mul(&w()));
        assert_eq!(f.reflect().reflect(), f);
    }

    #[test]
    fn parity_symbols_and_constants() {
        let e = FreeDiffElement::symbol("e", SymbolParity::Even);
        let o = FreeDiffElement::symbol("o", SymbolParity::Odd);
        let c = FreeDiffElement::symbol("c", SymbolParity::Constant);
        assert_eq!(e.reflect(), e);
        assert_eq!(o.reflect(), o.neg());
        // derivative of even is odd and vice versa
        assert_eq!(e.derive().unwrap().reflect(), e.derive().unwrap().neg());
        assert_eq!(o.derive().unwrap().reflect(), o.derive().unwrap());
        assert!(c.derive().unwrap().is_zero());
        assert_eq!(c.reflect(), c);
    }

    #[test]
    fn bound_enforced() {
        let mut f = w();
        for _ in 0..max_deriv() {
            f = f.derive().unwrap();
        }
        assert!(matches!(
            f.derive(),
            Err(Error::DerivativeBoundExceeded { .. })
        ));
    }
}
