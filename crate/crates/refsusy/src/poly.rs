//! Dense univariate polynomials in `q` over exact rationals,
//! lowest-degree coefficient first.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    /// `coeffs[k]` multiplies `q^k`; the last entry is nonzero unless the
    /// polynomial is zero (empty vector).
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// The variable `q`.
    pub fn var() -> Self {
        Polynomial::new(vec![Rational::zero(), Rational::one()])
    }

    /// Convenience: build from small integer coefficients, lowest first.
    pub fn from_ints(cs: &[i64]) -> Self {
        Polynomial::new(cs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Polynomial::new(coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    /// Panics if `divisor` is zero (callers guard).
    pub fn divrem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quo = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let f = &rem.coeff(rd) / &lead;
            quo[rd - dd] = f.clone();
            // rem -= f * q^(rd-dd) * divisor
            let mut shifted = vec![Rational::zero(); rd - dd];
            shifted.extend(divisor.coeffs.iter().map(|c| c * &f));
            rem = rem.sub(&Polynomial::new(shifted));
        }
        (Polynomial::new(quo), rem)
    }

    /// Monic gcd via the Euclidean algorithm; `gcd(0,0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some(l) => {
                let inv = l.recip().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn derive(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Rational::from_int(k as i64))
            .collect();
        Polynomial::new(coeffs)
    }

    /// Substitution `q -> -q`.
    pub fn reflect(&self) -> Polynomial {
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * q + c.to_f64())
    }

    pub fn eval_rational(&self, q: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * q) + c)
    }

    /// Exact square root by coefficient matching, if one exists.
    /// Tries both signs of the leading coefficient's root.
    pub fn sqrt_exact(&self) -> Option<Polynomial> {
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        let deg = self.degree().unwrap();
        if deg % 2 != 0 {
            return None;
        }
        let hd = deg / 2;
        let lead_root = self.leading().unwrap().sqrt_exact()?;
        // Determine root coefficients from the top down:
        // s_hd = lead_root; for k < hd,
        //   c_{hd+k} = 2 s_hd s_k + sum_{i=k+1}^{hd-1} s_i s_{hd+k-i}.
        let mut s = vec![Rational::zero(); hd + 1];
        s[hd] = lead_root;
        let two_lead = &Rational::from_int(2) * &s[hd];
        for k in (0..hd).rev() {
            let mut acc = self.coeff(hd + k);
            // pairs s_i * s_{hd+k-i} with k < i < hd (both factors already known)
            for i in (k + 1)..hd {
                acc = &acc - &(&s[i] * &s[hd + k - i]);
            }
            s[k] = &acc / &two_lead;
        }
        let root = Polynomial::new(s);
        if root.mul(&root) == *self {
            Some(root)
        } else {
            None
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let show_coeff = k == 0 || mag != Rational::one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if k >= 1 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "q")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}
