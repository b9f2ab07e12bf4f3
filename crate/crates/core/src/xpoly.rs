//! Dense polynomials in the series variable `x` over `Z[a, b]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Var, ZERO};

/// `coeffs[i]` is the coefficient of `x^i`. Trailing zeros are trimmed, so the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct XPoly {
    coeffs: Vec<Polynomial>,
}

impl XPoly {
    pub fn new(mut coeffs: Vec<Polynomial>) -> Self {
        while coeffs.last().is_some_and(Polynomial::is_zero) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn zero() -> Self {
        XPoly::default()
    }

    pub fn one() -> Self {
        XPoly::constant(Polynomial::one())
    }

    pub fn constant(c: Polynomial) -> Self {
        XPoly::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Polynomial, k: usize) -> Self {
        let mut coeffs = vec![Polynomial::zero(); k + 1];
        coeffs[k] = c;
        XPoly::new(coeffs)
    }

    /// Builds from `(power, coefficient)` pairs; repeated powers accumulate.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, Polynomial)>,
    {
        let mut coeffs: Vec<Polynomial> = Vec::new();
        for (k, c) in terms {
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Polynomial::zero());
            }
            coeffs[k] += &c;
        }
        XPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest power with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> &Polynomial {
        self.coeffs.get(k).unwrap_or(&ZERO)
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &Polynomial {
        self.coeff(0)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> XPoly {
        if self.is_zero() {
            return XPoly::zero();
        }
        let mut coeffs = vec![Polynomial::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        XPoly { coeffs }
    }

    /// Keeps the terms of degree `< len`.
    pub fn truncate(&self, len: usize) -> XPoly {
        XPoly::new(self.coeffs.iter().take(len).cloned().collect())
    }

    pub fn scale(&self, c: &Polynomial) -> XPoly {
        XPoly::new(self.coeffs.iter().map(|p| p * c).collect())
    }

    /// `x^d * self(1/x)`; requires `d >= degree`.
    pub fn reversal(&self, d: usize) -> XPoly {
        assert!(
            self.degree().is_none_or(|deg| deg <= d),
            "reversal degree {d} below polynomial degree"
        );
        XPoly::new((0..=d).map(|i| self.coeff(d - i).clone()).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&Polynomial) -> Polynomial) -> XPoly {
        XPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn specialize(&self, var: Var, value: &BigInt) -> XPoly {
        self.map_coeffs(|c| c.specialize(var, value))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Polynomial::is_one)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // Coefficients with only negative terms pull the sign out front.
            let (neg, body) = if c.terms().all(|(_, v)| v.is_negative()) {
                (true, -c)
            } else {
                (false, c.clone())
            };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let xpart = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let is_const = body.as_constant();
            match (k, is_const) {
                (0, Some(_)) => write!(f, "{body}")?,
                (0, None) => write!(f, "({body})")?,
                (_, Some(v)) if v.is_one() => f.write_str(&xpart)?,
                (_, Some(v)) => write!(f, "{v}*{xpart}")?,
                (_, None) => write!(f, "({body})*{xpart}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XPoly({self})")
    }
}

impl FromStr for XPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_xpoly(s)
    }
}

impl Add<&XPoly> for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&XPoly> for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&XPoly> for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut out = vec![Polynomial::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in rhs.coeffs.iter().enumerate() {
                if !q.is_zero() {
                    out[i + j] += &(p * q);
                }
            }
        }
        XPoly::new(out)
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($Op:ident, $op:ident) => {
        impl $Op<XPoly> for XPoly {
            type Output = XPoly;
            fn $op(self, rhs: XPoly) -> XPoly {
                (&self).$op(&rhs)
            }
        }
        impl $Op<&XPoly> for XPoly {
            type Output = XPoly;
            fn $op(self, rhs: &XPoly) -> XPoly {
                (&self).$op(rhs)
            }
        }
        impl $Op<XPoly> for &XPoly {
            type Output = XPoly;
            fn $op(self, rhs: XPoly) -> XPoly {
                self.$op(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        -&self
    }
}
