//! Exact arithmetic in `Z[a, b]`.
//!
//! A [`Polynomial`] is a sparse map from exponent pairs to arbitrary-precision
//! integer coefficients. Zero coefficients are never stored, so structural
//! equality is ring equality.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// One of the two formal parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    A,
    B,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::A => 'a',
            Var::B => 'b',
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// The monomial `a^a * b^b`.
///
/// Ordered by total degree, then by the exponent of `a` descending, which is
/// the canonical rendering order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0 };

    pub fn new(a: u32, b: u32) -> Self {
        Monomial { a, b }
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b
    }

    pub fn exponent(&self, var: Var) -> u32 {
        match var {
            Var::A => self.a,
            Var::B => self.b,
        }
    }

    fn mul(self, other: Monomial) -> Monomial {
        Monomial {
            a: self.a + other.a,
            b: self.b + other.b,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.a.cmp(&self.a))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (sym, e) in [('a', self.a), ('b', self.b)] {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A polynomial in `a` and `b` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

pub(crate) static ZERO: Polynomial = Polynomial { terms: BTreeMap::new() };

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Polynomial::term(c, Monomial::ONE)
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::A => Polynomial::term(1, Monomial::new(1, 0)),
            Var::B => Polynomial::term(1, Monomial::new(0, 1)),
        }
    }

    /// `c * mono`, or zero when `c == 0`.
    pub fn term(c: impl Into<BigInt>, mono: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Polynomial { terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(Monomial::ONE)
    }

    pub fn coeff(&self, mono: Monomial) -> BigInt {
        self.terms.get(&mono).cloned().unwrap_or_default()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Degree in a single variable, `None` for the zero polynomial.
    pub fn degree_in(&self, var: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    /// `Some(c)` if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, mono: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Power with a signed exponent; negative exponents are a domain error.
    pub fn try_pow(&self, exp: i64) -> Result<Polynomial> {
        let e = u32::try_from(exp)
            .map_err(|_| Error::domain(format!("exponent {exp} is not a nonnegative 32-bit integer")))?;
        Ok(self.pow(e))
    }

    /// Exact integer value at `a = a_val`, `b = b_val`.
    pub fn eval(&self, a_val: &BigInt, b_val: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| {
                c * num_traits::pow(a_val.clone(), m.a as usize) * num_traits::pow(b_val.clone(), m.b as usize)
            })
            .sum()
    }

    pub fn eval_i64(&self, a_val: i64, b_val: i64) -> BigInt {
        self.eval(&BigInt::from(a_val), &BigInt::from(b_val))
    }

    /// Substitutes an integer for one variable, leaving the other symbolic.
    pub fn specialize(&self, var: Var, value: &BigInt) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let factor = num_traits::pow(value.clone(), e as usize);
            let rest = match var {
                Var::A => Monomial::new(0, m.b),
                Var::B => Monomial::new(m.a, 0),
            };
            out.add_term(rest, c * factor);
        }
        out
    }

    /// Swaps the roles of `a` and `b`.
    pub fn swap_vars(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.b, m.a), c.clone()))
                .collect(),
        }
    }

    /// Renames the variable `a` to `var`; the input must not mention `b`.
    pub fn in_var(&self, var: Var) -> Polynomial {
        match var {
            Var::A => self.clone(),
            Var::B => self.swap_vars(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_polynomial(s)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(c)
    }
}

impl From<BigInt> for Polynomial {
    fn from(c: BigInt) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(*m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned_binop {
    ($Op:ident, $op:ident) => {
        impl $Op<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $op(self, rhs: Polynomial) -> Polynomial {
                (&self).$op(&rhs)
            }
        }
        impl $Op<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $op(self, rhs: &Polynomial) -> Polynomial {
                (&self).$op(rhs)
            }
        }
        impl $Op<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $op(self, rhs: Polynomial) -> Polynomial {
                self.$op(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        let mut acc = Polynomial::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl<'a> std::iter::Sum<&'a Polynomial> for Polynomial {
    fn sum<I: Iterator<Item = &'a Polynomial>>(iter: I) -> Self {
        let mut acc = Polynomial::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |acc, p| &acc * &p)
    }
}

/// Shorthand for tests and formula builders: parses a literal, panicking on bad input.
#[macro_export]
macro_rules! poly {
    ($s:expr) => {
        $s.parse::<$crate::Polynomial>().expect("valid polynomial literal")
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn add_doubles() {
        let a = Polynomial::var(Var::A);
        assert_eq!(&a + &a, p("2*a"));
    }

    #[test]
    fn mul_expands() {
        // (1 + a^2)(1 + b^2) expanded term by term.
        let expected = Polynomial::from_terms([
            (Monomial::new(0, 0), 1),
            (Monomial::new(2, 0), 1),
            (Monomial::new(0, 2), 1),
            (Monomial::new(2, 2), 1),
        ]);
        assert_eq!(p("1 + a^2") * p("1 + b^2"), expected);
    }

    #[test]
    fn pow_zero_is_one() {
        assert_eq!(p("a + b").pow(0), Polynomial::one());
        assert_eq!(p("0").pow(0), Polynomial::one());
    }

    #[test]
    fn negative_pow_is_domain_error() {
        assert!(matches!(p("a").try_pow(-1), Err(Error::Domain(_))));
        assert_eq!(p("a + 1").try_pow(2).unwrap(), p("a^2 + 2*a + 1"));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("1 + 3*a^2 + a^4").eval_i64(1, 0), BigInt::from(5));
        assert_eq!(Polynomial::zero().eval_i64(7, -3), BigInt::zero());
        assert_eq!(p("a*b").eval_i64(2, 3), BigInt::from(6));
    }

    #[test]
    fn render_is_canonical() {
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(p("a^4 + 1 + 3*a^2").to_string(), "1 + 3*a^2 + a^4");
        assert_eq!(p("- b^2 + 2 a b").to_string(), "2*a*b - b^2");
        assert_eq!(p("-a").to_string(), "-a");
        assert_eq!(p("b + a").to_string(), "a + b");
    }

    #[test]
    fn parse_terms() {
        let q = p("2*a*b - b^2");
        assert_eq!(q.coeff(Monomial::new(1, 1)), BigInt::from(2));
        assert_eq!(q.coeff(Monomial::new(0, 2)), BigInt::from(-1));
        assert_eq!(q.len(), 2);
        let f4 = p("1 + 3*a^2 + a^4");
        assert_eq!(
            f4,
            Polynomial::from_terms([
                (Monomial::new(0, 0), 1),
                (Monomial::new(2, 0), 3),
                (Monomial::new(4, 0), 1)
            ])
        );
    }

    #[test]
    fn cancellation_removes_terms() {
        let q = p("a + b") - p("a");
        assert_eq!(q, p("b"));
        assert_eq!(q.len(), 1);
        assert!((p("a") - p("a")).is_zero());
    }

    #[test]
    fn coefficients_beyond_u64() {
        let big = p("2").pow(70) * p("3").pow(50);
        let expected = num_traits::pow(BigInt::from(2), 70) * num_traits::pow(BigInt::from(3), 50);
        assert_eq!(big.constant_term(), expected);
        assert_eq!(big.to_string().parse::<Polynomial>().unwrap(), big);
    }

    #[test]
    fn specialize_partial() {
        let q = p("a^2*b + 3*b^2 + a");
        assert_eq!(q.specialize(Var::B, &BigInt::from(0)), p("a"));
        assert_eq!(q.specialize(Var::A, &BigInt::from(2)), p("4*b + 3*b^2 + 2"));
    }
}
