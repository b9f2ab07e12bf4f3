//! Text grammar shared by [`Polynomial`] and [`XPoly`].
//!
//! ```text
//! sum    := [sign] term { sign term }
//! term   := factor { ['*'] factor }
//! factor := (integer | 'a' | 'b' | 'x' | '(' sum ')') ['^' integer]
//! ```
//!
//! `x` and parentheses are accepted only in series-variable mode; the body of
//! a parenthesised group is a plain polynomial in `a` and `b`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Var};
use crate::xpoly::XPoly;

pub(crate) fn parse_polynomial(src: &str) -> Result<Polynomial> {
    let mut p = Parser::new(src, false);
    let coeffs = p.parse_all()?;
    Ok(coeffs.into_iter().next().unwrap_or_default())
}

pub(crate) fn parse_xpoly(src: &str) -> Result<XPoly> {
    let mut p = Parser::new(src, true);
    Ok(XPoly::new(p.parse_all()?))
}

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
    series_mode: bool,
    depth: usize,
}

enum Factor {
    Coeff(Polynomial),
    X(usize),
}

impl<'s> Parser<'s> {
    fn new(src: &'s str, series_mode: bool) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            series_mode,
            depth: 0,
        }
    }

    fn parse_all(&mut self) -> Result<Vec<Polynomial>> {
        let out = self.sum()?;
        self.skip_ws();
        if let Some(c) = self.peek() {
            return Err(Error::parse(self.pos, format!("unexpected character '{}'", c as char)));
        }
        Ok(out)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn sum(&mut self) -> Result<Vec<Polynomial>> {
        let mut acc: Vec<Polynomial> = Vec::new();
        self.skip_ws();
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (coeff, xexp) = self.term()?;
            if acc.len() <= xexp {
                acc.resize(xexp + 1, Polynomial::zero());
            }
            if negate {
                acc[xexp] -= &coeff;
            } else {
                acc[xexp] += &coeff;
            }
            self.skip_ws();
            negate = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<(Polynomial, usize)> {
        let mut coeff = Polynomial::one();
        let mut xexp = 0usize;
        let mut first = true;
        loop {
            self.skip_ws();
            let explicit = if !first && self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                true
            } else {
                false
            };
            if !first && !explicit && !self.starts_factor() {
                break;
            }
            match self.factor()? {
                Factor::Coeff(c) => coeff = &coeff * &c,
                Factor::X(e) => xexp += e,
            }
            first = false;
        }
        Ok((coeff, xexp))
    }

    fn starts_factor(&self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => true,
            Some(b'a' | b'b') => true,
            Some(b'x') | Some(b'(') => self.series_mode,
            _ => false,
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        let start = self.pos;
        let base = match self.peek() {
            Some(c) if c.is_ascii_digit() => Factor::Coeff(Polynomial::constant(self.integer()?)),
            Some(b'a') => {
                self.pos += 1;
                Factor::Coeff(Polynomial::var(Var::A))
            }
            Some(b'b') => {
                self.pos += 1;
                Factor::Coeff(Polynomial::var(Var::B))
            }
            Some(b'x') if self.series_mode && self.depth == 0 => {
                self.pos += 1;
                Factor::X(1)
            }
            Some(b'(') if self.series_mode && self.depth == 0 => {
                self.pos += 1;
                self.depth += 1;
                let inner = self.sum()?;
                self.depth -= 1;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Factor::Coeff(inner.into_iter().next().unwrap_or_default())
            }
            Some(c) => {
                return Err(Error::parse(start, format!("unexpected character '{}'", c as char)));
            }
            None => return Err(Error::parse(start, "unexpected end of input")),
        };
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let epos = self.pos;
        let e = self.integer()?;
        let e: u32 = e.try_into().map_err(|_| Error::parse(epos, "exponent out of range"))?;
        Ok(match base {
            Factor::Coeff(c) => Factor::Coeff(c.pow(e)),
            Factor::X(k) => Factor::X(k * e as usize),
        })
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::parse(start, "malformed integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_multiplication_and_whitespace() {
        assert_eq!(
            parse_polynomial(" 2 a  b ").unwrap(),
            parse_polynomial("2*a*b").unwrap()
        );
        assert_eq!(parse_polynomial("a^2b").unwrap(), parse_polynomial("a^2*b").unwrap());
    }

    #[test]
    fn errors_carry_position() {
        assert_eq!(
            parse_polynomial("1 + x").unwrap_err(),
            Error::Parse {
                pos: 4,
                message: "unexpected character 'x'".into()
            }
        );
        assert!(matches!(parse_polynomial(""), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_polynomial("a +"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_polynomial("(a)"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_polynomial("a^"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_polynomial("a * * b"), Err(Error::Parse { pos: 4, .. })));
    }

    #[test]
    fn xpoly_terms() {
        let x = parse_xpoly("1 - (a*b)*x - (2 + a^2 + b^2)*x^2 - (a*b)*x^3 + x^4").unwrap();
        assert_eq!(x.degree(), Some(4));
        assert_eq!(x.coeff(2), &parse_polynomial("-2 - a^2 - b^2").unwrap());
        assert_eq!(x.coeff(3), &parse_polynomial("-a*b").unwrap());
        let y = parse_xpoly("1 - (a)*x - x^2").unwrap();
        assert_eq!(y.coeff(1), &parse_polynomial("-a").unwrap());
        assert_eq!(
            parse_xpoly("a x^2 + b x").unwrap(),
            parse_xpoly("(a)*x^2 + (b)*x").unwrap()
        );
    }

    #[test]
    fn nested_parentheses_rejected() {
        assert!(parse_xpoly("((a))*x").is_err());
        assert!(parse_xpoly("(x)").is_err());
        assert!(parse_xpoly("(a").is_err());
    }
}
