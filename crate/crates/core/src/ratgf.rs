//! Rational generating functions and the general Hadamard product.
//!
//! The Hadamard product of two rational series is rational. Its denominator
//! is obtained from the characteristic polynomial of the Kronecker product of
//! the two companion matrices, computed without division so that everything
//! stays in `Z[a, b]`. The numerator is read off from the first few terms of
//! the coefficientwise product series.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Var};
use crate::series::{expand_rational, hadamard_series, SeriesTrunc};
use crate::xpoly::XPoly;

/// `num / den` with `den(0) == 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalGF {
    num: XPoly,
    den: XPoly,
}

impl RationalGF {
    /// Normalizes a denominator with constant term `-1` by negating both
    /// parts; any other constant term is a domain error.
    pub fn new(num: XPoly, den: XPoly) -> Result<Self> {
        let c = den.constant_term();
        if c.is_one() {
            Ok(RationalGF { num, den })
        } else if (-c).is_one() {
            Ok(RationalGF { num: -num, den: -den })
        } else {
            Err(Error::domain(format!(
                "denominator must have constant term 1, found {c}"
            )))
        }
    }

    /// Parses numerator and denominator text.
    pub fn parse(num: &str, den: &str) -> Result<Self> {
        RationalGF::new(num.parse()?, den.parse()?)
    }

    pub fn polynomial(p: XPoly) -> Self {
        RationalGF {
            num: p,
            den: XPoly::one(),
        }
    }

    pub fn num(&self) -> &XPoly {
        &self.num
    }

    pub fn den(&self) -> &XPoly {
        &self.den
    }

    pub fn expand(&self, order: usize) -> SeriesTrunc {
        expand_rational(&self.num, &self.den, order).expect("denominator is unit-normalized")
    }

    /// Cross-multiplicative equality; no common factors are cancelled.
    pub fn equals(&self, other: &RationalGF) -> bool {
        rgf_equal(self, other)
    }

    pub fn mul(&self, other: &RationalGF) -> RationalGF {
        RationalGF {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn add(&self, other: &RationalGF) -> RationalGF {
        RationalGF {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    /// `1 / (1 - self)`, the generating function of sequences of blocks.
    /// Requires a zero constant term.
    pub fn sequences(&self) -> Result<RationalGF> {
        if !self.num.constant_term().is_zero() {
            return Err(Error::domain("block generating function must vanish at x = 0"));
        }
        Ok(RationalGF {
            num: self.den.clone(),
            den: &self.den - &self.num,
        })
    }

    pub fn specialize(&self, var: Var, value: &BigInt) -> RationalGF {
        RationalGF {
            num: self.num.specialize(var, value),
            den: self.den.specialize(var, value),
        }
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalGF({self})")
    }
}

/// `u == v` as rational functions: `u.num * v.den == v.num * u.den`.
pub fn rgf_equal(u: &RationalGF, v: &RationalGF) -> bool {
    &u.num * &v.den == &v.num * &u.den
}

/// A dense square matrix over `Z[a, b]`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<Polynomial>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Self {
        SquareMatrix {
            dim,
            entries: vec![Polynomial::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = SquareMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Polynomial::one());
        }
        m
    }

    /// `None` unless `rows` is square and nonempty.
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Option<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        Some(SquareMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Polynomial) {
        self.entries[i * self.dim + j] = v;
    }

    /// The Kronecker (tensor) product.
    pub fn kronecker(&self, other: &SquareMatrix) -> SquareMatrix {
        let (p, q) = (self.dim, other.dim);
        let mut out = SquareMatrix::zeros(p * q);
        for i in 0..p {
            for j in 0..p {
                let s = self.get(i, j);
                if s.is_zero() {
                    continue;
                }
                for k in 0..q {
                    for l in 0..q {
                        let o = other.get(k, l);
                        if !o.is_zero() {
                            out.set(i * q + k, j * q + l, s * o);
                        }
                    }
                }
            }
        }
        out
    }
}

/// The recurrence coefficients `c_1..c_d` of `den = 1 - c_1 x - ... - c_d x^d`.
fn recurrence_coeffs(den: &XPoly, min_len: usize) -> Vec<Polynomial> {
    let d = den.degree().unwrap_or(0).max(min_len);
    (1..=d).map(|j| -den.coeff(j)).collect()
}

fn companion_from(c: &[Polynomial]) -> SquareMatrix {
    let d = c.len();
    let mut m = SquareMatrix::zeros(d);
    for i in 0..d.saturating_sub(1) {
        m.set(i, i + 1, Polynomial::one());
    }
    // Last row: [c_d, ..., c_1].
    for j in 0..d {
        m.set(d - 1, j, c[d - 1 - j].clone());
    }
    m
}

/// Companion matrix of the recurrence whose denominator is `den`.
///
/// Its characteristic polynomial is the degree-`d` reversal of `den`.
pub fn companion_matrix(den: &XPoly) -> Result<SquareMatrix> {
    if !den.constant_term().is_one() {
        return Err(Error::domain(
            "companion matrix needs a denominator with constant term 1",
        ));
    }
    match den.degree() {
        Some(d) if d >= 1 => Ok(companion_from(&recurrence_coeffs(den, 0))),
        _ => Err(Error::domain("companion matrix needs a denominator of degree >= 1")),
    }
}

/// `det(t I - m)` by Berkowitz's division-free algorithm, returned as a
/// monic polynomial in `t` (carried in an [`XPoly`]).
pub fn berkowitz_charpoly(m: &SquareMatrix) -> XPoly {
    let n = m.dim();
    // Coefficients of the running characteristic polynomial, highest degree first.
    let mut poly = vec![Polynomial::one()];
    for r in 0..n {
        // Leading block is r x r; the new row/column is index r.
        // Toeplitz column: [1, -a_rr, -S R, -S M R, ..., -S M^{r-1} R].
        let mut col = Vec::with_capacity(r + 2);
        col.push(Polynomial::one());
        col.push(-m.get(r, r));
        let mut v: Vec<Polynomial> = (0..r).map(|i| m.get(i, r).clone()).collect();
        for step in 0..r {
            let s_dot: Polynomial = (0..r).filter(|&j| !v[j].is_zero()).map(|j| m.get(r, j) * &v[j]).sum();
            col.push(-s_dot);
            if step + 1 < r {
                v = (0..r)
                    .map(|i| (0..r).filter(|&j| !v[j].is_zero()).map(|j| m.get(i, j) * &v[j]).sum())
                    .collect();
            }
        }
        let mut next = vec![Polynomial::zero(); r + 2];
        for (i, out) in next.iter_mut().enumerate() {
            for (j, p) in poly.iter().enumerate() {
                if i >= j && !p.is_zero() && !col[i - j].is_zero() {
                    *out += &(&col[i - j] * p);
                }
            }
        }
        poly = next;
    }
    poly.reverse();
    XPoly::new(poly)
}

/// Bookkeeping from [`hadamard_rational_detailed`].
#[derive(Debug, Clone)]
pub struct HadamardConstruction {
    pub result: RationalGF,
    /// Dimension of the Kronecker representation.
    pub dim: usize,
    /// Extra numerator length for improper inputs.
    pub transient: usize,
    /// Degrees checked to vanish in `den * series`, inclusive.
    pub check_window: (usize, usize),
}

fn transient_of(u: &RationalGF, d: usize) -> usize {
    match u.num.degree() {
        Some(dn) => (dn + 1).saturating_sub(d),
        None => 0,
    }
}

/// Closed-form Hadamard product of two rational generating functions.
///
/// The result need not be in lowest terms; compare with [`rgf_equal`].
pub fn hadamard_rational(u: &RationalGF, v: &RationalGF) -> Result<RationalGF> {
    hadamard_rational_detailed(u, v).map(|c| c.result)
}

pub fn hadamard_rational_detailed(u: &RationalGF, v: &RationalGF) -> Result<HadamardConstruction> {
    // A constant denominator is treated as 1 + 0*x so both sides have a
    // companion matrix of dimension at least one.
    let cu = recurrence_coeffs(&u.den, 1);
    let cv = recurrence_coeffs(&v.den, 1);
    let (du, dv) = (cu.len(), cv.len());
    let k = companion_from(&cu).kronecker(&companion_from(&cv));
    let dim = k.dim();
    debug_assert_eq!(dim, du * dv);
    let chi = berkowitz_charpoly(&k);
    let den = chi.reversal(dim);

    let transient = transient_of(u, du) + transient_of(v, dv);
    let lo = dim + transient;
    let hi = 2 * dim + 2 * transient;
    let s = hadamard_series(&u.expand(hi), &v.expand(hi))?;
    let prod = s.mul_xpoly(&den);
    if let Some(bad) = (lo..=hi).find(|&i| !prod.coeff(i).is_zero()) {
        return Err(Error::Internal(format!(
            "Kronecker denominator does not annihilate the product series at x^{bad}: \
             residue {} (dim {dim}, transient {transient})",
            prod.coeff(bad)
        )));
    }
    let num = XPoly::new(prod.coeffs()[..lo].to_vec());
    Ok(HadamardConstruction {
        result: RationalGF { num, den },
        dim,
        transient,
        check_window: (lo, hi),
    })
}
