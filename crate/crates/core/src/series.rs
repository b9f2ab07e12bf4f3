//! Truncated power series in `x` with coefficients in `Z[a, b]`.
//!
//! This is the expansion oracle: every closed form is checked by expanding it
//! here and comparing coefficientwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::xpoly::XPoly;

/// The coefficients of `x^0 ..= x^order`. Zeros are stored explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeriesTrunc {
    coeffs: Vec<Polynomial>,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    coeffs: Vec<String>,
}

impl SeriesTrunc {
    pub fn zero(order: usize) -> Self {
        SeriesTrunc {
            coeffs: vec![Polynomial::zero(); order + 1],
        }
    }

    /// `None` if `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<Polynomial>) -> Option<Self> {
        (!coeffs.is_empty()).then_some(SeriesTrunc { coeffs })
    }

    /// `1/(1-x)` truncated: the identity for the Hadamard product.
    pub fn geometric(order: usize) -> Self {
        SeriesTrunc {
            coeffs: vec![Polynomial::one(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Polynomial {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Polynomial> {
        self.coeffs
    }

    pub fn to_xpoly(&self) -> XPoly {
        XPoly::new(self.coeffs.clone())
    }

    /// Truncates a polynomial to a series of the given order.
    pub fn from_xpoly(p: &XPoly, order: usize) -> Self {
        SeriesTrunc {
            coeffs: (0..=order).map(|k| p.coeff(k).clone()).collect(),
        }
    }

    fn check_order(&self, other: &SeriesTrunc) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::domain(format!(
                "series orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    /// Lowest index where the two series differ.
    pub fn first_mismatch(&self, other: &SeriesTrunc) -> Result<Option<usize>> {
        self.check_order(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).position(|(p, q)| p != q))
    }

    /// Truncated Cauchy product.
    pub fn cauchy(&self, other: &SeriesTrunc) -> Result<SeriesTrunc> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = SeriesTrunc::zero(n);
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in other.coeffs[..=n - i].iter().enumerate() {
                if !q.is_zero() {
                    out.coeffs[i + j] += &(p * q);
                }
            }
        }
        Ok(out)
    }

    /// `p * self` truncated to this series' order.
    pub fn mul_xpoly(&self, p: &XPoly) -> SeriesTrunc {
        let rhs = SeriesTrunc::from_xpoly(p, self.order());
        self.cauchy(&rhs).expect("orders match by construction")
    }

    pub fn to_json(&self) -> String {
        let doc = SeriesJson {
            order: self.order(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        };
        serde_json::to_string(&doc).expect("serializing strings cannot fail")
    }

    pub fn from_json(s: &str) -> Result<SeriesTrunc> {
        let doc: SeriesJson =
            serde_json::from_str(s).map_err(|e| Error::parse(e.column().saturating_sub(1), e.to_string()))?;
        if doc.coeffs.len() != doc.order + 1 {
            return Err(Error::domain(format!(
                "order {} requires {} coefficients, found {}",
                doc.order,
                doc.order + 1,
                doc.coeffs.len()
            )));
        }
        let coeffs = doc
            .coeffs
            .iter()
            .map(|c| c.parse())
            .collect::<Result<Vec<Polynomial>>>()?;
        Ok(SeriesTrunc { coeffs })
    }
}

/// Expands `num / den` to order `order` using the recurrence defined by `den`.
///
/// `den` must have constant term exactly 1.
pub fn expand_rational(num: &XPoly, den: &XPoly, order: usize) -> Result<SeriesTrunc> {
    if !den.constant_term().is_one() {
        return Err(Error::domain(format!(
            "denominator constant term must be 1, found {}",
            den.constant_term()
        )));
    }
    let d = den.degree().unwrap_or(0);
    let mut coeffs: Vec<Polynomial> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        // s_k = n_k - sum_{j=1..d} den_j s_{k-j}
        let mut s = num.coeff(k).clone();
        for j in 1..=d.min(k) {
            let dj = den.coeff(j);
            if !dj.is_zero() {
                s -= &(dj * &coeffs[k - j]);
            }
        }
        coeffs.push(s);
    }
    Ok(SeriesTrunc { coeffs })
}

/// Coefficientwise product.
pub fn hadamard_series(s: &SeriesTrunc, t: &SeriesTrunc) -> Result<SeriesTrunc> {
    s.check_order(t)?;
    Ok(SeriesTrunc {
        coeffs: s.coeffs.iter().zip(&t.coeffs).map(|(p, q)| p * q).collect(),
    })
}

/// Exact coefficientwise equality.
pub fn series_equal(s: &SeriesTrunc, t: &SeriesTrunc) -> Result<bool> {
    Ok(s.first_mismatch(t)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: &str) -> XPoly {
        s.parse().unwrap()
    }

    fn polys(v: &[&str]) -> Vec<Polynomial> {
        v.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn expands_fibonacci_polynomials() {
        let s = expand_rational(&XPoly::one(), &x("1 - a x - x^2"), 4).unwrap();
        assert_eq!(
            s.coeffs(),
            polys(&["1", "a", "1 + a^2", "2a + a^3", "1 + 3a^2 + a^4"]).as_slice()
        );
    }

    #[test]
    fn expands_geometric() {
        let s = expand_rational(&XPoly::one(), &x("1 - x"), 3).unwrap();
        assert_eq!(s, SeriesTrunc::geometric(3));
    }

    #[test]
    fn expands_squared_fibonacci() {
        let s = expand_rational(&x("1 - x"), &x("1 - 2x - 2x^2 + x^3"), 5).unwrap();
        assert_eq!(s.coeffs(), polys(&["1", "1", "4", "9", "25", "64"]).as_slice());
    }

    #[test]
    fn rejects_non_unit_denominator() {
        assert!(matches!(
            expand_rational(&XPoly::one(), &x("2 - x"), 3),
            Err(Error::Domain(_))
        ));
        assert!(expand_rational(&XPoly::one(), &x("x"), 3).is_err());
    }

    #[test]
    fn hadamard_examples() {
        let fa = expand_rational(&XPoly::one(), &x("1 - a x - x^2"), 2).unwrap();
        let fb = expand_rational(&XPoly::one(), &x("1 - b x - x^2"), 2).unwrap();
        let h = hadamard_series(&fa, &fb).unwrap();
        assert_eq!(h.coeffs(), polys(&["1", "a b", "1 + a^2 + b^2 + a^2 b^2"]).as_slice());
        assert_eq!(hadamard_series(&fa, &SeriesTrunc::geometric(2)).unwrap(), fa);
        assert_eq!(
            hadamard_series(&fa, &SeriesTrunc::zero(2)).unwrap(),
            SeriesTrunc::zero(2)
        );
        assert!(hadamard_series(&fa, &SeriesTrunc::zero(3)).is_err());
    }

    #[test]
    fn equality_examples() {
        let s = SeriesTrunc::from_coeffs(polys(&["1", "a"])).unwrap();
        let t = SeriesTrunc::from_coeffs(polys(&["1", "b"])).unwrap();
        assert!(series_equal(&s, &s).unwrap());
        assert!(!series_equal(&s, &t).unwrap());
        assert_eq!(s.first_mismatch(&t).unwrap(), Some(1));
        assert!(series_equal(&s, &SeriesTrunc::zero(3)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = expand_rational(&XPoly::one(), &x("1 - a x - b x^2"), 6).unwrap();
        let j = s.to_json();
        assert!(j.starts_with("{\"order\":6,\"coeffs\":[\"1\",\"a\","));
        assert_eq!(SeriesTrunc::from_json(&j).unwrap(), s);
        assert!(SeriesTrunc::from_json("{\"order\":2,\"coeffs\":[\"1\"]}").is_err());
    }
}
