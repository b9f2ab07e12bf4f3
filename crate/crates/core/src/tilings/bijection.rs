//! Tail switching on pairs of strip tilings.
//!
//! Fix `m > n >= 0`. Set `A` holds a strip of length `m` above a strip of
//! length `n + 1`; set `B` a strip of length `m + 1` above one of length `n`.
//! In both the lower strip is indented `m - n` cells, so the two sets differ
//! only in which row owns the last cell. Squares weigh `a`, dominoes 1.
//!
//! The tail of a pair is everything right of the rightmost position in
//! `[m - n, m]` where both rows have a brick boundary. The left edge of the
//! lower strip counts as a boundary of that strip, which also covers
//! `n = 0`. Swapping tails maps `A` to `B` and back; the pairs without a
//! tail are the exceptional ones.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fib::{f, sign_poly};
use crate::poly::{Polynomial, Var};
use crate::tilings::{enumerate_row_tilings, render_row, RowSpec};

/// A top strip starting at 0 and a bottom strip starting at `indent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StripPair {
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
    pub indent: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// Bottom strip sticks out one cell past the top.
    A,
    /// Top strip sticks out one cell past the bottom.
    B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Switch {
    Image(StripPair),
    Exceptional,
}

fn boundaries(row: &[usize], start: usize) -> BTreeSet<usize> {
    let mut pos = start;
    let mut out = BTreeSet::from([start]);
    for &len in row {
        pos += len;
        out.insert(pos);
    }
    out
}

/// Splits `row` at offset `at`, which must be a boundary.
fn split_at_offset(row: &[usize], at: usize) -> (&[usize], &[usize]) {
    let mut pos = 0;
    let mut idx = 0;
    while pos < at {
        pos += row[idx];
        idx += 1;
    }
    debug_assert_eq!(pos, at);
    row.split_at(idx)
}

impl StripPair {
    pub fn top_len(&self) -> usize {
        self.top.iter().sum()
    }

    pub fn bottom_len(&self) -> usize {
        self.bottom.iter().sum()
    }

    pub fn kind(&self) -> Option<PairKind> {
        let top_end = self.top_len();
        let bottom_end = self.indent + self.bottom_len();
        if bottom_end == top_end + 1 {
            Some(PairKind::A)
        } else if top_end == bottom_end + 1 {
            Some(PairKind::B)
        } else {
            None
        }
    }

    /// `a` to the number of squares in both rows.
    pub fn weight(&self) -> Polynomial {
        let squares = self.top.iter().chain(&self.bottom).filter(|&&l| l == 1).count();
        Polynomial::var(Var::A).pow(squares as u32)
    }

    /// Rightmost common boundary in `[indent, min(top end, bottom end)]`.
    pub fn tail_line(&self) -> Option<usize> {
        let top = boundaries(&self.top, 0);
        let bottom = boundaries(&self.bottom, self.indent);
        let hi = self.top_len().min(self.indent + self.bottom_len());
        (self.indent..=hi).rev().find(|p| top.contains(p) && bottom.contains(p))
    }

    pub fn render(&self) -> String {
        format!(
            "{}\n{}",
            render_row(&self.top, 0),
            render_row(&self.bottom, self.indent)
        )
    }
}

/// Swaps the tails of the two rows, or reports that there is no tail.
pub fn tail_switch(p: &StripPair) -> Result<Switch> {
    if p.top.iter().chain(&p.bottom).any(|&l| l != 1 && l != 2) {
        return Err(Error::domain("strip tilings use bricks of length 1 and 2 only"));
    }
    if p.kind().is_none() || p.indent == 0 || p.indent > p.top_len() {
        return Err(Error::domain(format!(
            "strips of length {} and {} indented {} are neither an A nor a B pair",
            p.top_len(),
            p.bottom_len(),
            p.indent
        )));
    }
    let Some(line) = p.tail_line() else {
        return Ok(Switch::Exceptional);
    };
    let (top_head, top_tail) = split_at_offset(&p.top, line);
    let (bottom_head, bottom_tail) = split_at_offset(&p.bottom, line - p.indent);
    Ok(Switch::Image(StripPair {
        top: top_head.iter().chain(bottom_tail).copied().collect(),
        bottom: bottom_head.iter().chain(top_tail).copied().collect(),
        indent: p.indent,
    }))
}

/// All pairs in `A` (`kind == A`) or `B` for the given `m > n`.
pub fn strip_pairs(m: usize, n: usize, kind: PairKind) -> Vec<StripPair> {
    let spec = RowSpec::fibonacci(Var::A);
    let (top_len, bottom_len) = match kind {
        PairKind::A => (m, n + 1),
        PairKind::B => (m + 1, n),
    };
    let tops = enumerate_row_tilings(&spec, top_len);
    let bottoms = enumerate_row_tilings(&spec, bottom_len);
    let mut out = Vec::with_capacity(tops.len() * bottoms.len());
    for t in &tops {
        for b in &bottoms {
            out.push(StripPair {
                top: t.clone(),
                bottom: b.clone(),
                indent: m - n,
            });
        }
    }
    out
}

/// Outcome of an exhaustive tail-switching audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub m: usize,
    pub n: usize,
    pub size_a: usize,
    pub size_b: usize,
    pub matched_weight: Polynomial,
    pub exceptional_a: Polynomial,
    pub exceptional_b: Polynomial,
    /// `(-1)^{min(m, n+1)} f_{m-n-1}(a)`.
    pub expected_difference: Polynomial,
}

fn counterexample(what: &str, p: &StripPair, image: Option<&StripPair>) -> Error {
    let mut msg = format!("{what}\n{}", p.render());
    if let Some(q) = image {
        let _ = write!(msg, "\nmaps to\n{}", q.render());
    }
    Error::Audit(msg)
}

/// Checks that tail switching is a weight-preserving involution between the
/// non-exceptional parts of `A` and `B`, and that the exceptional weights
/// differ by `(-1)^{min(m, n+1)} f_{m-n-1}(a)`.
pub fn lemma11_bijection_audit(m: usize, n: usize) -> Result<AuditReport> {
    if m <= n {
        return Err(Error::domain(format!("audit needs m > n, got m = {m}, n = {n}")));
    }
    let set_a = strip_pairs(m, n, PairKind::A);
    let set_b = strip_pairs(m, n, PairKind::B);
    let mut matched_weight = Polynomial::zero();
    let mut exceptional_a = Polynomial::zero();
    let mut exceptional_b = Polynomial::zero();
    let mut images_of_a = HashSet::new();
    let mut matched_b = HashSet::new();

    for (from, to, set) in [(PairKind::A, PairKind::B, &set_a), (PairKind::B, PairKind::A, &set_b)] {
        for p in set {
            let w = p.weight();
            match tail_switch(p)? {
                Switch::Exceptional => match from {
                    PairKind::A => exceptional_a += &w,
                    PairKind::B => exceptional_b += &w,
                },
                Switch::Image(q) => {
                    if q.kind() != Some(to) {
                        return Err(counterexample("image has the wrong shape", p, Some(&q)));
                    }
                    if q.weight() != w {
                        return Err(counterexample("switch changed the weight", p, Some(&q)));
                    }
                    if tail_switch(&q)? != Switch::Image(p.clone()) {
                        return Err(counterexample("switch is not an involution", p, Some(&q)));
                    }
                    match from {
                        PairKind::A => {
                            matched_weight += &w;
                            if !images_of_a.insert(q) {
                                return Err(counterexample("two A pairs share an image", p, None));
                            }
                        }
                        PairKind::B => {
                            matched_b.insert(p.clone());
                        }
                    }
                }
            }
        }
    }
    if images_of_a != matched_b {
        return Err(Error::Audit(format!(
            "images of A ({}) differ from switchable B ({})",
            images_of_a.len(),
            matched_b.len()
        )));
    }
    let (mi, ni) = (m as i64, n as i64);
    let expected_difference = sign_poly(mi.min(ni + 1)) * f(mi - ni - 1)?;
    let difference = &exceptional_a - &exceptional_b;
    if difference != expected_difference {
        return Err(Error::Audit(format!(
            "m = {m}, n = {n}: exceptional weight difference {difference}, expected {expected_difference}"
        )));
    }
    Ok(AuditReport {
        m,
        n,
        size_a: set_a.len(),
        size_b: set_b.len(),
        matched_weight,
        exceptional_a,
        exceptional_b,
        expected_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn audit_examples() {
        let r = lemma11_bijection_audit(2, 1).unwrap();
        assert_eq!(r.exceptional_a, Polynomial::one());
        assert!(r.exceptional_b.is_zero());

        let r = lemma11_bijection_audit(3, 2).unwrap();
        assert!(r.exceptional_a.is_zero());
        assert_eq!(r.exceptional_b, Polynomial::one());
        assert_eq!(r.expected_difference, p("-1"));

        let r = lemma11_bijection_audit(4, 3).unwrap();
        assert_eq!(r.expected_difference, Polynomial::one());

        let r = lemma11_bijection_audit(3, 1).unwrap();
        assert_eq!(r.exceptional_a, p("a"));
        let total_a = f(3).unwrap() * f(2).unwrap();
        assert_eq!(&r.matched_weight + &r.exceptional_a, total_a);
    }

    #[test]
    fn zero_length_lower_strip() {
        // n = 0: every A pair switches; B pairs ending in a domino are exceptional.
        let r = lemma11_bijection_audit(4, 0).unwrap();
        assert!(r.exceptional_a.is_zero());
        assert_eq!(r.exceptional_b, f(3).unwrap());
    }

    #[test]
    fn trailing_squares_swap_and_return() {
        // m = 3, n = 1: top [2,1], bottom [1,1] starting at 2.
        let x = StripPair {
            top: vec![2, 1],
            bottom: vec![1, 1],
            indent: 2,
        };
        assert_eq!(x.kind(), Some(PairKind::A));
        let Switch::Image(y) = tail_switch(&x).unwrap() else {
            panic!("expected an image")
        };
        assert_eq!(
            y,
            StripPair {
                top: vec![2, 1, 1],
                bottom: vec![1],
                indent: 2
            }
        );
        assert_eq!(tail_switch(&y).unwrap(), Switch::Image(x));
    }

    #[test]
    fn staggered_dominoes_are_exceptional() {
        // m = 4, n = 1: head of length 2, then a top domino straddling the
        // indent and a bottom domino.
        for head in [vec![1, 1], vec![2]] {
            let mut top = head.clone();
            top.push(2);
            let x = StripPair {
                top,
                bottom: vec![2],
                indent: 3,
            };
            assert_eq!(tail_switch(&x).unwrap(), Switch::Exceptional);
        }
    }

    #[test]
    fn malformed_pairs_rejected() {
        let bad = StripPair {
            top: vec![1, 1],
            bottom: vec![1],
            indent: 0,
        };
        assert!(matches!(tail_switch(&bad), Err(Error::Domain(_))));
        let bad_brick = StripPair {
            top: vec![3],
            bottom: vec![1, 1],
            indent: 2,
        };
        assert!(tail_switch(&bad_brick).is_err());
        assert!(lemma11_bijection_audit(2, 2).is_err());
    }
}
