//! Independent reference arithmetic for integration tests: polynomials in
//! `a, b` as maps from exponent pairs to `i128`, built only from the defining
//! recurrences.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hadamard_core::{Polynomial, SeriesTrunc};

pub type RefPoly = BTreeMap<(u32, u32), i128>;

pub fn add(p: &RefPoly, q: &RefPoly) -> RefPoly {
    let mut out = p.clone();
    for (k, v) in q {
        *out.entry(*k).or_insert(0) += v;
    }
    out.retain(|_, v| *v != 0);
    out
}

pub fn mul(p: &RefPoly, q: &RefPoly) -> RefPoly {
    let mut out = RefPoly::new();
    for ((a1, b1), v1) in p {
        for ((a2, b2), v2) in q {
            *out.entry((a1 + a2, b1 + b2)).or_insert(0) += v1 * v2;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

pub fn one() -> RefPoly {
    RefPoly::from([((0, 0), 1)])
}

pub fn var_a() -> RefPoly {
    RefPoly::from([((1, 0), 1)])
}

pub fn var_b() -> RefPoly {
    RefPoly::from([((0, 1), 1)])
}

pub fn from_lib(p: &Polynomial) -> RefPoly {
    p.terms()
        .map(|(m, c)| ((m.a, m.b), i128::try_from(c).expect("coefficient fits in i128")))
        .collect()
}

pub fn series_from_lib(s: &SeriesTrunc) -> Vec<RefPoly> {
    s.coeffs().iter().map(from_lib).collect()
}

/// Coefficients of `x^shift / (1 - w x - x^step)` through `x^order`, with
/// `w` the given weight for a length-1 brick.
pub fn brick_series(w: &RefPoly, step: usize, shift: usize, order: usize) -> Vec<RefPoly> {
    // c_k = w c_{k-1} + c_{k-step}, c_0 = 1 (tilings of length k with bricks 1 and step).
    let mut c: Vec<RefPoly> = vec![one()];
    for k in 1..=order {
        let mut next = mul(w, &c[k - 1]);
        if k >= step {
            next = add(&next, &c[k - step]);
        }
        c.push(next);
    }
    (0..=order)
        .map(|k| {
            if k >= shift {
                c[k - shift].clone()
            } else {
                RefPoly::new()
            }
        })
        .collect()
}

/// `1/(1 - x^n)` through `x^order`.
pub fn periodic(n: usize, order: usize) -> Vec<RefPoly> {
    (0..=order)
        .map(|k| if k % n == 0 { one() } else { RefPoly::new() })
        .collect()
}

pub fn hadamard(s: &[RefPoly], t: &[RefPoly]) -> Vec<RefPoly> {
    s.iter().zip(t).map(|(p, q)| mul(p, q)).collect()
}

/// First index where two coefficient lists differ.
pub fn first_difference(s: &[RefPoly], t: &[RefPoly]) -> Option<usize> {
    (0..s.len().max(t.len())).find(|&k| s.get(k) != t.get(k))
}

/// `f_k(a)` evaluated at `a = 1`, i.e. Fibonacci numbers `F_{k+1}`.
pub fn fibonacci_numbers(count: usize) -> Vec<i128> {
    let mut v = vec![1i128, 1];
    while v.len() < count {
        let n = v.len();
        v.push(v[n - 1] + v[n - 2]);
    }
    v.truncate(count);
    v
}

pub fn binomial(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}
