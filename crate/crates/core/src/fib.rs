//! Fibonacci, Lucas and Chebyshev polynomial families.
//!
//! `f_n(a)` is the coefficient of `x^n` in `1/(1 - a x - x^2)`, extended to
//! `f_{-1} = 0` and `f_{-2} = 1`. Indices below `-2` have no value.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Var};

/// `tables[0]` holds `f_0(a), f_1(a), ...`; `tables[1]` the same in `b`.
static MEMO: LazyLock<[RwLock<Vec<Polynomial>>; 2]> = LazyLock::new(|| {
    let seed = |v: Var| RwLock::new(vec![Polynomial::one(), Polynomial::var(v)]);
    [seed(Var::A), seed(Var::B)]
});

fn memo_slot(var: Var) -> &'static RwLock<Vec<Polynomial>> {
    match var {
        Var::A => &MEMO[0],
        Var::B => &MEMO[1],
    }
}

/// `f_n` in the given variable, for `n >= -2`.
pub fn fib_poly(n: i64, var: Var) -> Result<Polynomial> {
    match n {
        -2 => return Ok(Polynomial::one()),
        -1 => return Ok(Polynomial::zero()),
        n if n < -2 => return Err(Error::domain(format!("Fibonacci polynomial index {n} is below -2"))),
        _ => {}
    }
    let n = n as usize;
    let slot = memo_slot(var);
    if let Some(p) = slot.read().expect("memo lock poisoned").get(n) {
        return Ok(p.clone());
    }
    let mut table = slot.write().expect("memo lock poisoned");
    let x = Polynomial::var(var);
    while table.len() <= n {
        let k = table.len();
        let next = &(&x * &table[k - 1]) + &table[k - 2];
        table.push(next);
    }
    Ok(table[n].clone())
}

/// `f_n(a)`; shorthand used by the closed-form builders.
pub fn f(n: i64) -> Result<Polynomial> {
    fib_poly(n, Var::A)
}

/// `binom(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `sum_{k=0}^{floor(n/2)} binom(n-k, k) a^{n-2k}`, the closed form of `f_n(a)`.
pub fn binomial_fib_formula(n: u32) -> Polynomial {
    Polynomial::from_terms((0..=n / 2).map(|k| (Monomial::new(n - 2 * k, 0), binomial((n - k) as u64, k as u64))))
}

/// Lucas polynomial `f_n(a) + f_{n-2}(a)`.
pub fn lucas_poly(n: u32) -> Polynomial {
    let n = n as i64;
    f(n).expect("n >= 0") + f(n - 2).expect("n - 2 >= -2")
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)^e` as a polynomial; negative `e` uses its parity.
pub fn sign_poly(e: i64) -> Polynomial {
    Polynomial::constant(sign(e))
}

/// Both sides of `f_m f_{n+1} - f_{m+1} f_n = (-1)^{min(m, n+1)} f_{|m-n|-1}`.
pub fn lemma11_sides(m: i64, n: i64) -> Result<(Polynomial, Polynomial)> {
    if m < -1 || n < -1 {
        return Err(Error::domain(format!("identity needs m, n >= -1, got ({m}, {n})")));
    }
    let lhs = f(m)? * f(n + 1)? - f(m + 1)? * f(n)?;
    let rhs = sign_poly(m.min(n + 1)) * f((m - n).abs() - 1)?;
    Ok((lhs, rhs))
}

/// Exact check of the index-shift identity at `(m, n)`.
pub fn lemma11_check(m: i64, n: i64) -> Result<bool> {
    let (lhs, rhs) = lemma11_sides(m, n)?;
    Ok(lhs == rhs)
}

/// Chebyshev polynomial of the second kind by its three-term recurrence.
pub fn chebyshev_u(n: u32, var: Var) -> Polynomial {
    let two_x = Polynomial::var(var).scale(&BigInt::from(2));
    let (mut prev, mut cur) = (Polynomial::one(), two_x.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `U_n(a) = i^n f_n(-2 a i)` evaluated over the integers: the term
/// `c a^{n-2k}` of `f_n` maps to `(-1)^k 2^{n-2k} c a^{n-2k}`.
pub fn chebyshev_u_via_fib(n: u32, var: Var) -> Polynomial {
    let fib = f(n as i64).expect("n >= 0");
    let terms = fib.terms().map(|(m, c)| {
        let k = (n - m.a) / 2;
        let c = c * num_traits::pow(BigInt::from(2), m.a as usize) * sign(k as i64);
        (Monomial::new(m.a, 0), c)
    });
    Polynomial::from_terms(terms).in_var(var)
}
