//! Verification runs: closed forms against the expansion oracle, the
//! Kronecker engine and the tiling enumeration.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::closedform::{
    b0_special, first_block_gf, first_block_gf_topm, prime_block_gf, quot_rem, thm1_product, thm2_product,
    thm3_product, thm4_product_with, Instance, Thm4Form, THM4_FORM,
};
use crate::error::{Error, Result};
use crate::fib::{chebyshev_u, chebyshev_u_via_fib, lemma11_sides};
use crate::poly::{Polynomial, Var};
use crate::ratgf::{hadamard_rational, rgf_equal, RationalGF};
use crate::series::{hadamard_series, SeriesTrunc};
use crate::tilings::bijection::lemma11_bijection_audit;
use crate::tilings::{enumerate_prime_blocks, weighted_pair_count, RowSpec};

/// Largest series order the verifier accepts.
pub const MAX_ORDER: usize = 200;

/// Series order used for most closed-form checks.
pub const DEFAULT_ORDER: usize = 40;

/// Series order for the `x^m/(1-ax-x^2) * 1/(1-x^n)` family.
pub const THM4_ORDER: usize = 60;

/// Series order for the Chebyshev identity.
pub const CHEBYSHEV_ORDER: usize = 30;

/// The outcome of a single check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            detail: detail.into(),
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    fn from_result(name: impl Into<String>, r: Result<CheckResult>) -> Self {
        let name = name.into();
        r.unwrap_or_else(|e| CheckResult::fail(name, e.to_string()))
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "ok  " } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{tag} {}", self.name)
        } else {
            write!(f, "{tag} {}: {}", self.name, self.detail)
        }
    }
}

/// Compares two series and reports the lowest mismatching coefficient.
pub fn compare_series(name: &str, what: &str, got: &SeriesTrunc, expected: &SeriesTrunc) -> Result<CheckResult> {
    Ok(match got.first_mismatch(expected)? {
        None => CheckResult::pass(name, format!("{what} agree to order {}", got.order())),
        Some(k) => CheckResult::fail(
            name,
            format!(
                "{what} differ first at x^{k}: closed form {} vs oracle {}",
                got.coeff(k),
                expected.coeff(k)
            ),
        ),
    })
}

/// The product series the closed form must reproduce.
pub fn oracle_series(inst: &Instance, order: usize) -> Result<SeriesTrunc> {
    if let Instance::Chebyshev = inst {
        let coeffs = (0..=order as u32)
            .map(|k| chebyshev_u(k, Var::A) * chebyshev_u(k, Var::B))
            .collect();
        return Ok(SeriesTrunc::from_coeffs(coeffs).expect("nonempty"));
    }
    let (u, v) = inst.factors()?;
    hadamard_series(&u.expand(order), &v.expand(order))
}

/// Closed form against the coefficientwise product of the expanded factors.
pub fn series_check(inst: &Instance, order: usize) -> CheckResult {
    let name = format!("{inst} series oracle");
    CheckResult::from_result(
        name.clone(),
        (|| {
            let closed = inst.closed_form()?.expand(order);
            compare_series(&name, "expansions", &closed, &oracle_series(inst, order)?)
        })(),
    )
}

/// Closed form against the Kronecker-product Hadamard engine.
pub fn kronecker_check(inst: &Instance) -> CheckResult {
    let name = format!("{inst} kronecker");
    CheckResult::from_result(
        name.clone(),
        (|| {
            let (u, v) = inst.factors()?;
            let h = hadamard_rational(&u, &v)?;
            let closed = inst.closed_form()?;
            Ok(if rgf_equal(&h, &closed) {
                CheckResult::pass(
                    &name,
                    format!(
                        "engine output equals closed form (den degree {})",
                        h.den().degree().unwrap_or(0)
                    ),
                )
            } else {
                CheckResult::fail(&name, format!("engine gives {h}, closed form is {closed}"))
            })
        })(),
    )
}

/// Closed form against the first-block / prime-block product.
pub fn decomposition_check(inst: &Instance) -> Option<CheckResult> {
    let name = format!("{inst} block decomposition");
    let decomposition = inst.block_decomposition()?;
    Some(CheckResult::from_result(
        name.clone(),
        (|| {
            let d = decomposition?;
            let closed = inst.closed_form()?;
            Ok(if rgf_equal(&d, &closed) {
                CheckResult::pass(&name, "first block / (1 - P) equals closed form")
            } else {
                CheckResult::fail(&name, format!("block product {d} differs from {closed}"))
            })
        })(),
    ))
}

/// Every check that applies to one closed-form instance.
pub fn verify_instance(inst: &Instance, order: usize) -> Vec<CheckResult> {
    let mut out = vec![series_check(inst, order), kronecker_check(inst)];
    out.extend(decomposition_check(inst));
    out
}

fn equal_rgf(name: String, u: Result<RationalGF>, v: Result<RationalGF>) -> CheckResult {
    match (u, v) {
        (Ok(u), Ok(v)) if rgf_equal(&u, &v) => CheckResult::pass(name, "equal"),
        (Ok(u), Ok(v)) => CheckResult::fail(name, format!("{u} differs from {v}")),
        (Err(e), _) | (_, Err(e)) => CheckResult::fail(name, e.to_string()),
    }
}

/// The index-shift identity at `(m, n)` and, when `m > n >= 0`, the
/// tail-switching audit.
pub fn verify_lemma(m: i64, n: i64) -> Vec<CheckResult> {
    let name = format!("lemma(m={m},n={n})");
    let mut out = vec![match lemma11_sides(m, n) {
        Ok((l, r)) if l == r => CheckResult::pass(&name, format!("both sides {l}")),
        Ok((l, r)) => CheckResult::fail(&name, format!("left {l}, right {r}")),
        Err(e) => CheckResult::fail(&name, e.to_string()),
    }];
    if m > n && n >= 0 {
        let name = format!("bijection(m={m},n={n})");
        out.push(match lemma11_bijection_audit(m as usize, n as usize) {
            Ok(r) => CheckResult::pass(
                name,
                format!(
                    "exceptional A {} , exceptional B {}, difference {}",
                    r.exceptional_a, r.exceptional_b, r.expected_difference
                ),
            ),
            Err(e) => CheckResult::fail(name, e.to_string()),
        });
    }
    out
}

/// Which variant of the `r = 0` / signed terms the oracle accepts.
#[derive(Debug, Clone, Default)]
pub struct Thm4Resolution {
    pub short_shift_failures: Vec<(i64, i64)>,
    pub period_shift_failures: Vec<(i64, i64)>,
}

impl Thm4Resolution {
    pub fn confirmed(&self) -> Option<Thm4Form> {
        match (
            self.short_shift_failures.is_empty(),
            self.period_shift_failures.is_empty(),
        ) {
            (true, _) => Some(Thm4Form::ShortShift),
            (false, true) => Some(Thm4Form::PeriodShift),
            (false, false) => None,
        }
    }
}

/// Runs both candidate forms against the oracle on `m in 1..=max_m`, `n in 1..=max_n`.
pub fn resolve_thm4_form(max_m: i64, max_n: i64, order: usize) -> Result<Thm4Resolution> {
    let mut res = Thm4Resolution::default();
    for n in 1..=max_n {
        for m in 1..=max_m {
            let oracle = oracle_series(&Instance::Thm4 { m, n }, order)?;
            for (form, fails) in [
                (Thm4Form::ShortShift, &mut res.short_shift_failures),
                (Thm4Form::PeriodShift, &mut res.period_shift_failures),
            ] {
                if thm4_product_with(m, n, form)?.expand(order) != oracle {
                    fails.push((m, n));
                }
            }
        }
    }
    Ok(res)
}

fn thm4_resolution_check(order: usize) -> CheckResult {
    let name = "t4 form resolution";
    match resolve_thm4_form(12, 6, order) {
        Ok(r) => {
            let detail = format!(
                "short-shift form fails on {:?}; period-shift form fails on {:?}; using {:?}",
                r.short_shift_failures, r.period_shift_failures, THM4_FORM
            );
            if r.confirmed().is_some() && (THM4_FORM == Thm4Form::ShortShift || r.period_shift_failures.is_empty()) {
                CheckResult::pass(name, detail)
            } else {
                CheckResult::fail(name, detail)
            }
        }
        Err(e) => CheckResult::fail(name, e.to_string()),
    }
}

/// Series coefficient `k` of a closed form, or zero past the order.
fn coeff_at(s: &SeriesTrunc, k: usize) -> Polynomial {
    s.coeffs().get(k).cloned().unwrap_or_default()
}

fn tiling_check(
    name: String,
    top: &RowSpec,
    bottom: &RowSpec,
    closed: Result<RationalGF>,
    max_k: usize,
    primes: bool,
) -> CheckResult {
    CheckResult::from_result(
        name.clone(),
        (|| {
            let s = closed?.expand(max_k);
            for k in 0..=max_k {
                let counted = if primes {
                    if k == 0 {
                        continue;
                    }
                    enumerate_prime_blocks(top, bottom, k)
                } else {
                    weighted_pair_count(top, bottom, k)
                };
                let expected = coeff_at(&s, k);
                if counted != expected {
                    return Ok(CheckResult::fail(
                        &name,
                        format!("length {k}: enumeration {counted} vs closed form {expected}"),
                    ));
                }
            }
            Ok(CheckResult::pass(&name, format!("lengths 0..={max_k} agree")))
        })(),
    )
}

/// Tiling enumeration against the closed forms, lengths `0..=max_k`.
pub fn tiling_checks(max_k: usize) -> Vec<CheckResult> {
    let top = RowSpec::fibonacci(Var::A);
    let mut out = Vec::new();
    for n in 1..=5i64 {
        let bottom = RowSpec::bottom(n as usize);
        out.push(tiling_check(
            format!("tilings t1(n={n})"),
            &top,
            &bottom,
            thm1_product(n),
            max_k,
            false,
        ));
        out.push(tiling_check(
            format!("prime blocks P(n={n})"),
            &top,
            &bottom,
            prime_block_gf(n),
            max_k,
            true,
        ));
        for m in 1..=4i64 {
            let pre = bottom.clone().with_prefix(m as usize);
            out.push(tiling_check(
                format!("tilings t3(m={m},n={n})"),
                &top,
                &pre,
                thm3_product(m, n),
                max_k,
                false,
            ));
            out.push(tiling_check(
                format!("first blocks Q(m={m},n={n})"),
                &top,
                &pre,
                first_block_gf(m, n),
                max_k,
                true,
            ));
        }
        let only = RowSpec::only(n as usize);
        for m in 1..=6i64 {
            let pre = top.clone().with_prefix(m as usize);
            out.push(tiling_check(
                format!("tilings t4(m={m},n={n})"),
                &pre,
                &only,
                thm4_product_with(m, n, THM4_FORM),
                max_k,
                false,
            ));
            out.push(tiling_check(
                format!("first blocks R(m={m},n={n})"),
                &pre,
                &only,
                first_block_gf_topm(m, n),
                max_k,
                true,
            ));
        }
    }
    out
}

/// `verify --theorem` selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    Shapiro,
    T1,
    T2,
    T3,
    T4,
    Lemma,
    B0,
    Cheb,
    All,
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "shapiro" => Theorem::Shapiro,
            "t1" => Theorem::T1,
            "t2" => Theorem::T2,
            "t3" => Theorem::T3,
            "t4" => Theorem::T4,
            "lemma" => Theorem::Lemma,
            "b0" => Theorem::B0,
            "cheb" => Theorem::Cheb,
            "all" => Theorem::All,
            other => return Err(Error::domain(format!("unknown theorem '{other}'"))),
        })
    }
}

fn need(v: Option<i64>, flag: &str, th: Theorem) -> Result<i64> {
    v.ok_or_else(|| Error::domain(format!("{th:?} needs --{flag}")))
}

/// Runs one selected theorem at one parameter point.
pub fn verify_theorem(th: Theorem, m: Option<i64>, n: Option<i64>, order: usize) -> Result<Vec<CheckResult>> {
    if order > MAX_ORDER {
        return Err(Error::domain(format!(
            "order {order} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    let inst = match th {
        Theorem::Shapiro => Instance::Shapiro,
        Theorem::T1 => Instance::Thm1 { n: need(n, "n", th)? },
        Theorem::T2 => Instance::Thm2 { m: need(m, "m", th)? },
        Theorem::T3 => Instance::Thm3 {
            m: need(m, "m", th)?,
            n: need(n, "n", th)?,
        },
        Theorem::T4 => Instance::Thm4 {
            m: need(m, "m", th)?,
            n: need(n, "n", th)?,
        },
        Theorem::B0 => Instance::B0 {
            m: need(m, "m", th)?,
            n: need(n, "n", th)?,
        },
        Theorem::Cheb => Instance::Chebyshev,
        Theorem::Lemma => return Ok(verify_lemma(need(m, "m", th)?, need(n, "n", th)?)),
        Theorem::All => return Ok(verify_all(order)),
    };
    // Surface parameter errors as errors, not failed checks.
    inst.closed_form()?;
    let mut out = verify_instance(&inst, order);
    if let Instance::B0 { m, n } = inst {
        let zero = BigInt::from(0);
        out.push(equal_rgf(
            format!("{inst} equals t3 at b=0"),
            thm3_product(m, n).map(|r| r.specialize(Var::B, &zero)),
            b0_special(m, n),
        ));
    }
    Ok(out)
}

type Task = Box<dyn Fn() -> Vec<CheckResult> + Send + Sync>;

/// The full verification matrix. `order` is a floor: each family runs at
/// the larger of `order` and its own default.
pub fn verify_all(order: usize) -> Vec<CheckResult> {
    let base = order.max(DEFAULT_ORDER);
    let t4_order = order.max(THM4_ORDER);
    let cheb_order = order.max(CHEBYSHEV_ORDER);
    let mut tasks: Vec<Task> = Vec::new();
    let zero = BigInt::from(0);

    tasks.push(Box::new(move || verify_instance(&Instance::Shapiro, base)));
    tasks.push(Box::new(move || vec![a007598_check()]));
    for n in 1..=8 {
        tasks.push(Box::new(move || verify_instance(&Instance::Thm1 { n }, base)));
    }
    for m in 0..=8 {
        tasks.push(Box::new(move || {
            let mut v = verify_instance(&Instance::Thm2 { m }, base);
            v.push(equal_rgf(
                format!("t2(m={m}) equals t3(m={m},n=2)"),
                thm2_product(m),
                thm3_product(m, 2),
            ));
            v
        }));
    }
    for m in 0..=6 {
        for n in 1..=6 {
            let zero = zero.clone();
            tasks.push(Box::new(move || {
                let mut v = verify_instance(&Instance::Thm3 { m, n }, base);
                v.push(equal_rgf(
                    format!("t3(m={m},n={n}) at b=0 equals b0"),
                    thm3_product(m, n).map(|r| r.specialize(Var::B, &zero)),
                    b0_special(m, n),
                ));
                v.push(series_check(&Instance::B0 { m, n }, base));
                if m == 0 {
                    v.push(equal_rgf(
                        format!("t3(m=0,n={n}) equals t1(n={n})"),
                        thm3_product(0, n),
                        thm1_product(n),
                    ));
                }
                v
            }));
        }
    }
    for n in 1..=6i64 {
        for m in 1..=12i64 {
            tasks.push(Box::new(move || {
                let (q, _) = quot_rem(m, n);
                let mut v = verify_instance(&Instance::Thm4 { m, n }, t4_order);
                if q == 0 {
                    for c in &mut v {
                        c.name.push_str(" [q=0, outside stated hypotheses]");
                    }
                }
                v
            }));
        }
    }
    tasks.push(Box::new(move || vec![thm4_resolution_check(t4_order)]));
    for m in -1..=12 {
        for n in -1..=12 {
            if m > 10 || n < 0 || m <= n {
                tasks.push(Box::new(move || verify_lemma(m, n).into_iter().take(1).collect()));
            } else {
                tasks.push(Box::new(move || verify_lemma(m, n)));
            }
        }
    }
    tasks.push(Box::new(|| tiling_checks(12)));
    tasks.push(Box::new(move || verify_instance(&Instance::Chebyshev, cheb_order)));
    tasks.push(Box::new(|| vec![chebyshev_sign_pattern_check(20)]));

    tasks.par_iter().flat_map_iter(|t| t()).collect()
}

/// `a = b = 1` specialization of the Shapiro product.
pub fn a007598_check() -> CheckResult {
    let name = "A007598 specialization";
    let one = BigInt::from(1);
    let s = crate::closedform::shapiro_product().expand(9);
    let got: Vec<BigInt> = s.coeffs().iter().map(|c| c.eval(&one, &one)).collect();
    let expected: Vec<BigInt> = [1, 1, 4, 9, 25, 64, 169, 441, 1156, 3025]
        .into_iter()
        .map(BigInt::from)
        .collect();
    let display = RationalGF::parse("1 - x", "1 - 2x - 2x^2 + x^3").expect("valid literal");
    let special = RationalGF::parse("1 - x^2", "1 - x - 4x^2 - x^3 + x^4").expect("valid literal");
    if got != expected {
        CheckResult::fail(name, format!("coefficients {got:?}"))
    } else if !rgf_equal(&special, &display) {
        CheckResult::fail(name, "rational forms differ")
    } else {
        CheckResult::pass(name, "1, 1, 4, 9, 25, 64, 169, 441, 1156, 3025")
    }
}

/// `U_n(a) = i^n f_n(-2ai)` through the integer sign pattern, `n <= max_n`.
pub fn chebyshev_sign_pattern_check(max_n: u32) -> CheckResult {
    let name = "chebyshev sign pattern";
    for n in 0..=max_n {
        let via_fib = chebyshev_u_via_fib(n, Var::A);
        let rec = chebyshev_u(n, Var::A);
        if via_fib != rec {
            return CheckResult::fail(name, format!("n = {n}: {via_fib} vs {rec}"));
        }
    }
    CheckResult::pass(name, format!("n = 0..={max_n}"))
}

/// Single-line verdict for a batch.
pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}
