//! C ABI over `hadamard_core`.
//!
//! Objects cross the boundary as opaque heap handles that the caller frees
//! with the matching `*_free` function. Every fallible call returns an
//! [`HtStatus`]; on failure the message is available from
//! [`ht_last_error_message`] on the same thread. Strings returned by the
//! library are owned by the caller and released with [`ht_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hadamard_core::closedform::Instance;
use hadamard_core::verify::{all_passed, verify_theorem, Theorem};
use hadamard_core::{hadamard_rational, hadamard_series, rgf_equal, Error, RationalGF, SeriesTrunc};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HtStatus {
    Ok = 0,
    ParseError = 1,
    DomainError = 2,
    InternalError = 3,
    AuditError = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

/// Closed-form families for [`ht_closed_form`] and [`ht_verify`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HtTheorem {
    Shapiro = 0,
    T1 = 1,
    T2 = 2,
    T3 = 3,
    T4 = 4,
    Lemma = 5,
    B0 = 6,
    Cheb = 7,
    All = 8,
}

/// A rational generating function `num / den` in `x` over `Z[a, b]`.
pub struct HtRationalGf(RationalGF);

/// A truncated power series in `x` over `Z[a, b]`.
pub struct HtSeries(SeriesTrunc);

struct LastError {
    message: CString,
    position: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

fn set_error(status: HtStatus, message: String, position: i64) -> HtStatus {
    let message = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(LastError { message, position }));
    status
}

fn from_core(e: Error) -> HtStatus {
    let (status, pos) = match &e {
        Error::Parse { pos, .. } => (HtStatus::ParseError, *pos as i64),
        Error::Domain(_) => (HtStatus::DomainError, -1),
        Error::Internal(_) => (HtStatus::InternalError, -1),
        Error::Audit(_) => (HtStatus::AuditError, -1),
    };
    set_error(status, e.to_string(), pos)
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), HtStatus>) -> HtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HtStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => set_error(HtStatus::Panic, "panic inside hadamard library".into(), -1),
    }
}

fn null_error(what: &str) -> HtStatus {
    set_error(HtStatus::NullPointer, format!("{what} is null"), -1)
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, HtStatus> {
    if p.is_null() {
        return Err(null_error(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| set_error(HtStatus::InvalidUtf8, format!("{what} is not valid UTF-8"), -1))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, HtStatus> {
    p.as_ref().ok_or_else(|| null_error(what))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), HtStatus> {
    if out.is_null() {
        return Err(null_error("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the most recent failure on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ht_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |e| e.message.as_ptr()))
}

/// Byte offset of the most recent syntax error on this thread, or -1.
#[no_mangle]
pub extern "C" fn ht_last_error_position() -> i64 {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(-1, |e| e.position))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ht_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `num / den`. The denominator must have constant term 1 (or -1,
/// which is normalized).
///
/// # Safety
/// `num` and `den` must be nul-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_rgf_parse(num: *const c_char, den: *const c_char, out: *mut *mut HtRationalGf) -> HtStatus {
    guard(|| {
        let num = read_str(num, "num")?;
        let den = read_str(den, "den")?;
        let gf = RationalGF::parse(num, den).map_err(from_core)?;
        write_out(out, HtRationalGf(gf))
    })
}

/// # Safety
/// `gf` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ht_rgf_free(gf: *mut HtRationalGf) {
    if !gf.is_null() {
        drop(Box::from_raw(gf));
    }
}

/// Numerator in the CLI's text form. Free with [`ht_string_free`].
///
/// # Safety
/// `gf` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ht_rgf_num_string(gf: *const HtRationalGf) -> *mut c_char {
    gf.as_ref()
        .map_or(ptr::null_mut(), |g| to_c_string(g.0.num().to_string()))
}

/// Denominator in the CLI's text form. Free with [`ht_string_free`].
///
/// # Safety
/// `gf` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ht_rgf_den_string(gf: *const HtRationalGf) -> *mut c_char {
    gf.as_ref()
        .map_or(ptr::null_mut(), |g| to_c_string(g.0.den().to_string()))
}

/// Series expansion through `x^order`.
///
/// # Safety
/// `gf` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_rgf_expand(gf: *const HtRationalGf, order: usize, out: *mut *mut HtSeries) -> HtStatus {
    guard(|| {
        let gf = deref(gf, "gf")?;
        if order > hadamard_core::verify::MAX_ORDER {
            return Err(from_core(Error::Domain(format!("order {order} is too large"))));
        }
        write_out(out, HtSeries(gf.0.expand(order)))
    })
}

/// Rational Hadamard product of `u` and `v`.
///
/// # Safety
/// `u`, `v` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_hadamard_rational(
    u: *const HtRationalGf,
    v: *const HtRationalGf,
    out: *mut *mut HtRationalGf,
) -> HtStatus {
    guard(|| {
        let (u, v) = (deref(u, "u")?, deref(v, "v")?);
        let h = hadamard_rational(&u.0, &v.0).map_err(from_core)?;
        write_out(out, HtRationalGf(h))
    })
}

/// Sets `*equal` to whether `u` and `v` are the same rational function.
///
/// # Safety
/// `u`, `v` must be live handles; `equal` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_rgf_equal(u: *const HtRationalGf, v: *const HtRationalGf, equal: *mut bool) -> HtStatus {
    guard(|| {
        let (u, v) = (deref(u, "u")?, deref(v, "v")?);
        if equal.is_null() {
            return Err(null_error("equal"));
        }
        *equal = rgf_equal(&u.0, &v.0);
        Ok(())
    })
}

/// Closed form of one family. `m` and `n` are ignored where unused.
/// `Lemma` and `All` have no closed form and give a domain error.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_closed_form(theorem: HtTheorem, m: i64, n: i64, out: *mut *mut HtRationalGf) -> HtStatus {
    guard(|| {
        let inst = match theorem {
            HtTheorem::Shapiro => Instance::Shapiro,
            HtTheorem::T1 => Instance::Thm1 { n },
            HtTheorem::T2 => Instance::Thm2 { m },
            HtTheorem::T3 => Instance::Thm3 { m, n },
            HtTheorem::T4 => Instance::Thm4 { m, n },
            HtTheorem::B0 => Instance::B0 { m, n },
            HtTheorem::Cheb => Instance::Chebyshev,
            HtTheorem::Lemma | HtTheorem::All => {
                return Err(from_core(Error::Domain(format!("{theorem:?} has no closed form"))))
            }
        };
        let gf = inst.closed_form().map_err(from_core)?;
        write_out(out, HtRationalGf(gf))
    })
}

/// Runs the verifier. `m` and `n` may be null when the family does not use
/// them. `*passed` receives the overall verdict.
///
/// # Safety
/// `m`, `n` must be null or readable; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_verify(
    theorem: HtTheorem,
    m: *const i64,
    n: *const i64,
    order: usize,
    passed: *mut bool,
) -> HtStatus {
    guard(|| {
        if passed.is_null() {
            return Err(null_error("passed"));
        }
        let th = match theorem {
            HtTheorem::Shapiro => Theorem::Shapiro,
            HtTheorem::T1 => Theorem::T1,
            HtTheorem::T2 => Theorem::T2,
            HtTheorem::T3 => Theorem::T3,
            HtTheorem::T4 => Theorem::T4,
            HtTheorem::Lemma => Theorem::Lemma,
            HtTheorem::B0 => Theorem::B0,
            HtTheorem::Cheb => Theorem::Cheb,
            HtTheorem::All => Theorem::All,
        };
        let results = verify_theorem(th, m.as_ref().copied(), n.as_ref().copied(), order).map_err(from_core)?;
        *passed = all_passed(&results);
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ht_series_free(s: *mut HtSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Highest stored power of `x`, or 0 for null.
///
/// # Safety
/// `s` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ht_series_order(s: *const HtSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.order())
}

/// Coefficient of `x^k` as text, or null past the order. Free with
/// [`ht_string_free`].
///
/// # Safety
/// `s` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ht_series_coeff_string(s: *const HtSeries, k: usize) -> *mut c_char {
    match s.as_ref() {
        Some(s) if k <= s.0.order() => to_c_string(s.0.coeff(k).to_string()),
        _ => ptr::null_mut(),
    }
}

/// `{"order": N, "coeffs": [...]}`. Free with [`ht_string_free`].
///
/// # Safety
/// `s` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ht_series_to_json(s: *const HtSeries) -> *mut c_char {
    s.as_ref().map_or(ptr::null_mut(), |s| to_c_string(s.0.to_json()))
}

/// Inverse of [`ht_series_to_json`].
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_series_from_json(json: *const c_char, out: *mut *mut HtSeries) -> HtStatus {
    guard(|| {
        let json = read_str(json, "json")?;
        let s = SeriesTrunc::from_json(json).map_err(from_core)?;
        write_out(out, HtSeries(s))
    })
}

/// Coefficientwise product of two series of the same order.
///
/// # Safety
/// `s`, `t` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_hadamard_series(
    s: *const HtSeries,
    t: *const HtSeries,
    out: *mut *mut HtSeries,
) -> HtStatus {
    guard(|| {
        let (s, t) = (deref(s, "s")?, deref(t, "t")?);
        let h = hadamard_series(&s.0, &t.0).map_err(from_core)?;
        write_out(out, HtSeries(h))
    })
}
