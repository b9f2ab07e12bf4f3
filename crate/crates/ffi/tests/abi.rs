use std::ffi::{CStr, CString};
use std::ptr;

use hadamard_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    ht_string_free(s);
    out
}

unsafe fn parse(num: &str, den: &str) -> *mut HtRationalGf {
    let mut gf = ptr::null_mut();
    assert_eq!(ht_rgf_parse(c(num).as_ptr(), c(den).as_ptr(), &mut gf), HtStatus::Ok);
    gf
}

#[test]
fn expand_and_read_coefficients() {
    unsafe {
        let gf = parse("1", "1 - a*x - x^2");
        let mut s = ptr::null_mut();
        assert_eq!(ht_rgf_expand(gf, 4, &mut s), HtStatus::Ok);
        assert_eq!(ht_series_order(s), 4);
        assert_eq!(take(ht_series_coeff_string(s, 4)), "1 + 3*a^2 + a^4");
        assert!(ht_series_coeff_string(s, 5).is_null());

        let json = take(ht_series_to_json(s));
        let mut back = ptr::null_mut();
        assert_eq!(ht_series_from_json(c(&json).as_ptr(), &mut back), HtStatus::Ok);
        assert_eq!(take(ht_series_to_json(back)), json);

        ht_series_free(back);
        ht_series_free(s);
        ht_rgf_free(gf);
    }
}

#[test]
fn hadamard_matches_closed_form() {
    unsafe {
        let u = parse("1", "1 - a*x - x^2");
        let v = parse("1", "1 - b*x - x^2");
        let mut h = ptr::null_mut();
        assert_eq!(ht_hadamard_rational(u, v, &mut h), HtStatus::Ok);
        assert_eq!(
            take(ht_rgf_den_string(h)),
            "1 - (a*b)*x - (2 + a^2 + b^2)*x^2 - (a*b)*x^3 + x^4"
        );

        let mut closed = ptr::null_mut();
        assert_eq!(ht_closed_form(HtTheorem::Shapiro, 0, 0, &mut closed), HtStatus::Ok);
        let mut eq = false;
        assert_eq!(ht_rgf_equal(h, closed, &mut eq), HtStatus::Ok);
        assert!(eq);

        let (mut su, mut sv, mut sh) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(ht_rgf_expand(u, 10, &mut su), HtStatus::Ok);
        assert_eq!(ht_rgf_expand(v, 10, &mut sv), HtStatus::Ok);
        assert_eq!(ht_hadamard_series(su, sv, &mut sh), HtStatus::Ok);
        let mut sc = ptr::null_mut();
        assert_eq!(ht_rgf_expand(closed, 10, &mut sc), HtStatus::Ok);
        assert_eq!(take(ht_series_to_json(sh)), take(ht_series_to_json(sc)));

        for s in [su, sv, sh, sc] {
            ht_series_free(s);
        }
        for g in [u, v, h, closed] {
            ht_rgf_free(g);
        }
    }
}

#[test]
fn errors_carry_codes_and_positions() {
    unsafe {
        let mut gf = ptr::null_mut();
        assert_eq!(
            ht_rgf_parse(c("1 + ").as_ptr(), c("1 - x").as_ptr(), &mut gf),
            HtStatus::ParseError
        );
        assert!(gf.is_null());
        assert_eq!(ht_last_error_position(), 4);
        let msg = CStr::from_ptr(ht_last_error_message()).to_str().unwrap();
        assert!(msg.contains("position 4"), "{msg}");

        assert_eq!(
            ht_rgf_parse(c("1").as_ptr(), c("2 - x").as_ptr(), &mut gf),
            HtStatus::DomainError
        );
        assert_eq!(ht_last_error_position(), -1);
        assert_eq!(
            ht_rgf_parse(ptr::null(), c("1").as_ptr(), &mut gf),
            HtStatus::NullPointer
        );
        assert_eq!(ht_closed_form(HtTheorem::T1, 0, 0, &mut gf), HtStatus::DomainError);
        assert_eq!(ht_closed_form(HtTheorem::Lemma, 1, 1, &mut gf), HtStatus::DomainError);
        assert!(gf.is_null());

        let mut s = ptr::null_mut();
        let g = parse("1", "1 - x");
        assert_eq!(ht_rgf_expand(g, 201, &mut s), HtStatus::DomainError);
        ht_rgf_free(g);

        // Null handles are tolerated by the free functions.
        ht_rgf_free(ptr::null_mut());
        ht_series_free(ptr::null_mut());
        ht_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_through_the_abi() {
    unsafe {
        let mut passed = false;
        let (m, n) = (4i64, 3i64);
        assert_eq!(ht_verify(HtTheorem::T4, &m, &n, 40, &mut passed), HtStatus::Ok);
        assert!(passed);
        assert_eq!(ht_verify(HtTheorem::Lemma, &m, &n, 40, &mut passed), HtStatus::Ok);
        assert!(passed);
        assert_eq!(
            ht_verify(HtTheorem::T3, &m, ptr::null(), 40, &mut passed),
            HtStatus::DomainError
        );
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/hadamard.h")).unwrap();
    for name in [
        "ht_rgf_parse",
        "ht_rgf_free",
        "ht_rgf_expand",
        "ht_hadamard_rational",
        "ht_rgf_equal",
        "ht_closed_form",
        "ht_verify",
        "ht_series_coeff_string",
        "ht_series_to_json",
        "ht_series_from_json",
        "ht_hadamard_series",
        "ht_last_error_message",
        "ht_string_free",
        "HT_STATUS_PARSE_ERROR",
        "typedef struct HtRationalGf HtRationalGf",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/hadamard.h");
    let Ok(status) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header])
        .status()
    else {
        eprintln!("no C compiler on PATH; skipping");
        return;
    };
    assert!(status.success());
}
