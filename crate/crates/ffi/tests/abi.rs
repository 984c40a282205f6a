use std::ffi::{CStr, CString};
use std::ptr;

use linlike_ffi::*;

fn parse(expr: &str) -> *mut LinlikeMap {
    let text = CString::new(expr).unwrap();
    let mut m = ptr::null_mut();
    let status = unsafe { linlike_map_parse(text.as_ptr(), &mut m) };
    assert_eq!(status, LinlikeStatus::Ok, "{expr}");
    m
}

fn take(s: *mut std::ffi::c_char) -> serde_json::Value {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { linlike_string_free(s) };
    serde_json::from_str(&text).unwrap()
}

fn last_error() -> serde_json::Value {
    let p = linlike_last_error();
    assert!(!p.is_null());
    serde_json::from_str(unsafe { CStr::from_ptr(p) }.to_str().unwrap()).unwrap()
}

#[test]
fn analyze_roundtrip() {
    let m = parse("x + x^3*y");
    assert_eq!(unsafe { linlike_map_vertical_count(m) }, 1);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { linlike_analyze_json(m, &mut out) }, LinlikeStatus::Ok);
    let v = take(out);
    assert_eq!(v["tokens"][0]["text"], "L(-)");
    assert_eq!(v["tokens"][1]["text"], "R(-)");
    assert!(linlike_last_error().is_null());
    unsafe { linlike_map_free(m) };
}

#[test]
fn compare_fixture() {
    let p = parse("x + x^3*y");
    let q = parse("-x - x^3*y");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { linlike_compare_json(p, q, &mut out) }, LinlikeStatus::Ok);
    let v = take(out);
    assert_eq!(v["function_top"], true);
    assert_eq!(v["function_o"], false);
    assert_eq!(v["obstructions"]["function_o"], "EXTENSION_FAILS");
    unsafe {
        linlike_map_free(p);
        linlike_map_free(q);
    }
}

#[test]
fn oracle_and_render() {
    let p = parse("x + x^3*y");
    let q = parse("-x - x^3*y");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { linlike_oracle_json(p, q, ptr::null(), 0, &mut out) }, LinlikeStatus::Ok);
    let v = take(out);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);

    let bogus = CString::new("Twist").unwrap();
    let status = unsafe { linlike_oracle_json(p, q, bogus.as_ptr(), 0, &mut out) };
    assert_eq!(status, LinlikeStatus::InvalidArgument);

    assert_eq!(unsafe { linlike_render_svg(p, 320, 240, &mut out) }, LinlikeStatus::Ok);
    let svg = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    unsafe { linlike_string_free(out) };
    assert!(svg.contains(r#"width="320""#));
    assert_eq!(unsafe { linlike_render_svg(p, 0, 240, &mut out) }, LinlikeStatus::Render);
    assert_eq!(last_error()["error"], "EMPTY_VIEWPORT");
    unsafe {
        linlike_map_free(p);
        linlike_map_free(q);
    }
}

#[test]
fn errors_are_reported() {
    let mut m = ptr::null_mut();
    let bad = CString::new("x + x*y").unwrap();
    assert_eq!(unsafe { linlike_map_parse(bad.as_ptr(), &mut m) }, LinlikeStatus::NotSubmersion);
    assert!(m.is_null());
    assert_eq!(last_error()["error"], "SIMPLE_ZERO");

    let bad = CString::new("x +").unwrap();
    assert_eq!(unsafe { linlike_map_parse(bad.as_ptr(), &mut m) }, LinlikeStatus::Parse);
    assert_eq!(last_error()["error"], "SYNTAX");

    assert_eq!(unsafe { linlike_map_parse(ptr::null(), &mut m) }, LinlikeStatus::NullPointer);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { linlike_analyze_json(ptr::null(), &mut out) }, LinlikeStatus::NullPointer);
    assert_eq!(unsafe { linlike_map_vertical_count(ptr::null()) }, -1);
    unsafe {
        linlike_map_free(ptr::null_mut());
        linlike_string_free(ptr::null_mut());
    }
}

#[test]
fn oracle_scope_error() {
    let p = parse("x + (x^2-2)^2*y");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { linlike_oracle_json(p, p, ptr::null(), 0, &mut out) }, LinlikeStatus::OracleScope);
    assert_eq!(last_error()["error"], "ORACLE_SCOPE");
    unsafe { linlike_map_free(p) };
}

#[test]
fn version_and_header() {
    let v = unsafe { CStr::from_ptr(linlike_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    let header = include_str!("../include/linlike.h");
    for name in
        ["linlike_map_parse", "linlike_map_free", "linlike_last_error", "linlike_string_free", "LINLIKE_STATUS_OK"]
    {
        assert!(header.contains(name), "{name}");
    }
}
