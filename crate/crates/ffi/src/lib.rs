//! C ABI over `linlike`. Maps are opaque handles; results come back as
//! NUL-terminated UTF-8 strings owned by the caller and released with
//! [`linlike_string_free`]. On failure the status is nonzero and
//! [`linlike_last_error`] returns a JSON error object for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use linlike::equivalence::{decide, Transformation};
use linlike::expr::parse_map;
use linlike::foliation::{build_configuration, Configuration};
use linlike::oracle::{check_correspondence, DEFAULT_BUDGET};
use linlike::render::{render_svg, Viewport};
use linlike::report::{ConfigurationJson, ErrorCode, ErrorJson, VerdictJson};

/// Result of every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinlikeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    NotSubmersion = 4,
    OracleScope = 5,
    Render = 6,
    InvalidArgument = 7,
    Internal = 8,
}

/// A validated map together with its configuration.
pub struct LinlikeMap {
    conf: Configuration,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: LinlikeStatus,
    payload: ErrorJson,
}

impl Failure {
    fn new(status: LinlikeStatus, error: &'static str, message: impl Into<String>) -> Failure {
        Failure { status, payload: ErrorJson { error, message: message.into() } }
    }

    fn from_code(status: LinlikeStatus, e: &impl ErrorCode) -> Failure {
        Failure { status, payload: e.to_json() }
    }
}

fn set_last_error(payload: Option<&ErrorJson>) {
    let text = payload.map(|p| {
        let json = serde_json::to_string(p).unwrap_or_default();
        CString::new(json).unwrap_or_default()
    });
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

/// Runs `f`, recording any failure (including a panic) as the last error.
fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> LinlikeStatus {
    let result = catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| Err(Failure::new(LinlikeStatus::Internal, "INTERNAL", "internal invariant violated")));
    match result {
        Ok(()) => {
            set_last_error(None);
            LinlikeStatus::Ok
        }
        Err(failure) => {
            set_last_error(Some(&failure.payload));
            failure.status
        }
    }
}

/// # Safety
/// `s` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::new(LinlikeStatus::NullPointer, "NULL_POINTER", "string argument is null"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Failure::new(LinlikeStatus::InvalidUtf8, "INVALID_UTF8", e.to_string()))
}

/// # Safety
/// `m` must be null or a handle from [`linlike_map_parse`].
unsafe fn read_map<'a>(m: *const LinlikeMap) -> Result<&'a LinlikeMap, Failure> {
    m.as_ref().ok_or_else(|| Failure::new(LinlikeStatus::NullPointer, "NULL_POINTER", "map handle is null"))
}

/// # Safety
/// `out` must be null or valid for writing one pointer.
unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(LinlikeStatus::NullPointer, "NULL_POINTER", "output pointer is null"));
    }
    let c = CString::new(text).map_err(|e| Failure::new(LinlikeStatus::Internal, "INTERNAL", e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types serialize")
}

/// Parses and validates `expr`, storing a new handle in `*out`.
///
/// # Safety
/// `expr` must be a NUL-terminated string and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn linlike_map_parse(expr: *const c_char, out: *mut *mut LinlikeMap) -> LinlikeStatus {
    guarded(|| {
        if out.is_null() {
            return Err(Failure::new(LinlikeStatus::NullPointer, "NULL_POINTER", "output pointer is null"));
        }
        let map = parse_map(read_str(expr)?).map_err(|e| Failure::from_code(LinlikeStatus::Parse, &e))?;
        let conf = build_configuration(&map).map_err(|e| Failure::from_code(LinlikeStatus::NotSubmersion, &e))?;
        *out = Box::into_raw(Box::new(LinlikeMap { conf }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `m` must be null or a handle from [`linlike_map_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn linlike_map_free(m: *mut LinlikeMap) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of real zeros of `s`, or -1 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn linlike_map_vertical_count(m: *const LinlikeMap) -> i64 {
    m.as_ref().map_or(-1, |m| m.conf.k() as i64)
}

/// Configuration JSON of `m`.
///
/// # Safety
/// `m` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn linlike_analyze_json(m: *const LinlikeMap, out: *mut *mut c_char) -> LinlikeStatus {
    guarded(|| {
        let m = read_map(m)?;
        write_string(out, to_json(&ConfigurationJson::from(&m.conf)))
    })
}

/// Verdict JSON comparing `p` and `q`.
///
/// # Safety
/// `p`, `q` must be live handles and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn linlike_compare_json(
    p: *const LinlikeMap,
    q: *const LinlikeMap,
    out: *mut *mut c_char,
) -> LinlikeStatus {
    guarded(|| {
        let (p, q) = (read_map(p)?, read_map(q)?);
        write_string(out, to_json(&VerdictJson::from(&decide(&p.conf, &q.conf))))
    })
}

/// Oracle report JSON. `transformation` may be null, meaning the witness of
/// the comparison or Identity; `budget` 0 selects the default.
///
/// # Safety
/// `p`, `q` must be live handles, `transformation` null or a NUL-terminated
/// string, and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn linlike_oracle_json(
    p: *const LinlikeMap,
    q: *const LinlikeMap,
    transformation: *const c_char,
    budget: u32,
    out: *mut *mut c_char,
) -> LinlikeStatus {
    guarded(|| {
        let (p, q) = (read_map(p)?, read_map(q)?);
        let t = if transformation.is_null() {
            decide(&p.conf, &q.conf).witness().map_or(Transformation::Identity, |w| w.transformation)
        } else {
            read_str(transformation)?
                .parse()
                .map_err(|e: String| Failure::new(LinlikeStatus::InvalidArgument, "TRANSFORMATION", e))?
        };
        let budget = if budget == 0 { DEFAULT_BUDGET } else { budget };
        let report = check_correspondence(&p.conf, &q.conf, t, 1, budget)
            .map_err(|e| Failure::from_code(LinlikeStatus::OracleScope, &e))?;
        write_string(out, to_json(&report))
    })
}

/// SVG portrait of `m` in the default viewport at `width` by `height` pixels.
///
/// # Safety
/// `m` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn linlike_render_svg(
    m: *const LinlikeMap,
    width: u32,
    height: u32,
    out: *mut *mut c_char,
) -> LinlikeStatus {
    guarded(|| {
        let m = read_map(m)?;
        let vp = Viewport { width_px: width, height_px: height, ..Viewport::around(&m.conf) };
        let svg = render_svg(&m.conf, &vp).map_err(|e| Failure::from_code(LinlikeStatus::Render, &e))?;
        write_string(out, svg)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn linlike_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// JSON error object of the last failed call on this thread, or null.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn linlike_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn linlike_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
