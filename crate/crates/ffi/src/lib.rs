//! C ABI over `trichor`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `_free` function. Every fallible call returns a
//! [`TrichorStatus`]; on failure a message is available from
//! [`trichor_last_error`] on the same thread. Strings returned through out
//! parameters are heap allocated and must be released with
//! [`trichor_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use trichor::catalan::{catalan, catalan_generalized};
use trichor::charging::{audit, AuditOptions, ChargingError, FlipTreeError};
use trichor::enumerate::{EnumerateError, Enumerator};
use trichor::geom::{augment, AugmentedPointSet, Point, PointSet};
use trichor::polygon::{count_triangulations, SimplePolygon};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrichorStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Input is degenerate: collinear triples, duplicates, not simple.
    Geometry = 3,
    CapExceeded = 4,
    OutOfRange = 5,
    /// A Rust panic was caught at the boundary.
    Internal = 6,
}

/// Opaque point set.
pub struct TrichorPointSet {
    inner: PointSet,
}

/// Opaque simple polygon.
pub struct TrichorPolygon {
    inner: SimplePolygon,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: TrichorStatus, msg: impl Into<String>) -> TrichorStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> TrichorStatus) -> TrichorStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(TrichorStatus::Internal, "internal panic"),
    }
}

fn enumerate_status(e: &EnumerateError) -> TrichorStatus {
    match e {
        EnumerateError::CapExceeded(_) => TrichorStatus::CapExceeded,
        EnumerateError::Geom(_) => TrichorStatus::Geometry,
        _ => TrichorStatus::InvalidArgument,
    }
}

/// Stores `s` in `*out` as an owned C string.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> TrichorStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            TrichorStatus::Ok
        }
        Err(_) => fail(TrichorStatus::Internal, "string contains a nul byte"),
    }
}

unsafe fn read_points(xs: *const i64, ys: *const i64, len: usize) -> Option<Vec<Point>> {
    if len > 0 && (xs.is_null() || ys.is_null()) {
        return None;
    }
    if len == 0 {
        return Some(Vec::new());
    }
    let (xs, ys) = (slice::from_raw_parts(xs, len), slice::from_raw_parts(ys, len));
    Some(xs.iter().zip(ys).map(|(&x, &y)| Point::new(x, y)).collect())
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn trichor_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn trichor_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version has no interior nul"),
    };
    VERSION.as_ptr()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn trichor_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `C_m` as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trichor_catalan(m: u32, out: *mut *mut c_char) -> TrichorStatus {
    if out.is_null() {
        return fail(TrichorStatus::NullPointer, "out is null");
    }
    guard(|| write_string(out, catalan(m).to_string()))
}

/// `C^(r)_n` as a decimal string; `OutOfRange` unless `2r <= n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trichor_catalan_generalized(n: u32, r: u32, out: *mut *mut c_char) -> TrichorStatus {
    if out.is_null() {
        return fail(TrichorStatus::NullPointer, "out is null");
    }
    guard(|| match catalan_generalized(n, r) {
        Ok(v) => write_string(out, v.to_string()),
        Err(e) => fail(TrichorStatus::OutOfRange, e.to_string()),
    })
}

/// Builds a point set from coordinate arrays of length `len`. Rejects sets
/// that are not in general position.
///
/// # Safety
/// `xs` and `ys` must point to `len` readable values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn trichor_point_set_new(
    xs: *const i64,
    ys: *const i64,
    len: usize,
    out: *mut *mut TrichorPointSet,
) -> TrichorStatus {
    if out.is_null() {
        return fail(TrichorStatus::NullPointer, "out is null");
    }
    guard(|| {
        let Some(points) = read_points(xs, ys, len) else {
            return fail(TrichorStatus::NullPointer, "coordinate array is null");
        };
        match PointSet::new(points) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(TrichorPointSet { inner }));
                TrichorStatus::Ok
            }
            Err(e) => fail(TrichorStatus::Geometry, e.to_string()),
        }
    })
}

/// # Safety
/// `set` must come from [`trichor_point_set_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn trichor_point_set_free(set: *mut TrichorPointSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Number of points, or 0 for null.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn trichor_point_set_len(set: *const TrichorPointSet) -> usize {
    set.as_ref().map_or(0, |s| s.inner.len())
}

/// Number of triangulations as a decimal string. A set whose hull is a
/// triangle with points inside is counted as the framed set; `cap = 0`
/// means no cap.
///
/// # Safety
/// `set` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn trichor_count_triangulations(
    set: *const TrichorPointSet,
    cap: u64,
    out: *mut *mut c_char,
) -> TrichorStatus {
    let (Some(set), false) = (set.as_ref(), out.is_null()) else {
        return fail(TrichorStatus::NullPointer, "null argument");
    };
    guard(|| {
        let e = Enumerator::new().cap((cap > 0).then_some(cap));
        let r = match AugmentedPointSet::from_triangular_hull(&set.inner) {
            Some(aug) if aug.interior_count() > 0 => e.run(&aug),
            _ => e.run(&set.inner),
        };
        match r {
            Ok(r) => write_string(out, r.count.to_string()),
            Err(e) => fail(enumerate_status(&e), e.to_string()),
        }
    })
}

/// Runs the charging audit and writes the JSON report to `out`;
/// `*passed` is set to whether every check held. `cap = 0` means no cap.
///
/// # Safety
/// `set` must be a live handle; `out` and `passed` must be valid.
#[no_mangle]
pub unsafe extern "C" fn trichor_audit(
    set: *const TrichorPointSet,
    cap: u64,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> TrichorStatus {
    let (Some(set), false, false) = (set.as_ref(), out.is_null(), passed.is_null()) else {
        return fail(TrichorStatus::NullPointer, "null argument");
    };
    guard(|| {
        let aug = AugmentedPointSet::from_triangular_hull(&set.inner).unwrap_or_else(|| augment(&set.inner));
        let opts = AuditOptions { enumeration_cap: (cap > 0).then_some(cap), ..AuditOptions::default() };
        match audit(&aug, &opts) {
            Ok(report) => {
                *passed = report.passed();
                write_string(out, serde_json::to_string(&report.to_json()).expect("report serializes"))
            }
            Err(e) => {
                let status = match &e {
                    ChargingError::Enumerate(inner) => enumerate_status(inner),
                    ChargingError::FlipTree(FlipTreeError::CapExceeded { .. }) => TrichorStatus::CapExceeded,
                    _ => TrichorStatus::Internal,
                };
                fail(status, e.to_string())
            }
        }
    })
}

/// Builds a simple polygon from CCW vertex arrays of length `len`.
///
/// # Safety
/// `xs` and `ys` must point to `len` readable values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn trichor_polygon_new(
    xs: *const i64,
    ys: *const i64,
    len: usize,
    out: *mut *mut TrichorPolygon,
) -> TrichorStatus {
    if out.is_null() {
        return fail(TrichorStatus::NullPointer, "out is null");
    }
    guard(|| {
        let Some(points) = read_points(xs, ys, len) else {
            return fail(TrichorStatus::NullPointer, "coordinate array is null");
        };
        match SimplePolygon::new(points) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(TrichorPolygon { inner }));
                TrichorStatus::Ok
            }
            Err(e) => fail(TrichorStatus::Geometry, e.to_string()),
        }
    })
}

/// # Safety
/// `poly` must come from [`trichor_polygon_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn trichor_polygon_free(poly: *mut TrichorPolygon) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Number of triangulations of the polygon as a decimal string.
///
/// # Safety
/// `poly` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn trichor_polygon_count(poly: *const TrichorPolygon, out: *mut *mut c_char) -> TrichorStatus {
    let (Some(poly), false) = (poly.as_ref(), out.is_null()) else {
        return fail(TrichorStatus::NullPointer, "null argument");
    };
    guard(|| write_string(out, count_triangulations(&poly.inner).to_string()))
}
