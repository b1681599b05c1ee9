//! C ABI over `tpnil`.
//!
//! Results are returned through opaque handles (`TpnilHomology`, `TpnilTpReport`)
//! that the caller releases with the matching `*_free` function. Every fallible
//! call returns a `TpnilStatus`; on failure `tpnil_last_error` describes the cause.
//! Strings returned by `*_to_json` are owned by the caller and released with
//! `tpnil_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tpnil::homology::{verify_weight_piece, weight_homology, WeightHomology};
use tpnil::tate_tp::{nil_invariance_report, p_adic_valuation, relative_tp, Branch, Prime, Sup, TpReport};
use tpnil::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TpnilStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    OutOfRange = 3,
    Overflow = 4,
    Panic = 5,
}

/// Reduced homology of one weight piece.
pub struct TpnilHomology {
    inner: WeightHomology,
}

/// A truncated `TP_j` factor table with its verdicts.
pub struct TpnilTpReport {
    inner: TpReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: TpnilStatus, msg: impl Into<String>) -> TpnilStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> TpnilStatus {
    fail(TpnilStatus::InvalidArgument, e.to_string())
}

fn guard(f: impl FnOnce() -> TpnilStatus) -> TpnilStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(TpnilStatus::Panic, "internal panic"),
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> TpnilStatus {
    if out.is_null() {
        return fail(TpnilStatus::NullPointer, "output pointer is null");
    }
    out.write(value);
    TpnilStatus::Ok
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the most recent failure on this thread; empty if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tpnil_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn tpnil_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Computes reduced integral homology of the weight-`i` piece of `N^cy(Π_k)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle pointer.
#[no_mangle]
pub unsafe extern "C" fn tpnil_homology_new(k: u32, i: u64, out: *mut *mut TpnilHomology) -> TpnilStatus {
    guard(|| {
        if out.is_null() {
            return fail(TpnilStatus::NullPointer, "output pointer is null");
        }
        match weight_homology(k, i) {
            Ok(h) => write_out(out, Box::into_raw(Box::new(TpnilHomology { inner: h }))),
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `h` must be null or a handle from `tpnil_homology_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tpnil_homology_free(h: *mut TpnilHomology) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of degrees reported, `0..n`. Zero for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpnil_homology_num_degrees(h: *const TpnilHomology) -> usize {
    h.as_ref().map_or(0, |h| h.inner.groups.len())
}

unsafe fn with_homology(
    h: *const TpnilHomology,
    degree: usize,
    f: impl FnOnce(&WeightHomology) -> TpnilStatus,
) -> TpnilStatus {
    guard(|| {
        let Some(h) = h.as_ref() else {
            return fail(TpnilStatus::NullPointer, "homology handle is null");
        };
        if degree >= h.inner.groups.len() {
            return fail(TpnilStatus::OutOfRange, format!("degree {degree} out of range"));
        }
        f(&h.inner)
    })
}

/// Number of nondegenerate simplices in `degree`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tpnil_homology_basis_size(
    h: *const TpnilHomology,
    degree: usize,
    out: *mut usize,
) -> TpnilStatus {
    with_homology(h, degree, |h| write_out(out, h.basis_sizes[degree]))
}

/// Free rank of `H̃_degree`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tpnil_homology_rank(h: *const TpnilHomology, degree: usize, out: *mut usize) -> TpnilStatus {
    with_homology(h, degree, |h| write_out(out, h.group(degree).rank))
}

/// Number of torsion invariant factors of `H̃_degree`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tpnil_homology_torsion_len(
    h: *const TpnilHomology,
    degree: usize,
    out: *mut usize,
) -> TpnilStatus {
    with_homology(h, degree, |h| write_out(out, h.group(degree).torsion.len()))
}

/// The `index`-th torsion coefficient of `H̃_degree`; `Overflow` if it exceeds 64 bits.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tpnil_homology_torsion(
    h: *const TpnilHomology,
    degree: usize,
    index: usize,
    out: *mut u64,
) -> TpnilStatus {
    with_homology(h, degree, |h| {
        let group = h.group(degree);
        let Some(d) = group.torsion.get(index) else {
            return fail(TpnilStatus::OutOfRange, format!("torsion index {index} out of range"));
        };
        match u64::try_from(d) {
            Ok(v) => write_out(out, v),
            Err(_) => fail(
                TpnilStatus::Overflow,
                format!("torsion coefficient {d} exceeds 64 bits"),
            ),
        }
    })
}

/// JSON rendering of the homology table; NULL on failure.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpnil_homology_to_json(h: *const TpnilHomology) -> *mut c_char {
    match h.as_ref() {
        Some(h) => serde_json_string(&h.inner),
        None => {
            set_error("homology handle is null");
            ptr::null_mut()
        }
    }
}

/// Checks the weight-`i` homology against `Z` in degrees `2⌊(i-1)/k⌋` and one above.
///
/// # Safety
/// `matches` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tpnil_verify_weight_piece(k: u32, i: u64, matches: *mut bool) -> TpnilStatus {
    guard(|| match verify_weight_piece(k, i) {
        Ok(check) => write_out(matches, check.matches),
        Err(e) => from_error(e),
    })
}

/// Builds the factor table of `TP_j(F_p[x]/(x^k), (x))` for weights `1..=truncation`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle pointer.
#[no_mangle]
pub unsafe extern "C" fn tpnil_tp_new(
    p: u64,
    k: u32,
    j: i64,
    truncation: u64,
    out: *mut *mut TpnilTpReport,
) -> TpnilStatus {
    guard(|| {
        if out.is_null() {
            return fail(TpnilStatus::NullPointer, "output pointer is null");
        }
        let report = Prime::new(p).and_then(|p| relative_tp(p, k, j, truncation));
        match report {
            Ok(r) => write_out(out, Box::into_raw(Box::new(TpnilTpReport { inner: r }))),
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `r` must be null or a handle from `tpnil_tp_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tpnil_tp_free(r: *mut TpnilTpReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of listed factors; zero in even degrees or for a null handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpnil_tp_num_factors(r: *const TpnilTpReport) -> usize {
    r.as_ref().map_or(0, |r| r.inner.factors.len())
}

/// The factor `Z/p^exponent` at position `index`, with its source weight and branch.
///
/// # Safety
/// `r` must be a live handle; the three output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn tpnil_tp_factor(
    r: *const TpnilTpReport,
    index: usize,
    weight: *mut u64,
    exponent: *mut u32,
    multiple_of_k: *mut bool,
) -> TpnilStatus {
    guard(|| {
        let Some(r) = r.as_ref() else {
            return fail(TpnilStatus::NullPointer, "report handle is null");
        };
        let Some(f) = r.inner.factors.get(index) else {
            return fail(TpnilStatus::OutOfRange, format!("factor index {index} out of range"));
        };
        if weight.is_null() || exponent.is_null() || multiple_of_k.is_null() {
            return fail(TpnilStatus::NullPointer, "output pointer is null");
        }
        weight.write(f.source_weight);
        exponent.write(f.exponent);
        multiple_of_k.write(f.branch == Branch::MultipleOfK);
        TpnilStatus::Ok
    })
}

/// # Safety
/// `r` must be a live handle; both output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn tpnil_tp_verdicts(
    r: *const TpnilTpReport,
    integral_iso: *mut bool,
    p_inverted_iso: *mut bool,
) -> TpnilStatus {
    guard(|| {
        let Some(r) = r.as_ref() else {
            return fail(TpnilStatus::NullPointer, "report handle is null");
        };
        if integral_iso.is_null() || p_inverted_iso.is_null() {
            return fail(TpnilStatus::NullPointer, "output pointer is null");
        }
        integral_iso.write(r.inner.verdicts.integral_iso);
        p_inverted_iso.write(r.inner.verdicts.p_inverted_iso);
        TpnilStatus::Ok
    })
}

/// JSON rendering of the report; NULL on failure.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tpnil_tp_to_json(r: *const TpnilTpReport) -> *mut c_char {
    match r.as_ref() {
        Some(r) => serde_json_string(&r.inner),
        None => {
            set_error("report handle is null");
            ptr::null_mut()
        }
    }
}

/// Nil-invariance verdicts for `(p, k)`. `exponent_sup` receives the supremum of
/// factor exponents, or -1 when it is infinite.
///
/// # Safety
/// All output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn tpnil_verdict(
    p: u64,
    k: u32,
    integral_iso: *mut bool,
    p_inverted_iso: *mut bool,
    exponent_sup: *mut i64,
) -> TpnilStatus {
    guard(|| {
        if integral_iso.is_null() || p_inverted_iso.is_null() || exponent_sup.is_null() {
            return fail(TpnilStatus::NullPointer, "output pointer is null");
        }
        match Prime::new(p).and_then(|p| nil_invariance_report(p, k)) {
            Ok(v) => {
                integral_iso.write(v.integral_iso);
                p_inverted_iso.write(v.p_inverted_iso);
                exponent_sup.write(match v.exponent_sup.value {
                    Sup::Finite(r) => r as i64,
                    Sup::Infinite => -1,
                });
                TpnilStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tpnil_p_adic_valuation(p: u64, i: u64, out: *mut u32) -> TpnilStatus {
    guard(|| match Prime::new(p).and_then(|p| p_adic_valuation(p, i)) {
        Ok(v) => write_out(out, v),
        Err(e) => from_error(e),
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tpnil_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn serde_json_string<T: serde::Serialize>(value: &T) -> *mut c_char {
    match serde_json::to_string(value) {
        Ok(s) => to_c_string(s),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}
