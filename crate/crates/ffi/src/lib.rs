//! C ABI over `gaugesplit`.
//!
//! Every fallible call returns a [`GsStatus`]; on failure a message is
//! available from [`gs_last_error`] on the same thread. Strings handed out
//! through `out` parameters are owned by the caller and released with
//! [`gs_string_free`]. Manifold handles are released with [`gs_spec_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gaugesplit::classifier::classify;
use gaugesplit::cli::decomposition_json;
use gaugesplit::decomposer::decompose;
use gaugesplit::homology::{homology_of_manifold, smith_normal_form, suspend};
use gaugesplit::manifold::{connected_sum, stabilize, validate, ManifoldSpec};
use gaugesplit::syntax::{parse_group, parse_matrix, parse_pi1, parse_primes};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Domain = 5,
    Panic = 6,
}

/// A validated manifold description.
pub struct GsSpec(ManifoldSpec);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(GsStatus, String);

fn fail(status: GsStatus, msg: impl ToString) -> Failure {
    Failure(status, msg.to_string())
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            GsStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            GsStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(GsStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(GsStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn read_spec<'a>(p: *const GsSpec) -> Result<&'a ManifoldSpec, Failure> {
    p.as_ref()
        .map(|s| &s.0)
        .ok_or_else(|| fail(GsStatus::NullArgument, "null manifold handle"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(GsStatus::NullArgument, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| fail(GsStatus::Domain, e))?;
    if out.is_null() {
        return Err(fail(GsStatus::NullArgument, "null output pointer"));
    }
    out.write(c.into_raw());
    Ok(())
}

unsafe fn write_spec(out: *mut *mut GsSpec, spec: ManifoldSpec) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(GsStatus::NullArgument, "null output pointer"));
    }
    out.write(Box::into_raw(Box::new(GsSpec(spec))));
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn gs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds and validates a manifold from a fundamental group such as `Z*Z/9`.
///
/// # Safety
/// `pi1` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_spec_new(
    pi1: *const c_char,
    b2: u32,
    sigma_f_trivial: bool,
    out: *mut *mut GsSpec,
) -> GsStatus {
    guard(|| {
        let pi1 = parse_pi1(read_str(pi1)?).map_err(|e| fail(GsStatus::Parse, e))?;
        let spec = validate(&ManifoldSpec::new(pi1, b2, sigma_f_trivial)).map_err(|e| fail(GsStatus::Validation, e))?;
        write_spec(out, spec)
    })
}

/// # Safety
/// `spec` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gs_spec_free(spec: *mut GsSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_spec_connected_sum(a: *const GsSpec, b: *const GsSpec, out: *mut *mut GsSpec) -> GsStatus {
    guard(|| {
        let sum = connected_sum(read_spec(a)?, read_spec(b)?).map_err(|e| fail(GsStatus::Validation, e))?;
        write_spec(out, sum)
    })
}

/// Connected sum with `d` copies of `S^2 x S^2`.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_spec_stabilize(spec: *const GsSpec, d: i64, out: *mut *mut GsSpec) -> GsStatus {
    guard(|| {
        let s = stabilize(read_spec(spec)?, d).map_err(|e| fail(GsStatus::Domain, e))?;
        write_spec(out, s)
    })
}

/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_spec_render(spec: *const GsSpec, out: *mut *mut c_char) -> GsStatus {
    guard(|| write_string(out, read_spec(spec)?.to_string()))
}

/// Suspension splitting and gauge decomposition. A negative `d` leaves the
/// stabilization symbolic; `group` may be null.
///
/// # Safety
/// `spec` must be a live handle, `group` null or NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_decompose(
    spec: *const GsSpec,
    group: *const c_char,
    t: i64,
    d: i64,
    json: bool,
    out: *mut *mut c_char,
) -> GsStatus {
    guard(|| {
        let spec = read_spec(spec)?;
        let group = if group.is_null() {
            None
        } else {
            Some(parse_group(read_str(group)?).map_err(|e| fail(GsStatus::Parse, e))?)
        };
        let d = if d < 0 {
            None
        } else {
            Some(u32::try_from(d).map_err(|_| fail(GsStatus::Domain, "d out of range"))?)
        };
        let dec = decompose(spec, group, t, d).map_err(|e| fail(GsStatus::Validation, e))?;
        let text = if json {
            decomposition_json(&dec).to_string()
        } else {
            dec.to_string()
        };
        write_string(out, text)
    })
}

/// Compares `G_t(M)` and `G_s(M)`. `primes` is a comma list and may be null.
///
/// # Safety
/// `spec` must be a live handle, strings NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_classify(
    spec: *const GsSpec,
    group: *const c_char,
    t: i64,
    s: i64,
    primes: *const c_char,
    out: *mut *mut c_char,
) -> GsStatus {
    guard(|| {
        let spec = read_spec(spec)?;
        let group = parse_group(read_str(group)?).map_err(|e| fail(GsStatus::Parse, e))?;
        let primes = if primes.is_null() { "" } else { read_str(primes)? };
        let primes = parse_primes(primes).map_err(|e| fail(GsStatus::Parse, e))?;
        let verdict = classify(group, spec, t, s, &primes).map_err(|e| fail(GsStatus::Domain, e))?;
        write_string(out, verdict.to_string())
    })
}

/// Integral homology, one `Hi = ...` line per degree.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_homology(spec: *const GsSpec, suspended: bool, out: *mut *mut c_char) -> GsStatus {
    guard(|| {
        let mut h = homology_of_manifold(read_spec(spec)?);
        if suspended {
            h = suspend(&h).map_err(|e| fail(GsStatus::Domain, e))?;
        }
        write_string(out, h.to_string())
    })
}

/// Invariant factors of a matrix like `[[2,4],[6,8]]`, space separated.
///
/// # Safety
/// `matrix` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_snf(matrix: *const c_char, out: *mut *mut c_char) -> GsStatus {
    guard(|| {
        let m = parse_matrix(read_str(matrix)?).map_err(|e| fail(GsStatus::Parse, e))?;
        let factors: Vec<String> = smith_normal_form(&m)
            .invariant_factors
            .iter()
            .map(ToString::to_string)
            .collect();
        write_string(out, factors.join(" "))
    })
}

/// Free ranks of `H0..H5`; the number written is stored in `len`.
///
/// # Safety
/// `spec` must be a live handle; `out` must hold `cap` values; `len` writable.
#[no_mangle]
pub unsafe extern "C" fn gs_betti_numbers(spec: *const GsSpec, out: *mut u32, cap: usize, len: *mut usize) -> GsStatus {
    guard(|| {
        let h = homology_of_manifold(read_spec(spec)?);
        let ranks: Vec<u32> = h.degrees().iter().map(|g| g.free_rank).collect();
        if out.is_null() {
            return Err(fail(GsStatus::NullArgument, "null output pointer"));
        }
        if cap < ranks.len() {
            return Err(fail(
                GsStatus::Domain,
                format!("buffer holds {cap} entries, need {}", ranks.len()),
            ));
        }
        ptr::copy_nonoverlapping(ranks.as_ptr(), out, ranks.len());
        write_out(len, ranks.len())
    })
}
