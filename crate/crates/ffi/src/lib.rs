//! C ABI over the symtwist core.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free`. Every fallible call returns a
//! [`SymtwistStatus`]; on failure a description is available from
//! [`symtwist_last_error`] on the same thread. Strings returned through
//! `char **` outputs are owned by the caller and released with
//! [`symtwist_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use symtwist::automorphisms::Automorphism;
use symtwist::cli::fibers_search;
use symtwist::fibers::{Constraints, DEFAULT_FIBER_BOUND};
use symtwist::partitions::{degree, total_degree_sum, Partition};
use symtwist::perm::Permutation;
use symtwist::twisted::{enumerate_twisted, sweep_outer_s6, ScanConfig};
use symtwist::VerifyMode;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymtwistStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    DegreeMismatch = 4,
    OutOfRange = 5,
    Internal = 6,
}

/// Opaque permutation handle.
pub struct SymtwistPermutation(Permutation);

/// Opaque automorphism handle.
pub struct SymtwistAutomorphism(Automorphism);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: SymtwistStatus, msg: impl ToString) -> SymtwistStatus {
    set_error(msg.to_string());
    status
}

fn guard(f: impl FnOnce() -> SymtwistStatus) -> SymtwistStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(SymtwistStatus::Internal, "panic inside symtwist"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, SymtwistStatus> {
    if s.is_null() {
        return Err(fail(SymtwistStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| fail(SymtwistStatus::InvalidUtf8, e))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> SymtwistStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            SymtwistStatus::Ok
        }
        Err(e) => fail(SymtwistStatus::Internal, e),
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(SymtwistStatus::NullPointer, concat!(stringify!($p), " is null"));
        })+
    };
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn symtwist_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn symtwist_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses one-line `"[2,1,3]"` or cycle `"(1,2)(3,4)"` notation. A zero
/// `degree` infers it from the text.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn symtwist_perm_parse(
    text: *const c_char,
    degree: usize,
    out: *mut *mut SymtwistPermutation,
) -> SymtwistStatus {
    guard(|| {
        non_null!(out);
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Permutation::parse(text, (degree > 0).then_some(degree)) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(SymtwistPermutation(p)));
                SymtwistStatus::Ok
            }
            Err(e) => fail(SymtwistStatus::Parse, e),
        }
    })
}

/// # Safety
/// `p` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn symtwist_perm_free(p: *mut SymtwistPermutation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn symtwist_perm_degree(p: *const SymtwistPermutation) -> usize {
    p.as_ref().map_or(0, |p| p.0.degree())
}

/// Canonical cycle notation, `"()"` for the identity.
///
/// # Safety
/// `p` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn symtwist_perm_to_string(
    p: *const SymtwistPermutation,
    out: *mut *mut c_char,
) -> SymtwistStatus {
    guard(|| {
        non_null!(p, out);
        write_string(out, (*p).0.to_string())
    })
}

/// `out = p * q`, applying `q` first.
///
/// # Safety
/// `p`, `q` must be valid handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn symtwist_perm_compose(
    p: *const SymtwistPermutation,
    q: *const SymtwistPermutation,
    out: *mut *mut SymtwistPermutation,
) -> SymtwistStatus {
    guard(|| {
        non_null!(p, q, out);
        match (*p).0.compose(&(*q).0) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(SymtwistPermutation(r)));
                SymtwistStatus::Ok
            }
            Err(e) => fail(SymtwistStatus::DegreeMismatch, e),
        }
    })
}

/// # Safety
/// `p` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn symtwist_perm_inverse(
    p: *const SymtwistPermutation,
    out: *mut *mut SymtwistPermutation,
) -> SymtwistStatus {
    guard(|| {
        non_null!(p, out);
        *out = Box::into_raw(Box::new(SymtwistPermutation((*p).0.inverse())));
        SymtwistStatus::Ok
    })
}

/// # Safety
/// `p` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn symtwist_perm_order(p: *const SymtwistPermutation, out: *mut u64) -> SymtwistStatus {
    guard(|| {
        non_null!(p, out);
        match u64::try_from((*p).0.order()) {
            Ok(o) => {
                *out = o;
                SymtwistStatus::Ok
            }
            Err(e) => fail(SymtwistStatus::OutOfRange, e),
        }
    })
}

/// Parses `id:<n>`, `inner:<n>:<cycles>` or `outer6:p<k>:o<ordering>`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn symtwist_automorphism_parse(
    spec: *const c_char,
    out: *mut *mut SymtwistAutomorphism,
) -> SymtwistStatus {
    guard(|| {
        non_null!(out);
        let spec = match read_str(spec) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match spec.parse::<Automorphism>() {
            Ok(a) => {
                *out = Box::into_raw(Box::new(SymtwistAutomorphism(a)));
                SymtwistStatus::Ok
            }
            Err(e) => fail(SymtwistStatus::Parse, e),
        }
    })
}

/// # Safety
/// `a` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn symtwist_automorphism_free(a: *mut SymtwistAutomorphism) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn symtwist_automorphism_to_string(
    a: *const SymtwistAutomorphism,
    out: *mut *mut c_char,
) -> SymtwistStatus {
    guard(|| {
        non_null!(a, out);
        write_string(out, (*a).0.spec())
    })
}

/// # Safety
/// `a`, `g` must be valid handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn symtwist_automorphism_apply(
    a: *const SymtwistAutomorphism,
    g: *const SymtwistPermutation,
    out: *mut *mut SymtwistPermutation,
) -> SymtwistStatus {
    guard(|| {
        non_null!(a, g, out);
        match (*a).0.apply(&(*g).0) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(SymtwistPermutation(r)));
                SymtwistStatus::Ok
            }
            Err(e) => fail(SymtwistStatus::DegreeMismatch, e),
        }
    })
}

/// Exact number of `g` with `alpha(g) = g^-1`; degrees above 10 are refused.
///
/// # Safety
/// `a` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn symtwist_twisted_count(a: *const SymtwistAutomorphism, out: *mut u64) -> SymtwistStatus {
    guard(|| {
        non_null!(a, out);
        match enumerate_twisted(&(*a).0, &ScanConfig::default()) {
            Ok(c) => {
                *out = c.count;
                SymtwistStatus::Ok
            }
            Err(e) => fail(SymtwistStatus::OutOfRange, e),
        }
    })
}

/// Sum of irreducible degrees of `S_n` as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn symtwist_total_degree_sum(n: usize, out: *mut *mut c_char) -> SymtwistStatus {
    guard(|| {
        non_null!(out);
        match total_degree_sum(n) {
            Ok(t) => write_string(out, t.to_string()),
            Err(e) => fail(SymtwistStatus::OutOfRange, e),
        }
    })
}

/// Degree of the irreducible indexed by `partition`, e.g. `"[4,2,1]"`, as a decimal string.
///
/// # Safety
/// `partition` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn symtwist_degree(partition: *const c_char, out: *mut *mut c_char) -> SymtwistStatus {
    guard(|| {
        non_null!(out);
        let text = match read_str(partition) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let lambda: Partition = match text.parse() {
            Ok(p) => p,
            Err(e) => return fail(SymtwistStatus::Parse, e),
        };
        match degree(&lambda) {
            Ok(f) => write_string(out, f.to_string()),
            Err(e) => fail(SymtwistStatus::Internal, e),
        }
    })
}

/// Largest twisted count over the 720 outer automorphisms of `S_6`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn symtwist_outer_s6_max(out: *mut u64) -> SymtwistStatus {
    guard(|| {
        non_null!(out);
        match sweep_outer_s6(VerifyMode::Generators) {
            Ok(r) => {
                *out = r.max;
                SymtwistStatus::Ok
            }
            Err(e) => fail(SymtwistStatus::Internal, e),
        }
    })
}

/// Fiber decompositions of the layers at degree `n` as a JSON report.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn symtwist_fibers_search_json(
    n: usize,
    fix_top: bool,
    max_solutions: usize,
    out: *mut *mut c_char,
) -> SymtwistStatus {
    guard(|| {
        non_null!(out);
        let constraints = Constraints { fix_top, ..Constraints::default() };
        match fibers_search(n, constraints, max_solutions, false, None, DEFAULT_FIBER_BOUND) {
            Ok(outcome) => write_string(out, outcome.json.to_string()),
            Err(e) => fail(SymtwistStatus::OutOfRange, e),
        }
    })
}
