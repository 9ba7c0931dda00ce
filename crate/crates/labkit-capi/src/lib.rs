//! C ABI for the labkit toolkit.
//!
//! Handles are opaque pointers created and released through the paired
//! `*_from_json` / `*_parse` and `*_free` calls. Strings returned by the
//! library are heap-allocated and must be released with
//! [`labkit_string_free`]. Every fallible call stores a message retrievable
//! via [`labkit_last_error`]; status codes distinguish input errors from
//! failed mathematical checks.

use labkit::labeling::{self, OracleBudget, ReductionChain};
use labkit::{enveloping, sp6, text, LieAlgebra, Poly};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status codes returned by fallible calls.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LabkitStatus {
    Ok = 0,
    /// A required pointer was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed input (JSON, polynomial grammar, dimension mismatch).
    InvalidInput = 3,
    /// The input was well-formed but a mathematical check failed.
    CheckFailed = 4,
    /// Internal failure (a panic was caught); see `labkit_last_error`.
    Internal = 5,
}

/// Opaque Lie algebra handle.
pub struct LabkitAlgebra(LieAlgebra);

/// Opaque reduction chain handle.
pub struct LabkitChain(ReductionChain);

/// Opaque polynomial handle, bound to the variable universe of the algebra
/// it was parsed against.
pub struct LabkitPoly(Poly);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let cstring = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Runs a closure, converting panics into an error state.
fn guarded<T>(fallback: T, f: impl FnOnce() -> T) -> T {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(v) => v,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal error: {msg}"));
            fallback
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, LabkitStatus> {
    if ptr.is_null() {
        set_error("null pointer argument");
        return Err(LabkitStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        LabkitStatus::InvalidUtf8
    })
}

fn out_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Message of the most recent error on this thread, or null. The caller
/// frees the string with [`labkit_string_free`].
#[no_mangle]
pub extern "C" fn labkit_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| s.clone().into_raw())
            .unwrap_or(ptr::null_mut())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a labkit function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn labkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an algebra from its JSON description; null on error.
///
/// # Safety
/// `json` must point to a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn labkit_algebra_from_json(json: *const c_char) -> *mut LabkitAlgebra {
    clear_error();
    let Ok(body) = read_str(json) else {
        return ptr::null_mut();
    };
    guarded(ptr::null_mut(), || match LieAlgebra::from_json_str(body) {
        Ok(alg) => Box::into_raw(Box::new(LabkitAlgebra(alg))),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    })
}

/// # Safety
/// `alg` must come from [`labkit_algebra_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn labkit_algebra_free(alg: *mut LabkitAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Dimension of the algebra; 0 for a null handle.
///
/// # Safety
/// `alg` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn labkit_algebra_dim(alg: *const LabkitAlgebra) -> u32 {
    alg.as_ref().map_or(0, |a| a.0.dim() as u32)
}

/// Checks the Jacobi identity on every generator triple. Returns
/// `CheckFailed` with the report in the error slot when it fails.
///
/// # Safety
/// `alg` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn labkit_algebra_validate(alg: *const LabkitAlgebra) -> LabkitStatus {
    clear_error();
    let Some(alg) = alg.as_ref() else {
        set_error("null algebra handle");
        return LabkitStatus::NullPointer;
    };
    guarded(LabkitStatus::Internal, || {
        let report = alg.0.validate();
        if report.is_ok() {
            LabkitStatus::Ok
        } else {
            set_error(report.to_string());
            LabkitStatus::CheckFailed
        }
    })
}

/// Number of independent polynomial invariants, written to `out`.
///
/// # Safety
/// `alg` must be a live handle or null; `out` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn labkit_algebra_invariant_count(
    alg: *const LabkitAlgebra,
    seed: u64,
    out: *mut u32,
) -> LabkitStatus {
    clear_error();
    let (Some(alg), false) = (alg.as_ref(), out.is_null()) else {
        set_error("null argument");
        return LabkitStatus::NullPointer;
    };
    guarded(LabkitStatus::Internal, || {
        *out = alg.0.invariant_count(seed) as u32;
        LabkitStatus::Ok
    })
}

/// Parses a polynomial in the text grammar against the algebra's variable
/// universe; null on error.
///
/// # Safety
/// `alg` must be a live handle or null; `textp` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn labkit_poly_parse(
    alg: *const LabkitAlgebra,
    textp: *const c_char,
) -> *mut LabkitPoly {
    clear_error();
    let Some(alg) = alg.as_ref() else {
        set_error("null algebra handle");
        return ptr::null_mut();
    };
    let Ok(body) = read_str(textp) else {
        return ptr::null_mut();
    };
    match text::parse_poly(body.trim(), alg.0.dim()) {
        Ok(p) => Box::into_raw(Box::new(LabkitPoly(p))),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `poly` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn labkit_poly_free(poly: *mut LabkitPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Canonical text form; null on a null handle.
///
/// # Safety
/// `poly` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn labkit_poly_to_string(poly: *const LabkitPoly) -> *mut c_char {
    clear_error();
    match poly.as_ref() {
        Some(p) => out_string(p.0.to_string()),
        None => {
            set_error("null polynomial handle");
            ptr::null_mut()
        }
    }
}

/// 1 if zero, 0 if nonzero, -1 on a null handle.
///
/// # Safety
/// `poly` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn labkit_poly_is_zero(poly: *const LabkitPoly) -> i32 {
    match poly.as_ref() {
        Some(p) => p.0.is_zero() as i32,
        None => -1,
    }
}

/// Number of stored terms; -1 on a null handle.
///
/// # Safety
/// `poly` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn labkit_poly_term_count(poly: *const LabkitPoly) -> i64 {
    match poly.as_ref() {
        Some(p) => p.0.term_count() as i64,
        None => -1,
    }
}

/// Lie-Poisson (Berezin) bracket of two polynomials over the same algebra;
/// null on error.
///
/// # Safety
/// All handles must be live or null.
#[no_mangle]
pub unsafe extern "C" fn labkit_berezin_bracket(
    alg: *const LabkitAlgebra,
    f: *const LabkitPoly,
    g: *const LabkitPoly,
) -> *mut LabkitPoly {
    clear_error();
    let (Some(alg), Some(f), Some(g)) = (alg.as_ref(), f.as_ref(), g.as_ref()) else {
        set_error("null argument");
        return ptr::null_mut();
    };
    guarded(ptr::null_mut(), || {
        Box::into_raw(Box::new(LabkitPoly(alg.0.berezin_bracket(&f.0, &g.0))))
    })
}

/// 1 when every generator operator annihilates `f`, 0 otherwise, -1 on error.
///
/// # Safety
/// All handles must be live or null.
#[no_mangle]
pub unsafe extern "C" fn labkit_is_invariant(
    alg: *const LabkitAlgebra,
    f: *const LabkitPoly,
) -> i32 {
    clear_error();
    let (Some(alg), Some(f)) = (alg.as_ref(), f.as_ref()) else {
        set_error("null argument");
        return -1;
    };
    guarded(-1, || alg.0.is_invariant(&f.0) as i32)
}

/// PBW-normalized symmetrization of `f`, as noncommutative polynomial text;
/// null on error.
///
/// # Safety
/// All handles must be live or null.
#[no_mangle]
pub unsafe extern "C" fn labkit_symmetrize_to_string(
    alg: *const LabkitAlgebra,
    f: *const LabkitPoly,
) -> *mut c_char {
    clear_error();
    let (Some(alg), Some(f)) = (alg.as_ref(), f.as_ref()) else {
        set_error("null argument");
        return ptr::null_mut();
    };
    guarded(ptr::null_mut(), || {
        out_string(enveloping::symmetrize(&alg.0, &f.0).to_string())
    })
}

/// Commutativity certificate for a pair of homogeneous polynomials, as a
/// JSON document; null on error. `max_total_degree` caps the
/// enveloping-algebra fallback for possibly-factorizable pairs.
///
/// # Safety
/// `alg` must be live or null; `f`/`g` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn labkit_certify_commuting_json(
    alg: *const LabkitAlgebra,
    f: *const c_char,
    g: *const c_char,
    max_total_degree: u32,
) -> *mut c_char {
    clear_error();
    let Some(alg) = alg.as_ref() else {
        set_error("null algebra handle");
        return ptr::null_mut();
    };
    let (Ok(f), Ok(g)) = (read_str(f), read_str(g)) else {
        return ptr::null_mut();
    };
    guarded(ptr::null_mut(), || {
        let run = || -> Result<String, labkit::Error> {
            let fp = text::parse_poly(f.trim(), alg.0.dim())?;
            let gp = text::parse_poly(g.trim(), alg.0.dim())?;
            let budget = OracleBudget {
                max_total_degree,
                ..OracleBudget::default()
            };
            let cert =
                labeling::certify_commuting(&alg.0, &fp, &gp, &budget, ("f".into(), "g".into()))?;
            Ok(serde_json::to_string_pretty(&cert)?)
        };
        match run() {
            Ok(json) => out_string(json),
            Err(e) => {
                set_error(e.to_string());
                ptr::null_mut()
            }
        }
    })
}

/// Parses a reduction chain from JSON (the algebra must be inline, not a
/// file reference); null on error.
///
/// # Safety
/// `json` must point to a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn labkit_chain_from_json(json: *const c_char) -> *mut LabkitChain {
    clear_error();
    let Ok(body) = read_str(json) else {
        return ptr::null_mut();
    };
    guarded(ptr::null_mut(), || {
        match ReductionChain::from_json_str(body, None) {
            Ok(chain) => Box::into_raw(Box::new(LabkitChain(chain))),
            Err(e) => {
                set_error(e.to_string());
                ptr::null_mut()
            }
        }
    })
}

/// # Safety
/// `chain` must come from [`labkit_chain_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn labkit_chain_free(chain: *mut LabkitChain) {
    if !chain.is_null() {
        drop(Box::from_raw(chain));
    }
}

/// Missing-label counting for a chain, as a JSON report; null on error
/// (including an invalid chain, with the reason in the error slot).
///
/// # Safety
/// `chain` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn labkit_mlp_count_json(
    chain: *const LabkitChain,
    seed: u64,
) -> *mut c_char {
    clear_error();
    let Some(chain) = chain.as_ref() else {
        set_error("null chain handle");
        return ptr::null_mut();
    };
    guarded(ptr::null_mut(), || {
        match labeling::mlp_count(&chain.0, seed) {
            Ok(report) => match serde_json::to_string_pretty(&report) {
                Ok(json) => out_string(json),
                Err(e) => {
                    set_error(e.to_string());
                    ptr::null_mut()
                }
            },
            Err(e) => {
                set_error(e.to_string());
                ptr::null_mut()
            }
        }
    })
}

/// 1 when every subalgebra operator annihilates the polynomial, 0 otherwise,
/// -1 on error.
///
/// # Safety
/// `chain` must be live or null; `f` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn labkit_scalar_check(chain: *const LabkitChain, f: *const c_char) -> i32 {
    clear_error();
    let Some(chain) = chain.as_ref() else {
        set_error("null chain handle");
        return -1;
    };
    let Ok(f) = read_str(f) else {
        return -1;
    };
    guarded(-1, || {
        let run = || -> Result<bool, labkit::Error> {
            let p = text::parse_poly(f.trim(), chain.0.ambient().dim())?;
            labeling::is_subgroup_scalar(&chain.0, &p)
        };
        match run() {
            Ok(ok) => ok as i32,
            Err(e) => {
                set_error(e.to_string());
                -1
            }
        }
    })
}

/// Runs the full symplectic-chain verification pipeline and returns the JSON
/// report; `out_pass` (when non-null) receives the overall outcome. Null on
/// error.
///
/// # Safety
/// `out_pass` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn labkit_sp6_verify_json(seed: u64, out_pass: *mut bool) -> *mut c_char {
    clear_error();
    guarded(ptr::null_mut(), || match sp6::verify_all(seed) {
        Ok(report) => {
            if !out_pass.is_null() {
                *out_pass = report.pass;
            }
            match serde_json::to_string_pretty(&report) {
                Ok(json) => out_string(json),
                Err(e) => {
                    set_error(e.to_string());
                    ptr::null_mut()
                }
            }
        }
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    })
}
