//! C ABI for the homalg toolkit.
//!
//! Algebras are opaque handles created from the JSON file format and
//! released with `homalg_algebra_free`. All returned strings are
//! NUL-terminated, owned by the library, and must be released with
//! `homalg_string_free`. Functions return a status code; `0` means
//! success.

use std::ffi::{c_char, CStr, CString};
use std::ptr;
use std::str::FromStr;

use homalg::algebra::HomAlgebra;
use homalg::checkers::{check_identity, CheckParams, Identity};
use homalg::constructors::{construct, ConstructParams, Construction};
use homalg::fileio::AlgebraFile;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum HomalgStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The JSON input could not be parsed into an algebra.
    BadInput = 3,
    /// The identity or construction name is not recognized.
    UnknownName = 4,
    /// A construction hypothesis failed.
    HypothesisFailed = 5,
    /// Any other evaluation error.
    EvalError = 6,
}

pub struct HomalgAlgebra {
    inner: HomAlgebra,
}

thread_local! {
    static LAST_ERROR: std::cell::RefCell<Option<CString>> =
        const { std::cell::RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, HomalgStatus> {
    if p.is_null() {
        return Err(HomalgStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".into());
        HomalgStatus::InvalidUtf8
    })
}

unsafe fn read_opt_str<'a>(p: *const c_char) -> Result<Option<&'a str>, HomalgStatus> {
    if p.is_null() {
        Ok(None)
    } else {
        read_str(p).map(Some)
    }
}

fn export_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .unwrap_or_default()
        .into_raw()
}

/// Message describing the most recent error on this thread, or null.
/// The pointer is owned by the library and stays valid until the next
/// failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn homalg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map(|c| c.as_ptr())
            .unwrap_or(ptr::null())
    })
}

/// Release a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn homalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse an algebra from its JSON description. On success writes a new
/// handle to `out` and returns `Ok`.
#[no_mangle]
pub unsafe extern "C" fn homalg_algebra_from_json(
    json: *const c_char,
    out: *mut *mut HomalgAlgebra,
) -> HomalgStatus {
    if out.is_null() {
        return HomalgStatus::NullArgument;
    }
    let json = match read_str(json) {
        Ok(s) => s,
        Err(e) => return e,
    };
    let file: AlgebraFile = match serde_json::from_str(json) {
        Ok(f) => f,
        Err(e) => {
            set_error(format!("invalid JSON: {e}"));
            return HomalgStatus::BadInput;
        }
    };
    match file.to_algebra() {
        Ok(a) => {
            *out = Box::into_raw(Box::new(HomalgAlgebra { inner: a }));
            HomalgStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            HomalgStatus::BadInput
        }
    }
}

/// Serialize an algebra handle back to JSON. The returned string must
/// be released with `homalg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn homalg_algebra_to_json(
    a: *const HomalgAlgebra,
    out: *mut *mut c_char,
) -> HomalgStatus {
    if a.is_null() || out.is_null() {
        return HomalgStatus::NullArgument;
    }
    let file = AlgebraFile::from_algebra(&(*a).inner);
    match serde_json::to_string_pretty(&file) {
        Ok(s) => {
            *out = export_string(s);
            HomalgStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            HomalgStatus::EvalError
        }
    }
}

/// Release an algebra handle.
#[no_mangle]
pub unsafe extern "C" fn homalg_algebra_free(a: *mut HomalgAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension of the underlying module.
#[no_mangle]
pub unsafe extern "C" fn homalg_algebra_dim(a: *const HomalgAlgebra) -> usize {
    if a.is_null() {
        return 0;
    }
    (*a).inner.dim()
}

/// Check a named identity. `product` and `operator` may be null when
/// the algebra carries only one candidate. On success `*pass` is 1 or
/// 0 and, when the check fails and `witness_json` is non-null, a JSON
/// description of one failing instance is written there (release it
/// with `homalg_string_free`; it is null when the check passes).
#[no_mangle]
pub unsafe extern "C" fn homalg_check(
    a: *const HomalgAlgebra,
    identity: *const c_char,
    product: *const c_char,
    operator: *const c_char,
    pass: *mut i32,
    witness_json: *mut *mut c_char,
) -> HomalgStatus {
    if a.is_null() || pass.is_null() {
        return HomalgStatus::NullArgument;
    }
    let identity = match read_str(identity) {
        Ok(s) => s,
        Err(e) => return e,
    };
    let id = match Identity::from_str(identity) {
        Ok(id) => id,
        Err(e) => {
            set_error(e.to_string());
            return HomalgStatus::UnknownName;
        }
    };
    let params = CheckParams {
        product: match read_opt_str(product) {
            Ok(s) => s.map(str::to_string),
            Err(e) => return e,
        },
        operator: match read_opt_str(operator) {
            Ok(s) => s.map(str::to_string),
            Err(e) => return e,
        },
        ..Default::default()
    };
    match check_identity(&(*a).inner, &id, &params) {
        Ok(report) => {
            *pass = report.pass as i32;
            if !witness_json.is_null() {
                *witness_json = match &report.witness {
                    Some(w) => export_string(
                        serde_json::json!({
                            "indices": w.indices,
                            "defect": w.defect.iter().map(|d| d.to_string())
                                .collect::<Vec<_>>(),
                            "equation": w.equation,
                        })
                        .to_string(),
                    ),
                    None => ptr::null_mut(),
                };
            }
            HomalgStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            HomalgStatus::EvalError
        }
    }
}

/// Apply a named construction from the catalog. `product`, `operator`,
/// and `beta` may be null. When `verify` is nonzero the construction's
/// hypotheses are checked first and `HypothesisFailed` is returned if
/// they do not hold. On success writes a new handle to `out`.
#[no_mangle]
pub unsafe extern "C" fn homalg_construct(
    a: *const HomalgAlgebra,
    name: *const c_char,
    product: *const c_char,
    operator: *const c_char,
    beta: *const c_char,
    verify: i32,
    out: *mut *mut HomalgAlgebra,
) -> HomalgStatus {
    if a.is_null() || out.is_null() {
        return HomalgStatus::NullArgument;
    }
    let name = match read_str(name) {
        Ok(s) => s,
        Err(e) => return e,
    };
    let c = match Construction::from_str(name) {
        Ok(c) => c,
        Err(e) => {
            set_error(e.to_string());
            return HomalgStatus::UnknownName;
        }
    };
    let params = ConstructParams {
        product: match read_opt_str(product) {
            Ok(s) => s.map(str::to_string),
            Err(e) => return e,
        },
        operator: match read_opt_str(operator) {
            Ok(s) => s.map(str::to_string),
            Err(e) => return e,
        },
        beta: match read_opt_str(beta) {
            Ok(s) => s.map(str::to_string),
            Err(e) => return e,
        },
        ..Default::default()
    };
    match construct(&(*a).inner, c, &params, verify != 0) {
        Ok(b) => {
            *out = Box::into_raw(Box::new(HomalgAlgebra { inner: b }));
            HomalgStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            match e {
                homalg::constructors::ConstructError::HypothesisFailed(_) => {
                    HomalgStatus::HypothesisFailed
                }
                _ => HomalgStatus::EvalError,
            }
        }
    }
}
