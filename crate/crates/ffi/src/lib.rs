//! C ABI for the qtoric engine: opaque fan handles, integer status codes,
//! and JSON-in/JSON-out reports mirroring the CLI subcommands.
//!
//! Ownership rules: every `*mut qtoric_fan` returned by a constructor must
//! be released with `qtoric_fan_free`; every `char*` written to an out
//! parameter must be released with `qtoric_string_free`. Status codes are
//! 0 on success; `qtoric_last_error_message` describes the most recent
//! failure on the calling thread.

#![allow(non_camel_case_types)]

use libc::c_char;
use qtoric::cli::{execute, CliError, FanDocument, Output, Request};
use serde::Deserialize;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum qtoric_status {
    QTORIC_OK = 0,
    /// Malformed input: bad JSON, bad fan data, bad parameters.
    QTORIC_ERR_INPUT = 1,
    /// Valid input outside the operation's mathematical domain.
    QTORIC_ERR_DOMAIN = 2,
    QTORIC_ERR_NULL_ARGUMENT = 3,
    QTORIC_ERR_INVALID_UTF8 = 4,
    QTORIC_ERR_PANIC = 5,
}

use qtoric_status::*;

/// Opaque handle to a parsed and validated fan document.
pub struct qtoric_fan {
    doc: FanDocument,
    text: String,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let cleaned: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn status_of(e: &CliError) -> qtoric_status {
    match e.exit {
        1 => QTORIC_ERR_INPUT,
        _ => QTORIC_ERR_DOMAIN,
    }
}

/// # Safety
/// `s` must be null or a NUL-terminated string valid for the call.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, qtoric_status> {
    if s.is_null() {
        set_error("null string argument");
        return Err(QTORIC_ERR_NULL_ARGUMENT);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        QTORIC_ERR_INVALID_UTF8
    })
}

fn guard<F: FnOnce() -> qtoric_status>(f: F) -> qtoric_status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            QTORIC_ERR_PANIC
        }
    }
}

fn hand_out_string(s: String, out: *mut *mut c_char) -> qtoric_status {
    let cleaned: String = s.chars().filter(|&c| c != '\0').collect();
    match CString::new(cleaned) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            QTORIC_OK
        }
        Err(_) => {
            set_error("output contained interior NUL");
            QTORIC_ERR_PANIC
        }
    }
}

/// Message describing the most recent error on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qtoric_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer previously handed out by this library
/// and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qtoric_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse and validate a fan document (JSON). On success writes a handle
/// that must be freed with `qtoric_fan_free`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qtoric_fan_parse(
    json: *const c_char,
    out: *mut *mut qtoric_fan,
) -> qtoric_status {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer");
            return QTORIC_ERR_NULL_ARGUMENT;
        }
        let text = match read_str(json) {
            Ok(t) => t.to_string(),
            Err(s) => return s,
        };
        match qtoric::cli::parse_fan_document(&text) {
            Ok(doc) => {
                let fan = Box::new(qtoric_fan { doc, text });
                *out = Box::into_raw(fan);
                QTORIC_OK
            }
            Err(e) => {
                set_error(&e.message);
                status_of(&e)
            }
        }
    })
}

/// Build one of the built-in example fans. Pass k = m = 0 for examples
/// without parameters; the parametric family is named "o(-k)-cpm".
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qtoric_fan_example(
    name: *const c_char,
    k: i64,
    m: i64,
    out: *mut *mut qtoric_fan,
) -> qtoric_status {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer");
            return QTORIC_ERR_NULL_ARGUMENT;
        }
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let k = (k > 0).then_some(k);
        let m = (m > 0).then_some(m);
        match qtoric::cli::generate_example(name, k, m) {
            Ok(doc) => {
                let text = serde_json::to_string(&doc).expect("document serializes");
                *out = Box::into_raw(Box::new(qtoric_fan { doc, text }));
                QTORIC_OK
            }
            Err(e) => {
                set_error(&e.message);
                status_of(&e)
            }
        }
    })
}

/// Release a fan handle.
///
/// # Safety
/// `fan` must be null or a handle from a constructor, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qtoric_fan_free(fan: *mut qtoric_fan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// Serialize the fan handle back to its canonical JSON document.
///
/// # Safety
/// `fan` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qtoric_fan_to_json(
    fan: *const qtoric_fan,
    out: *mut *mut c_char,
) -> qtoric_status {
    guard(|| {
        if fan.is_null() || out.is_null() {
            set_error("null argument");
            return QTORIC_ERR_NULL_ARGUMENT;
        }
        let doc = &(*fan).doc;
        hand_out_string(
            serde_json::to_string_pretty(doc).expect("document serializes"),
            out,
        )
    })
}

#[derive(Deserialize)]
struct FfiRequest {
    command: String,
    #[serde(default)]
    v: Option<Vec<i64>>,
    #[serde(default)]
    vp: Option<Vec<i64>>,
    #[serde(default)]
    vs: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    weights: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    p: Option<usize>,
    #[serde(default)]
    pp: Option<usize>,
    #[serde(default)]
    k: Option<i64>,
    #[serde(default)]
    m: Option<i64>,
    #[serde(default)]
    example: Option<String>,
    #[serde(default)]
    force_compact: bool,
}

/// Run one engine command against the fan (null for commands that need no
/// fan, e.g. "rescale" with explicit weights). `request_json` carries the
/// command name and parameters, e.g. {"command":"symplectic","v":[1,1]}.
/// On success writes the report as JSON.
///
/// # Safety
/// `fan` must be null or a live handle; `request_json` must be a
/// NUL-terminated string; `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qtoric_report(
    fan: *const qtoric_fan,
    request_json: *const c_char,
    out_json: *mut *mut c_char,
) -> qtoric_status {
    guard(|| {
        if out_json.is_null() {
            set_error("null out pointer");
            return QTORIC_ERR_NULL_ARGUMENT;
        }
        let text = match read_str(request_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let req: FfiRequest = match serde_json::from_str(text) {
            Ok(r) => r,
            Err(e) => {
                set_error(&format!("SyntaxError: bad request: {e}"));
                return QTORIC_ERR_INPUT;
            }
        };
        let request = Request {
            command: req.command,
            fan_path: None,
            fan_text: (!fan.is_null()).then(|| (*fan).text.clone()),
            v: req.v,
            vp: req.vp,
            vs: req.vs,
            weights: req.weights,
            p: req.p,
            pp: req.pp,
            k: req.k,
            m: req.m,
            example: req.example,
            force_compact: req.force_compact,
        };
        match execute(&request) {
            Ok(Output::Report(r)) => hand_out_string(
                serde_json::to_string_pretty(&r).expect("report serializes"),
                out_json,
            ),
            Ok(Output::Document(d)) => hand_out_string(
                serde_json::to_string_pretty(&d).expect("document serializes"),
                out_json,
            ),
            Err(e) => {
                set_error(&e.message);
                status_of(&e)
            }
        }
    })
}

/// Dimension of the quantum cohomology quotient.
///
/// # Safety
/// `fan` must be a live handle; `out_dim` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qtoric_quantum_dim(
    fan: *const qtoric_fan,
    out_dim: *mut usize,
) -> qtoric_status {
    guard(|| {
        if fan.is_null() || out_dim.is_null() {
            set_error("null argument");
            return QTORIC_ERR_NULL_ARGUMENT;
        }
        let md = match (*fan).doc.moment_data() {
            Ok(md) => md,
            Err(e) => {
                set_error(&e.message);
                return status_of(&e);
            }
        };
        match qtoric::presentations::quantum_cohomology(&md) {
            Ok(qh) => {
                *out_dim = qh.dim();
                QTORIC_OK
            }
            Err(e) => {
                set_error(&e.to_string());
                QTORIC_ERR_DOMAIN
            }
        }
    })
}

/// Dimension of symplectic cohomology for the action of v (computed by
/// two cross-checked routes; a disagreement surfaces as a domain error).
///
/// # Safety
/// `fan` must be a live handle; `v` must point to `v_len` integers;
/// `out_dim` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qtoric_symplectic_dim(
    fan: *const qtoric_fan,
    v: *const i64,
    v_len: usize,
    out_dim: *mut usize,
) -> qtoric_status {
    guard(|| {
        if fan.is_null() || v.is_null() || out_dim.is_null() {
            set_error("null argument");
            return QTORIC_ERR_NULL_ARGUMENT;
        }
        let vs = std::slice::from_raw_parts(v, v_len).to_vec();
        let md = match (*fan).doc.moment_data() {
            Ok(md) => md,
            Err(e) => {
                set_error(&e.message);
                return status_of(&e);
            }
        };
        let coc = qtoric::polyhedral::Cocharacter(vs);
        match qtoric::presentations::symplectic_cohomology(&md, &coc) {
            Ok(sh) => {
                *out_dim = sh.dim;
                QTORIC_OK
            }
            Err(e) => {
                set_error(&e.to_string());
                QTORIC_ERR_DOMAIN
            }
        }
    })
}
