//! C ABI over the tqcmap mapper.
//!
//! A compilation is created from geometry text with [`tqc_compile`] and owns
//! every string it hands out; pointers stay valid until [`tqc_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tqcmap::emit::{emit_instructions, emit_tracking, write_instructions};
use tqcmap::geometry::parse;
use tqcmap::mapper::{map_circuit, MapOptions};
use tqcmap::verify::verify_all;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TqcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// The geometry failed validation or mapping; see `tqc_last_error`.
    InvalidGeometry = 3,
    /// A correlation surface failed verification.
    VerificationFailed = 4,
    Panic = 5,
}

/// Opaque compiled circuit.
pub struct TqcCompilation {
    qubits: usize,
    passed: bool,
    instructions: CString,
    tracking: CString,
    report: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn to_cstring(s: String) -> CString {
    // Generated text never contains NUL bytes.
    CString::new(s).expect("no interior NUL")
}

fn compile(text: &str) -> Result<TqcCompilation, String> {
    let circuit = parse(text).map_err(|e| e.to_string())?;
    let mapped = map_circuit(&circuit, MapOptions::default()).map_err(|e| e.to_string())?;
    let tuples: Vec<_> = mapped.into_iter().map(|m| m.tuple).collect();
    let stream = emit_instructions(&circuit.lattice, &tuples).map_err(|e| e.to_string())?;
    let report = verify_all(&circuit.lattice, &tuples).map_err(|e| e.to_string())?;
    Ok(TqcCompilation {
        qubits: tuples.len(),
        passed: report.passed(),
        instructions: to_cstring(write_instructions(&stream)),
        tracking: to_cstring(emit_tracking(&tuples)),
        report: to_cstring(report.to_string()),
    })
}

/// Parses, maps and verifies a geometry document.
///
/// # Safety
/// `source` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tqc_compile(
    source: *const c_char,
    out: *mut *mut TqcCompilation,
) -> TqcStatus {
    if source.is_null() || out.is_null() {
        set_last_error("null pointer argument");
        return TqcStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let Ok(text) = CStr::from_ptr(source).to_str() else {
        set_last_error("source is not valid UTF-8");
        return TqcStatus::InvalidUtf8;
    };
    match catch_unwind(AssertUnwindSafe(|| compile(text))) {
        Ok(Ok(c)) => {
            *out = Box::into_raw(Box::new(c));
            TqcStatus::Ok
        }
        Ok(Err(msg)) => {
            set_last_error(msg);
            TqcStatus::InvalidGeometry
        }
        Err(_) => {
            set_last_error("internal panic");
            TqcStatus::Panic
        }
    }
}

/// Number of logical qubits, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle from `tqc_compile`.
#[no_mangle]
pub unsafe extern "C" fn tqc_qubit_count(c: *const TqcCompilation) -> usize {
    c.as_ref().map_or(0, |c| c.qubits)
}

/// The measurement instruction stream, one `w h t basis` line per qubit.
///
/// # Safety
/// `c` must be null or a live handle; the result is owned by the handle.
#[no_mangle]
pub unsafe extern "C" fn tqc_instructions(c: *const TqcCompilation) -> *const c_char {
    c.as_ref().map_or(ptr::null(), |c| c.instructions.as_ptr())
}

/// The tracking document.
///
/// # Safety
/// `c` must be null or a live handle; the result is owned by the handle.
#[no_mangle]
pub unsafe extern "C" fn tqc_tracking(c: *const TqcCompilation) -> *const c_char {
    c.as_ref().map_or(ptr::null(), |c| c.tracking.as_ptr())
}

/// Verification report lines; returns `VerificationFailed` if any check failed.
///
/// # Safety
/// `c` must be a live handle; `report` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tqc_verify(
    c: *const TqcCompilation,
    report: *mut *const c_char,
) -> TqcStatus {
    let Some(c) = c.as_ref() else {
        set_last_error("null handle");
        return TqcStatus::NullPointer;
    };
    if !report.is_null() {
        *report = c.report.as_ptr();
    }
    if c.passed {
        TqcStatus::Ok
    } else {
        TqcStatus::VerificationFailed
    }
}

/// Message for the most recent failure on this thread; empty if none.
#[no_mangle]
pub extern "C" fn tqc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `c` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tqc_free(c: *mut TqcCompilation) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
