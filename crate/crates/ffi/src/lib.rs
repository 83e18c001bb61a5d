//! C ABI for `cfk-calc`.
//!
//! Complexes are passed around as opaque `CfkComplexHandle` pointers created
//! by the `cfk_complex_*` constructors and released with
//! `cfk_complex_free`. Every fallible call returns a `CfkStatus`; on failure
//! `cfk_last_error_message` describes the error. Strings returned to the
//! caller must be released with `cfk_string_free`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cfk_calc::cfk::{self, validate, CfkComplex};
use cfk_calc::concordance::{self, CableError, ClassRep, ConcordanceError};
use cfk_calc::invariants::{self, InvariantError};
use cfk_calc::knots::{self, KnotError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    Unsupported = 4,
    RankNotOne = 5,
    EpsilonNotOne = 6,
    InvalidInput = 7,
    Internal = 8,
    Panic = 9,
}

/// Opaque owner of a complex.
pub struct CfkComplexHandle {
    complex: CfkComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).expect("no interior nul"));
}

type FfiResult<T> = Result<T, (CfkStatus, String)>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> CfkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CfkStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CfkStatus::Panic
        }
    }
}

fn invariant_status(e: InvariantError) -> (CfkStatus, String) {
    let status = match e {
        InvariantError::RankNotOne(_) => CfkStatus::RankNotOne,
        InvariantError::EpsilonNotOne(_) => CfkStatus::EpsilonNotOne,
        InvariantError::TooShort => CfkStatus::InvalidInput,
        InvariantError::SearchExhausted(_) | InvariantError::InternalInconsistency(_) => {
            CfkStatus::Internal
        }
    };
    (status, e.to_string())
}

fn knot_status(e: KnotError) -> (CfkStatus, String) {
    let status = match e {
        KnotError::Expr(_) => CfkStatus::ParseError,
        KnotError::Unsupported { .. } => CfkStatus::Unsupported,
        KnotError::Polynomial(_) => CfkStatus::InvalidInput,
    };
    (status, e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> FfiResult<&'a str> {
    if s.is_null() {
        return Err((CfkStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (CfkStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn read_handle<'a>(h: *const CfkComplexHandle) -> FfiResult<&'a CfkComplex> {
    h.as_ref()
        .map(|h| &h.complex)
        .ok_or((CfkStatus::NullPointer, "null complex".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err((CfkStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_handle(out: *mut *mut CfkComplexHandle, complex: CfkComplex) -> FfiResult<()> {
    write_out(out, Box::into_raw(Box::new(CfkComplexHandle { complex })))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s).map_err(|_| (CfkStatus::Internal, "string contains nul".into()))?;
    write_out(out, c.into_raw())
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn cfk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds the reduced class complex of a knot expression such as
/// `"C(D;3,4) + -T(3,4)"`.
///
/// # Safety
/// `expr` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfk_complex_from_expr(
    expr: *const c_char,
    out: *mut *mut CfkComplexHandle,
) -> CfkStatus {
    guard(|| {
        let text = read_str(expr)?;
        let e = knots::parse(text).map_err(|e| knot_status(e.into()))?;
        let rep = knots::class_complex(&e).map_err(knot_status)?;
        write_handle(out, rep.complex().clone())
    })
}

/// Parses the `cfk v1` text format. Complexes whose arrows break the
/// grading rules or whose differential does not square to zero are
/// rejected with `CFK_STATUS_INVALID_INPUT`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfk_complex_from_text(
    text: *const c_char,
    out: *mut *mut CfkComplexHandle,
) -> CfkStatus {
    guard(|| {
        let text = read_str(text)?;
        let c = CfkComplex::from_text(text).map_err(|e| (CfkStatus::ParseError, e.to_string()))?;
        let report = validate(&c, false);
        if !report.is_valid() {
            return Err((CfkStatus::InvalidInput, report.to_string()));
        }
        write_handle(out, c)
    })
}

/// Releases a handle. Passing null is allowed.
///
/// # Safety
/// `h` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cfk_complex_free(h: *mut CfkComplexHandle) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Releases a string returned by this library. Passing null is allowed.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cfk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Canonical `cfk v1` text of the complex.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfk_complex_to_text(
    h: *const CfkComplexHandle,
    out: *mut *mut c_char,
) -> CfkStatus {
    guard(|| write_string(out, read_handle(h)?.to_text()))
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfk_complex_generator_count(
    h: *const CfkComplexHandle,
    out: *mut usize,
) -> CfkStatus {
    guard(|| write_out(out, read_handle(h)?.len()))
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfk_tau(h: *const CfkComplexHandle, out: *mut i64) -> CfkStatus {
    guard(|| {
        let t = invariants::tau(read_handle(h)?).map_err(invariant_status)?;
        write_out(out, t)
    })
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfk_epsilon(h: *const CfkComplexHandle, out: *mut i8) -> CfkStatus {
    guard(|| {
        let e = invariants::epsilon(read_handle(h)?).map_err(invariant_status)?;
        write_out(out, e)
    })
}

/// Fails with `CFK_STATUS_EPSILON_NOT_ONE` unless epsilon is 1.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfk_a1(h: *const CfkComplexHandle, out: *mut i64) -> CfkStatus {
    guard(|| {
        let a = invariants::a1(read_handle(h)?).map_err(invariant_status)?;
        write_out(out, a)
    })
}

/// Sets `*defined` to false (and leaves `*out` untouched) when a2 is
/// undefined.
///
/// # Safety
/// `h` must be a live handle; `out` and `defined` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfk_a2(
    h: *const CfkComplexHandle,
    out: *mut i64,
    defined: *mut bool,
) -> CfkStatus {
    guard(|| {
        if out.is_null() {
            return Err((CfkStatus::NullPointer, "null output pointer".into()));
        }
        match invariants::a2(read_handle(h)?).map_err(invariant_status)? {
            Some(a) => {
                write_out(out, a)?;
                write_out(defined, true)
            }
            None => write_out(defined, false),
        }
    })
}

/// Writes -1, 0 or 1 as the first class is smaller, equal or larger.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfk_class_cmp(
    a: *const CfkComplexHandle,
    b: *const CfkComplexHandle,
    out: *mut i8,
) -> CfkStatus {
    guard(|| {
        let ka = ClassRep::from_complex("first", read_handle(a)?).map_err(concordance_status)?;
        let kb = ClassRep::from_complex("second", read_handle(b)?).map_err(concordance_status)?;
        let ord = concordance::class_cmp(&ka, &kb).map_err(invariant_status)?;
        write_out(
            out,
            match ord {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            },
        )
    })
}

fn concordance_status(e: ConcordanceError) -> (CfkStatus, String) {
    match e {
        ConcordanceError::Invariant(e) => invariant_status(e),
        ConcordanceError::Knot(e) => knot_status(e),
        other => (CfkStatus::InvalidInput, other.to_string()),
    }
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfk_tensor(
    a: *const CfkComplexHandle,
    b: *const CfkComplexHandle,
    out: *mut *mut CfkComplexHandle,
) -> CfkStatus {
    guard(|| {
        let t = cfk::tensor(read_handle(a)?, read_handle(b)?);
        write_handle(out, t)
    })
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfk_dual(
    h: *const CfkComplexHandle,
    out: *mut *mut CfkComplexHandle,
) -> CfkStatus {
    guard(|| write_handle(out, cfk::dual(read_handle(h)?)))
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfk_reduce(
    h: *const CfkComplexHandle,
    out: *mut *mut CfkComplexHandle,
) -> CfkStatus {
    guard(|| write_handle(out, cfk::reduce(read_handle(h)?)))
}

/// Alexander polynomial of a knot expression, as text.
///
/// # Safety
/// `expr` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfk_alexander(expr: *const c_char, out: *mut *mut c_char) -> CfkStatus {
    guard(|| {
        let e = knots::parse(read_str(expr)?).map_err(|e| knot_status(e.into()))?;
        let p = knots::alexander(&e).map_err(knot_status)?;
        write_string(out, p.to_string())
    })
}

/// `tau` of the `(p, q)` cable of a knot with the given `tau` and
/// `epsilon`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cfk_cable_tau(
    tau: i64,
    epsilon: i8,
    p: i64,
    q: i64,
    out: *mut i64,
) -> CfkStatus {
    guard(|| {
        let t = concordance::cable_tau(tau, epsilon, p, q)
            .map_err(|e: CableError| (CfkStatus::InvalidInput, e.to_string()))?;
        write_out(out, t)
    })
}

/// Never null; exists so the header documents the status names.
#[no_mangle]
pub extern "C" fn cfk_status_name(status: CfkStatus) -> *const c_char {
    let name: &'static CStr = match status {
        CfkStatus::Ok => c"ok",
        CfkStatus::NullPointer => c"null pointer",
        CfkStatus::InvalidUtf8 => c"invalid UTF-8",
        CfkStatus::ParseError => c"parse error",
        CfkStatus::Unsupported => c"unsupported",
        CfkStatus::RankNotOne => c"rank not one",
        CfkStatus::EpsilonNotOne => c"epsilon not one",
        CfkStatus::InvalidInput => c"invalid input",
        CfkStatus::Internal => c"internal error",
        CfkStatus::Panic => c"panic",
    };
    name.as_ptr()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_names_are_distinct() {
        let all = [
            CfkStatus::Ok,
            CfkStatus::NullPointer,
            CfkStatus::InvalidUtf8,
            CfkStatus::ParseError,
            CfkStatus::Unsupported,
            CfkStatus::RankNotOne,
            CfkStatus::EpsilonNotOne,
            CfkStatus::InvalidInput,
            CfkStatus::Internal,
            CfkStatus::Panic,
        ];
        let names: std::collections::HashSet<_> = all
            .iter()
            .map(|&s| unsafe { CStr::from_ptr(cfk_status_name(s)) }.to_owned())
            .collect();
        assert_eq!(names.len(), all.len());
    }

    #[test]
    fn error_message_is_cleared_on_success() {
        set_error("boom");
        let mut t = 0i64;
        let status = unsafe { cfk_cable_tau(1, 1, 2, 3, &mut t) };
        assert_eq!(status, CfkStatus::Ok);
        let msg = unsafe { CStr::from_ptr(cfk_last_error_message()) };
        assert!(msg.to_bytes().is_empty());
    }
}
