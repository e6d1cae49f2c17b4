//! C interface to the solweights library.
//!
//! Groups are opaque handles freed with `sw_group_free`. Every function
//! returns an `SwStatus`; on failure the message is available from
//! `sw_last_error_message` until the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use solweights::fusion_data::{weight_count, System};
use solweights::group::FiniteGroup;
use solweights::robinson::defect_zero_block_count;
use solweights::zoo::named_group_str;
use solweights::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownSpec = 3,
    CapExceeded = 4,
    InvalidArgument = 5,
    Failed = 6,
    Panic = 7,
}

/// Opaque group handle.
pub struct SwGroup {
    group: FiniteGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> SwStatus {
    match e {
        Error::UnknownSpec(_) => SwStatus::UnknownSpec,
        Error::CapExceeded { .. } => SwStatus::CapExceeded,
        Error::Precondition(_) => SwStatus::InvalidArgument,
        _ => SwStatus::Failed,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (SwStatus, String)>) -> SwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SwStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside solweights".into());
            SwStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (SwStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (SwStatus, String)> {
    if p.is_null() {
        return Err((SwStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (SwStatus::InvalidUtf8, "string is not UTF-8".into()))
}

fn null_err() -> (SwStatus, String) {
    (SwStatus::NullPointer, "null pointer argument".into())
}

/// Builds a group from a spec such as `"A7"` or `"wr(S3,S3)"` and stores a new handle in `out`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_group_from_spec(spec: *const c_char, out: *mut *mut SwGroup) -> SwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err());
        }
        let s = read_str(spec)?;
        let group = named_group_str(s).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(SwGroup { group }));
        Ok(())
    })
}

/// # Safety
/// `g` must come from `sw_group_from_spec` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sw_group_order(g: *const SwGroup, out: *mut u64) -> SwStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else { return Err(null_err()) };
        *out = g.group.order() as u64;
        Ok(())
    })
}

/// Number of 2-blocks of defect zero.
///
/// # Safety
/// `g` must come from `sw_group_from_spec` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sw_defect_zero_count(g: *const SwGroup, out: *mut u64) -> SwStatus {
    guard(|| {
        let (Some(g), false) = (g.as_ref(), out.is_null()) else { return Err(null_err()) };
        *out = defect_zero_block_count(&g.group).map_err(lib_err)? as u64;
        Ok(())
    })
}

/// Weight count of the system `"H"` or `"F"` at level `l`.
///
/// # Safety
/// `system` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_weight_count(system: *const c_char, l: u32, out: *mut u64) -> SwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err());
        }
        let sys: System = read_str(system)?.parse().map_err(lib_err)?;
        if sys == System::K {
            return Err((SwStatus::InvalidArgument, "weights are counted for H or F".into()));
        }
        *out = weight_count(sys, l).map_err(lib_err)?.total as u64;
        Ok(())
    })
}

/// # Safety
/// `g` must come from `sw_group_from_spec` and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sw_group_free(g: *mut SwGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Message of the last failure on this thread, or null. Free it with `sw_string_free`.
#[no_mangle]
pub extern "C" fn sw_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(m) => CString::new(m.replace('\0', " ")).map_or(std::ptr::null_mut(), CString::into_raw),
        None => std::ptr::null_mut(),
    })
}

/// # Safety
/// `s` must come from this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
