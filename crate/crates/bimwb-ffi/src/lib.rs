//! C ABI over the reduction catalogue: opaque handles for instances and
//! verification reports, integer status codes, and owned C strings.
//!
//! Conventions: every function is null-safe and returns a [`BimwbStatus`];
//! results come back through out-pointers.  Handles are created and released
//! by matching `_new`/`_from_`/`_free` pairs, and every `char*` produced
//! here must be released with [`bimwb_string_free`].  Handles are not
//! thread-safe; share them only with external synchronization.

use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use libc::c_char;

use bimwb::reductions::{self, Instance, ReductionError, VerificationReport};

/// Status code of every catalogue call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BimwbStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The entry identifier names no catalogue entry.
    UnknownEntry = 3,
    /// The instance does not fit the entry's signature.
    SignatureMismatch = 4,
    /// The transform exceeded its probe budget.
    BudgetExceeded = 5,
    /// The JSON text did not parse as an instance.
    InvalidJson = 6,
    /// The index was out of range.
    OutOfRange = 7,
    /// The library caught an internal panic.
    Internal = 8,
}

/// An opaque reduction instance.
pub struct BimwbInstance(Instance);

/// An opaque verification report.
pub struct BimwbReport(VerificationReport);

fn status_of(err: &ReductionError) -> BimwbStatus {
    match err {
        ReductionError::UnknownEntry(_) => BimwbStatus::UnknownEntry,
        ReductionError::SignatureMismatch { .. } => BimwbStatus::SignatureMismatch,
        ReductionError::BudgetExceeded { .. } => BimwbStatus::BudgetExceeded,
    }
}

/// # Safety
/// `ptr` must be null or a pointer to a NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, BimwbStatus> {
    if ptr.is_null() {
        return Err(BimwbStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| BimwbStatus::InvalidUtf8)
}

fn give_string(text: String, out: *mut *mut c_char) -> BimwbStatus {
    let c = match CString::new(text) {
        Ok(c) => c,
        Err(_) => return BimwbStatus::Internal,
    };
    unsafe { *out = c.into_raw() };
    BimwbStatus::Ok
}

fn guarded(body: impl FnOnce() -> BimwbStatus) -> BimwbStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(BimwbStatus::Internal)
}

/// Number of entries in the reduction catalogue.
#[no_mangle]
pub extern "C" fn bimwb_registry_len() -> usize {
    reductions::registry().len()
}

/// Identifier of the catalogue entry at `index`; the string must be
/// released with `bimwb_string_free`.
///
/// # Safety
/// `out` must be a valid pointer to a `char*`.
#[no_mangle]
pub unsafe extern "C" fn bimwb_registry_id(index: usize, out: *mut *mut c_char) -> BimwbStatus {
    if out.is_null() {
        return BimwbStatus::NullArgument;
    }
    match reductions::registry().get(index) {
        Some(entry) => give_string(entry.id.to_string(), out),
        None => BimwbStatus::OutOfRange,
    }
}

/// Parses a JSON instance into a fresh handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bimwb_instance_from_json(
    json: *const c_char,
    out: *mut *mut BimwbInstance,
) -> BimwbStatus {
    if out.is_null() {
        return BimwbStatus::NullArgument;
    }
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match serde_json::from_str::<Instance>(text) {
        Ok(inst) => {
            *out = Box::into_raw(Box::new(BimwbInstance(inst)));
            BimwbStatus::Ok
        }
        Err(_) => BimwbStatus::InvalidJson,
    }
}

/// Deterministically generates the `index`-th instance of an entry.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bimwb_instance_generate(
    id: *const c_char,
    seed: u64,
    index: usize,
    out: *mut *mut BimwbInstance,
) -> BimwbStatus {
    if out.is_null() {
        return BimwbStatus::NullArgument;
    }
    let id = match read_str(id) {
        Ok(t) => t,
        Err(s) => return s,
    };
    guarded(|| match reductions::generate_instances(id, index + 1, seed) {
        Ok(mut all) if all.len() > index => {
            *out = Box::into_raw(Box::new(BimwbInstance(all.swap_remove(index))));
            BimwbStatus::Ok
        }
        Ok(_) => BimwbStatus::OutOfRange,
        Err(e) => status_of(&e),
    })
}

/// The instance's canonical hex digest.
///
/// # Safety
/// `inst` must be a live instance handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bimwb_instance_digest(
    inst: *const BimwbInstance,
    out: *mut *mut c_char,
) -> BimwbStatus {
    if inst.is_null() || out.is_null() {
        return BimwbStatus::NullArgument;
    }
    give_string((*inst).0.digest(), out)
}

/// The instance's canonical JSON form.
///
/// # Safety
/// `inst` must be a live instance handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bimwb_instance_to_json(
    inst: *const BimwbInstance,
    out: *mut *mut c_char,
) -> BimwbStatus {
    if inst.is_null() || out.is_null() {
        return BimwbStatus::NullArgument;
    }
    match serde_json::to_string(&(*inst).0) {
        Ok(json) => give_string(json, out),
        Err(_) => BimwbStatus::Internal,
    }
}

/// Releases an instance handle; null is ignored.
///
/// # Safety
/// `inst` must be null or a handle produced by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bimwb_instance_free(inst: *mut BimwbInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Applies a catalogue transform and returns the output's fingerprint
/// (its first sixteen probed values in stable textual form).
///
/// # Safety
/// `id` must be a NUL-terminated string, `inst` a live instance handle,
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bimwb_apply(
    id: *const c_char,
    inst: *const BimwbInstance,
    budget: u64,
    out: *mut *mut c_char,
) -> BimwbStatus {
    if inst.is_null() || out.is_null() {
        return BimwbStatus::NullArgument;
    }
    let id = match read_str(id) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let inst = &(*inst).0;
    guarded(|| match reductions::apply(id, inst, budget) {
        Ok(output) => give_string(output.fingerprint(16), out),
        Err(e) => status_of(&e),
    })
}

/// Verifies one entry's contract on an instance and returns a report
/// handle.
///
/// # Safety
/// `id` must be a NUL-terminated string, `inst` a live instance handle,
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bimwb_verify(
    id: *const c_char,
    inst: *const BimwbInstance,
    depth: usize,
    seed: u64,
    out: *mut *mut BimwbReport,
) -> BimwbStatus {
    if inst.is_null() || out.is_null() {
        return BimwbStatus::NullArgument;
    }
    let id = match read_str(id) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let inst = &(*inst).0;
    guarded(|| match reductions::verify(id, inst, depth, seed) {
        Ok(report) => {
            *out = Box::into_raw(Box::new(BimwbReport(report)));
            BimwbStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Whether the report found no counterexample.
///
/// # Safety
/// `report` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn bimwb_report_passed(report: *const BimwbReport) -> bool {
    !report.is_null() && (*report).0.counterexample.is_none()
}

/// The report as a one-line structured text record.
///
/// # Safety
/// `report` must be a live report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bimwb_report_line(
    report: *const BimwbReport,
    out: *mut *mut c_char,
) -> BimwbStatus {
    if report.is_null() || out.is_null() {
        return BimwbStatus::NullArgument;
    }
    give_string((*report).0.line(), out)
}

/// Releases a report handle; null is ignored.
///
/// # Safety
/// `report` must be null or a handle produced by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bimwb_report_free(report: *mut BimwbReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Releases a string produced by this library; null is ignored.
///
/// # Safety
/// `text` must be null or a string produced by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bimwb_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
