//! End-to-end exercise of the C ABI from the Rust side.

use std::ffi::{CStr, CString};
use std::ptr;

use libc::c_char;

use bimwb_ffi::*;

/// Takes ownership of a string produced by the library.
unsafe fn claim(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let text = CStr::from_ptr(ptr).to_str().expect("utf-8").to_string();
    bimwb_string_free(ptr);
    text
}

#[test]
fn registry_enumerates_every_entry() {
    let len = bimwb_registry_len();
    assert_eq!(len, 31);
    let mut ids = Vec::new();
    for i in 0..len {
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { bimwb_registry_id(i, &mut out) }, BimwbStatus::Ok);
        ids.push(unsafe { claim(out) });
    }
    assert!(ids.contains(&"wkl_to_ft".to_string()));
    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { bimwb_registry_id(len, &mut out) }, BimwbStatus::OutOfRange);
}

#[test]
fn generate_digest_and_json_round_trip() {
    let id = CString::new("lpo_to_llpo").expect("no interior nul");
    let mut inst: *mut BimwbInstance = ptr::null_mut();
    assert_eq!(
        unsafe { bimwb_instance_generate(id.as_ptr(), 7, 0, &mut inst) },
        BimwbStatus::Ok
    );

    let mut digest: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { bimwb_instance_digest(inst, &mut digest) }, BimwbStatus::Ok);
    let digest = unsafe { claim(digest) };
    assert_eq!(digest.len(), 64);

    let mut json: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { bimwb_instance_to_json(inst, &mut json) }, BimwbStatus::Ok);
    let json = unsafe { claim(json) };

    let round = CString::new(json).expect("no interior nul");
    let mut copy: *mut BimwbInstance = ptr::null_mut();
    assert_eq!(
        unsafe { bimwb_instance_from_json(round.as_ptr(), &mut copy) },
        BimwbStatus::Ok
    );
    let mut digest2: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { bimwb_instance_digest(copy, &mut digest2) }, BimwbStatus::Ok);
    assert_eq!(unsafe { claim(digest2) }, digest);

    unsafe {
        bimwb_instance_free(inst);
        bimwb_instance_free(copy);
    }
}

#[test]
fn apply_and_verify_through_the_abi() {
    let id = CString::new("wkl_to_ft").expect("no interior nul");
    let mut inst: *mut BimwbInstance = ptr::null_mut();
    assert_eq!(
        unsafe { bimwb_instance_generate(id.as_ptr(), 0, 0, &mut inst) },
        BimwbStatus::Ok
    );

    let mut fp: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { bimwb_apply(id.as_ptr(), inst, 256, &mut fp) }, BimwbStatus::Ok);
    assert!(!unsafe { claim(fp) }.is_empty());

    let mut report: *mut BimwbReport = ptr::null_mut();
    assert_eq!(
        unsafe { bimwb_verify(id.as_ptr(), inst, 6, 0, &mut report) },
        BimwbStatus::Ok
    );
    assert!(unsafe { bimwb_report_passed(report) });
    let mut line: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { bimwb_report_line(report, &mut line) }, BimwbStatus::Ok);
    let line = unsafe { claim(line) };
    assert!(line.starts_with("id=wkl_to_ft"));
    assert!(line.contains("counterexample=-"));

    unsafe {
        bimwb_report_free(report);
        bimwb_instance_free(inst);
    }
}

#[test]
fn error_paths_return_stable_codes() {
    let mut inst: *mut BimwbInstance = ptr::null_mut();
    let bad = CString::new("no_such_entry").expect("no interior nul");
    assert_eq!(
        unsafe { bimwb_instance_generate(bad.as_ptr(), 0, 0, &mut inst) },
        BimwbStatus::UnknownEntry
    );

    let junk = CString::new("{not json").expect("no interior nul");
    assert_eq!(
        unsafe { bimwb_instance_from_json(junk.as_ptr(), &mut inst) },
        BimwbStatus::InvalidJson
    );

    assert_eq!(
        unsafe { bimwb_instance_from_json(ptr::null(), &mut inst) },
        BimwbStatus::NullArgument
    );

    // An empty instance does not fit a stream-shaped signature.
    let empty = CString::new("{}").expect("no interior nul");
    assert_eq!(
        unsafe { bimwb_instance_from_json(empty.as_ptr(), &mut inst) },
        BimwbStatus::Ok
    );
    let id = CString::new("lpo_to_llpo").expect("no interior nul");
    let mut fp: *mut c_char = ptr::null_mut();
    assert_eq!(
        unsafe { bimwb_apply(id.as_ptr(), inst, 256, &mut fp) },
        BimwbStatus::SignatureMismatch
    );
    unsafe { bimwb_instance_free(inst) };

    assert!(!unsafe { bimwb_report_passed(ptr::null()) });
    unsafe {
        bimwb_string_free(ptr::null_mut());
        bimwb_instance_free(ptr::null_mut());
        bimwb_report_free(ptr::null_mut());
    }
}
